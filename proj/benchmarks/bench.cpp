#include <benchmark/benchmark.h>

#include "paltile/matrix.hpp"
#include "paltile/objectives.hpp"
#include "paltile/paltiling.hpp"
#include "paltile/rng.hpp"
#include "paltile/synth.hpp"

using namespace paltile;

namespace {

BinaryMatrix planted(std::size_t n, std::size_t m, std::size_t r) {
    GenSpec s;
    s.n = n;
    s.m = m;
    s.r_star = r;
    s.q = 0.1;
    s.p_plus = 0.05;
    s.p_minus = 0.05;
    s.seed = 7;
    return generate_data(s).d;
}

RealMatrix random_real(Rng& rng, std::size_t rows, std::size_t cols) {
    RealMatrix m(rows, cols);
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < cols; ++i) m.set(j, i, rng.uniform01());
    return m;
}

BinaryMatrix random_binary(Rng& rng, std::size_t rows, std::size_t cols, double density) {
    BinaryMatrix m(rows, cols);
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < cols; ++i)
            if (rng.uniform01() < density) m.set(j, i, 1);
    return m;
}

void BM_BoolProduct(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const BinaryMatrix x = random_binary(rng, 800, r, 0.1);
    const BinaryMatrix y = random_binary(rng, 1000, r, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(bool_product(y, x));
}
BENCHMARK(BM_BoolProduct)->Arg(8)->Arg(32)->Arg(128);

void BM_PalmIterations(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    const BinaryMatrix d = planted(400, 500, 10);
    const CostModel model = CostModel::primp(d);
    Rng rng(2);
    const RealMatrix x0 = random_real(rng, d.cols(), r);
    const RealMatrix y0 = random_real(rng, d.rows(), r);
    for (auto _ : state)
        benchmark::DoNotOptimize(palm_inner(d, x0, y0, model, 10, 1.00001, 1e-12, 10));
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_PalmIterations)->Arg(8)->Arg(32);

void BM_ThresholdSearch(benchmark::State& state) {
    const BinaryMatrix d = planted(400, 500, 10);
    const CostModel model = CostModel::primp(d);
    Rng rng(3);
    const RealMatrix xk = random_real(rng, d.cols(), 12);
    const RealMatrix yk = random_real(rng, d.rows(), 12);
    const std::vector<double> grid = default_thresholds();
    for (auto _ : state) benchmark::DoNotOptimize(threshold_search(xk, yk, d, model, grid));
}
BENCHMARK(BM_ThresholdSearch);

void BM_CtCost(benchmark::State& state) {
    const BinaryMatrix d = planted(800, 1000, 25);
    Rng rng(4);
    const BinaryMatrix x = random_binary(rng, d.cols(), 25, 0.1);
    const BinaryMatrix y = random_binary(rng, d.rows(), 25, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(f_ct(x, y, d));
}
BENCHMARK(BM_CtCost);

}  // namespace

BENCHMARK_MAIN();
