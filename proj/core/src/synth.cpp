#include "paltile/synth.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "paltile/errors.hpp"
#include "paltile/rng.hpp"

namespace paltile {

namespace {

// Block-identity prefix plus a bounded-weight free part for one factor.
void fill_factor(BinaryMatrix& f, std::size_t block, std::size_t r_star, double q,
                 Rng& rng) {
    const std::size_t rows = f.rows();
    const std::size_t free_rows = rows - block * r_star;
    const std::size_t base = block * r_star;
    const auto cap = static_cast<std::size_t>(std::floor(q * static_cast<double>(free_rows)));
    const std::size_t lo = (cap + 9) / 10;

    std::vector<std::size_t> idx(free_rows);
    for (std::size_t s = 0; s < r_star; ++s) {
        for (std::size_t b = 0; b < block; ++b) f.set(s * block + b, s, 1);
        const auto w = static_cast<std::size_t>(rng.between(lo, cap));
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t t = 0; t < w; ++t) {
            const std::size_t j = t + static_cast<std::size_t>(rng.below(free_rows - t));
            std::swap(idx[t], idx[j]);
            f.set(base + idx[t], s, 1);
        }
    }
}

}  // namespace

PlantedInstance generate_data(const GenSpec& spec) {
    if (spec.n == 0 || spec.m == 0)
        throw DataError("generate_data: dimensions must be positive");
    if (spec.r_star == 0)
        throw DataError("generate_data: planted rank must be positive");
    if (!(spec.q > 0.0 && spec.q < 1.0))
        throw DataError("generate_data: q must lie in (0,1)");
    if (!(spec.p_plus >= 0.0 && spec.p_plus <= 1.0) ||
        !(spec.p_minus >= 0.0 && spec.p_minus <= 1.0))
        throw DataError("generate_data: noise probabilities must lie in [0,1]");
    const std::size_t k = (spec.n + 99) / 100;
    const std::size_t l = (spec.m + 99) / 100;
    if (k * spec.r_star > spec.n)
        throw DataError("generate_data: identity blocks do not fit the items");
    if (l * spec.r_star > spec.m)
        throw DataError("generate_data: identity blocks do not fit the transactions");

    PlantedInstance inst;
    inst.x_star = BinaryMatrix(spec.n, spec.r_star);
    inst.y_star = BinaryMatrix(spec.m, spec.r_star);
    Rng rng(spec.seed);
    fill_factor(inst.x_star, k, spec.r_star, spec.q, rng);
    fill_factor(inst.y_star, l, spec.r_star, spec.q, rng);

    const BinaryMatrix cover = bool_product(inst.y_star, inst.x_star);
    inst.d = BinaryMatrix(spec.m, spec.n);
    inst.noise = SignedMatrix(spec.m, spec.n);
    for (std::size_t j = 0; j < spec.m; ++j)
        for (std::size_t i = 0; i < spec.n; ++i) {
            const double u = rng.uniform01();
            if (cover(j, i)) {
                if (u < spec.p_minus)
                    inst.noise.set(j, i, -1);
                else
                    inst.d.set(j, i, 1);
            } else if (u < spec.p_plus) {
                inst.noise.set(j, i, 1);
                inst.d.set(j, i, 1);
            }
        }
    return inst;
}

double planted_density(const PlantedInstance& inst) {
    const BinaryMatrix cover = bool_product(inst.y_star, inst.x_star);
    const double cells = static_cast<double>(inst.d.rows()) * static_cast<double>(inst.d.cols());
    return static_cast<double>(cover.ones()) / cells * 100.0;
}

double planted_overlap(const PlantedInstance& inst) {
    const BinaryMatrix cover = bool_product(inst.y_star, inst.x_star);
    const std::uint64_t covered = cover.ones();
    if (covered == 0) return 0.0;
    const auto& xcs = inst.x_star.col_sums();
    const auto& ycs = inst.y_star.col_sums();
    std::uint64_t tile_sum = 0;
    for (std::size_t s = 0; s < inst.x_star.cols(); ++s) tile_sum += xcs[s] * ycs[s];
    return static_cast<double>(tile_sum - covered) / static_cast<double>(covered) * 100.0;
}

}  // namespace paltile
