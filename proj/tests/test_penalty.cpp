#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "paltile/penalty.hpp"
#include "paltile/rng.hpp"

using namespace paltile;

namespace {

double tent_objective(double z, double x, double alpha) {
    return 0.5 * (x - z) * (x - z) + alpha * lambda_penalty(z);
}

// Grid-search argmin of the prox objective over [0,1], the independent
// reference the closed form is checked against.
double grid_prox(double x, double alpha, double step) {
    double best_z = 0.0;
    double best_v = tent_objective(0.0, x, alpha);
    const long steps = std::lround(1.0 / step);
    for (long k = 1; k <= steps; ++k) {
        const double z = static_cast<double>(k) * step;
        const double v = tent_objective(z, x, alpha);
        if (v < best_v) {
            best_v = v;
            best_z = z;
        }
    }
    return best_z;
}

}  // namespace

TEST_CASE("tent penalty values") {
    CHECK(lambda_penalty(0.0) == 0.0);
    CHECK(lambda_penalty(1.0) == 0.0);
    CHECK(lambda_penalty(0.5) == 1.0);
    CHECK(lambda_penalty(0.25) == doctest::Approx(0.5));
    CHECK(lambda_penalty(0.75) == doctest::Approx(0.5));
    CHECK(lambda_penalty(-0.1) == std::numeric_limits<double>::infinity());
    CHECK(lambda_penalty(1.1) == std::numeric_limits<double>::infinity());
}

TEST_CASE("prox moves entries away from one half and clamps") {
    CHECK(prox_lambda(0.3, 0.1) == doctest::Approx(0.1));
    CHECK(prox_lambda(0.7, 0.1) == doctest::Approx(0.9));
    CHECK(prox_lambda(0.5, 0.3) == 0.0);
    CHECK(prox_lambda(0.05, 0.1) == 0.0);
    CHECK(prox_lambda(0.95, 0.1) == 1.0);
    // alpha = 0 is projection onto [0,1].
    CHECK(prox_lambda(-0.4, 0.0) == 0.0);
    CHECK(prox_lambda(1.4, 0.0) == 1.0);
    CHECK(prox_lambda(0.3, 0.0) == doctest::Approx(0.3));
}

TEST_CASE("prox matches grid search on random pairs") {
    Rng rng(301);
    for (int t = 0; t < 300; ++t) {
        const double x = rng.uniform01() * 3.0 - 1.0;
        const double alpha = rng.uniform01() * 0.5;
        const double closed = prox_lambda(x, alpha);
        const double grid = grid_prox(x, alpha, 1e-4);
        CHECK(std::abs(closed - grid) <= 2e-4);
    }
}

TEST_CASE("prox output is feasible and never beats the grid optimum") {
    Rng rng(302);
    for (int t = 0; t < 200; ++t) {
        const double x = rng.uniform01() * 4.0 - 1.5;
        const double alpha = rng.uniform01();
        const double z = prox_lambda(x, alpha);
        CHECK(z >= 0.0);
        CHECK(z <= 1.0);
        const double grid = grid_prox(x, alpha, 1e-4);
        CHECK(tent_objective(z, x, alpha) <= tent_objective(grid, x, alpha) + 1e-12);
    }
}

TEST_CASE("phi sums the tent penalty entrywise") {
    RealMatrix m(2, 2);
    m.set(0, 0, 0.0);
    m.set(0, 1, 0.5);
    m.set(1, 0, 0.25);
    m.set(1, 1, 1.0);
    CHECK(phi(m) == doctest::Approx(1.5));
}

TEST_CASE("prox_phi_inplace applies the scalar prox to every entry") {
    Rng rng(303);
    RealMatrix m = paltile::testing::random_real(rng, 5, 4);
    const RealMatrix before = m;
    const double alpha = 0.07;
    prox_phi_inplace(m, alpha);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            CHECK(m(i, j) == prox_lambda(before(i, j), alpha));
}
