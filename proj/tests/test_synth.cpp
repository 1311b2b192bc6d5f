#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "paltile/errors.hpp"
#include "paltile/matrix.hpp"
#include "paltile/synth.hpp"

using namespace paltile;

namespace {

GenSpec base_spec() {
    GenSpec s;
    s.n = 50;
    s.m = 60;
    s.r_star = 5;
    s.q = 0.3;
    s.p_plus = 0.0;
    s.p_minus = 0.0;
    s.seed = 7;
    return s;
}

}  // namespace

TEST_CASE("identical seeds reproduce the instance exactly") {
    GenSpec s = base_spec();
    s.p_plus = 0.2;
    s.p_minus = 0.1;
    const PlantedInstance a = generate_data(s);
    const PlantedInstance b = generate_data(s);
    CHECK(a.d == b.d);
    CHECK(a.x_star == b.x_star);
    CHECK(a.y_star == b.y_star);
    CHECK(a.noise == b.noise);

    s.seed = 8;
    const PlantedInstance c = generate_data(s);
    CHECK_FALSE(a.d == c.d);
}

TEST_CASE("noiseless data is exactly the planted Boolean product") {
    const PlantedInstance inst = generate_data(base_spec());
    CHECK(inst.d == bool_product(inst.y_star, inst.x_star));
    CHECK(entrywise_l1(inst.noise) == 0);
}

TEST_CASE("factors carry the identity-block prefix") {
    GenSpec s = base_spec();
    s.n = 250;  // k = 3
    s.m = 120;  // l = 2
    s.r_star = 4;
    const PlantedInstance inst = generate_data(s);
    const std::size_t k = 3, l = 2;
    for (std::size_t t = 0; t < s.r_star; ++t) {
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t v = 0; v < s.r_star; ++v)
                CHECK(inst.x_star(t * k + u, v) == (t == v ? 1 : 0));
        for (std::size_t u = 0; u < l; ++u)
            for (std::size_t v = 0; v < s.r_star; ++v)
                CHECK(inst.y_star(t * l + u, v) == (t == v ? 1 : 0));
    }
}

TEST_CASE("free-part weights stay inside the documented law") {
    GenSpec s = base_spec();
    s.seed = 11;
    const PlantedInstance inst = generate_data(s);
    const std::size_t k = 1, free_rows = s.n - k * s.r_star;
    const std::size_t cap = static_cast<std::size_t>(s.q * static_cast<double>(free_rows));
    const std::size_t lo = (cap + 9) / 10;
    for (std::size_t t = 0; t < s.r_star; ++t) {
        const std::uint64_t w = inst.x_star.col_sums()[t] - k;
        CHECK(w >= lo);
        CHECK(w <= cap);
    }
    const std::size_t free_m = s.m - s.r_star;
    const std::size_t cap_m = static_cast<std::size_t>(s.q * static_cast<double>(free_m));
    for (std::size_t t = 0; t < s.r_star; ++t) {
        const std::uint64_t w = inst.y_star.col_sums()[t] - 1;
        CHECK(w >= (cap_m + 9) / 10);
        CHECK(w <= cap_m);
    }
}

TEST_CASE("noise respects the cover and reconstructs D") {
    GenSpec s = base_spec();
    s.p_plus = 0.3;
    s.p_minus = 0.25;
    const PlantedInstance inst = generate_data(s);
    const BinaryMatrix cover = bool_product(inst.y_star, inst.x_star);
    bool saw_plus = false, saw_minus = false;
    for (std::size_t j = 0; j < s.m; ++j)
        for (std::size_t i = 0; i < s.n; ++i) {
            const int nv = inst.noise(j, i);
            const int cv = cover(j, i);
            if (nv == 1) {
                CHECK(cv == 0);
                saw_plus = true;
            }
            if (nv == -1) {
                CHECK(cv == 1);
                saw_minus = true;
            }
            CHECK(static_cast<int>(inst.d(j, i)) == cv + nv);
        }
    CHECK(saw_plus);
    CHECK(saw_minus);
}

TEST_CASE("flip rates converge to the noise probabilities") {
    GenSpec s;
    s.n = 300;
    s.m = 300;
    s.r_star = 3;
    s.q = 0.2;
    s.p_plus = 0.3;
    s.p_minus = 0.2;
    s.seed = 99;
    const PlantedInstance inst = generate_data(s);
    const BinaryMatrix cover = bool_product(inst.y_star, inst.x_star);
    const double covered = static_cast<double>(cover.ones());
    const double uncovered = static_cast<double>(s.n * s.m) - covered;
    const auto [pos, neg] = noise_split(inst.noise);
    const double plus_rate = static_cast<double>(pos.ones()) / uncovered;
    const double minus_rate = static_cast<double>(neg.ones()) / covered;
    const double se_plus = std::sqrt(s.p_plus * (1 - s.p_plus) / uncovered);
    const double se_minus = std::sqrt(s.p_minus * (1 - s.p_minus) / covered);
    CHECK(std::abs(plus_rate - s.p_plus) <= 3.0 * se_plus);
    CHECK(std::abs(minus_rate - s.p_minus) <= 3.0 * se_minus);
}

TEST_CASE("generator rejects invalid specs") {
    GenSpec s = base_spec();
    s.r_star = 51;  // k = 1, identity blocks need 51 > 50 rows
    CHECK_THROWS_AS(generate_data(s), DataError);

    s = base_spec();
    s.n = 250;  // k = 3, 3 * 90 = 270 > 250
    s.r_star = 90;
    CHECK_THROWS_AS(generate_data(s), DataError);

    s = base_spec();
    s.q = 0.0;
    CHECK_THROWS_AS(generate_data(s), DataError);
    s.q = 1.0;
    CHECK_THROWS_AS(generate_data(s), DataError);

    s = base_spec();
    s.p_plus = 1.5;
    CHECK_THROWS_AS(generate_data(s), DataError);

    s = base_spec();
    s.n = 0;
    CHECK_THROWS_AS(generate_data(s), DataError);

    s = base_spec();
    s.r_star = 0;
    CHECK_THROWS_AS(generate_data(s), DataError);
}

TEST_CASE("planted density measures the covered fraction") {
    const PlantedInstance inst = generate_data(base_spec());
    const BinaryMatrix cover = bool_product(inst.y_star, inst.x_star);
    const double expect =
        static_cast<double>(cover.ones()) / static_cast<double>(50 * 60) * 100.0;
    CHECK(planted_density(inst) == doctest::Approx(expect));
}

TEST_CASE("overlap is zero for disjoint tiles and full for duplicates") {
    PlantedInstance disjoint;
    disjoint.x_star = BinaryMatrix::from_rows({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    disjoint.y_star = BinaryMatrix::from_rows({{1, 0}, {1, 0}, {0, 1}});
    disjoint.d = bool_product(disjoint.y_star, disjoint.x_star);
    disjoint.noise = SignedMatrix(3, 4);
    CHECK(planted_overlap(disjoint) == doctest::Approx(0.0));

    PlantedInstance dup;
    dup.x_star = BinaryMatrix::from_rows({{1, 1}, {1, 1}, {0, 0}, {0, 0}});
    dup.y_star = BinaryMatrix::from_rows({{1, 1}, {1, 1}, {0, 0}});
    dup.d = bool_product(dup.y_star, dup.x_star);
    dup.noise = SignedMatrix(3, 4);
    // Two identical 2x2 tiles: 8 tile cells over a 4-cell union.
    CHECK(planted_overlap(dup) == doctest::Approx(100.0));
}
