#include <cstdint>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "paltile/errors.hpp"
#include "paltile/matrix.hpp"
#include "paltile/rng.hpp"

using namespace paltile;
using testing::random_binary;
using testing::random_real;

namespace {

BinaryMatrix naive_bool_product(const BinaryMatrix& y, const BinaryMatrix& x) {
    BinaryMatrix out(y.rows(), x.rows());
    for (std::size_t j = 0; j < y.rows(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) {
            int acc = 0;
            for (std::size_t s = 0; s < y.cols(); ++s) acc += y(j, s) * x(i, s);
            out.set(j, i, acc > 0);
        }
    return out;
}

}  // namespace

TEST_CASE("from_rows builds the expected layout") {
    const BinaryMatrix m = BinaryMatrix::from_rows({{1, 0, 1}, {0, 1, 0}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(0, 0) == 1);
    CHECK(m(0, 1) == 0);
    CHECK(m(1, 1) == 1);
    CHECK(m.ones() == 3);
}

TEST_CASE("col_sums stay correct after mutation through mutable_data") {
    BinaryMatrix m = BinaryMatrix::from_rows({{1, 0}, {1, 1}});
    CHECK(m.col_sums() == std::vector<std::uint64_t>{2, 1});
    m.mutable_data()[0] = 0;
    CHECK(m.col_sums() == std::vector<std::uint64_t>{1, 1});
    m.set(0, 1, true);
    CHECK(m.col_sums() == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("real col_sums and sum track mutation") {
    RealMatrix m(2, 2);
    m.set(0, 0, 0.25);
    m.set(1, 0, 0.5);
    m.set(1, 1, 2.0);
    CHECK(m.col_sums() == std::vector<double>{0.75, 2.0});
    CHECK(m.sum() == doctest::Approx(2.75));
    m.mutable_data()[3] = 0.0;
    CHECK(m.col_sums() == std::vector<double>{0.75, 0.0});
}

TEST_CASE("threshold marks entries at or above t") {
    RealMatrix m(1, 4);
    m.set(0, 0, 0.2);
    m.set(0, 1, 0.5);
    m.set(0, 2, 0.5000001);
    m.set(0, 3, 0.9);
    const BinaryMatrix b = threshold(m, 0.5);
    CHECK(b(0, 0) == 0);
    CHECK(b(0, 1) == 1);
    CHECK(b(0, 2) == 1);
    CHECK(b(0, 3) == 1);

    const BinaryMatrix ones = BinaryMatrix::from_rows({{1, 0}});
    CHECK(threshold(ones, 1.0)(0, 0) == 1);
    CHECK(threshold(ones, 1.0)(0, 1) == 0);
    CHECK(threshold(ones, 0.0).ones() == 2);
}

TEST_CASE("bool_product matches the figure-style example") {
    const BinaryMatrix y = BinaryMatrix::from_rows({{1, 1}, {1, 0}, {0, 1}, {1, 0}});
    const BinaryMatrix x =
        BinaryMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}, {0, 1}, {1, 1}});
    const BinaryMatrix d = bool_product(y, x);
    const BinaryMatrix expected = BinaryMatrix::from_rows({{1, 1, 1, 1, 1},
                                                           {1, 0, 1, 0, 1},
                                                           {0, 1, 1, 1, 1},
                                                           {1, 0, 1, 0, 1}});
    CHECK(d == expected);
}

TEST_CASE("bool_product agrees with a naive scan on random inputs") {
    Rng rng(101);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = 1 + rng.below(12), n = 1 + rng.below(12), r = rng.below(5);
        const BinaryMatrix y = random_binary(rng, m, r, 0.4);
        const BinaryMatrix x = random_binary(rng, n, r, 0.4);
        CHECK(bool_product(y, x) == naive_bool_product(y, x));
    }
}

TEST_CASE("bool_product rejects rank mismatch") {
    CHECK_THROWS_AS(bool_product(BinaryMatrix(2, 2), BinaryMatrix(2, 3)), DataError);
}

TEST_CASE("elementary_product is the real matrix product") {
    Rng rng(102);
    for (int t = 0; t < 10; ++t) {
        const std::size_t m = 1 + rng.below(8), n = 1 + rng.below(8), r = rng.below(4);
        const RealMatrix y = random_real(rng, m, r);
        const RealMatrix x = random_real(rng, n, r);
        const RealMatrix prod = elementary_product(y, x);
        REQUIRE(prod.rows() == m);
        REQUIRE(prod.cols() == n);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t s = 0; s < r; ++s) acc += y(j, s) * x(i, s);
                CHECK(prod(j, i) == doctest::Approx(acc).epsilon(1e-12));
            }
    }
}

TEST_CASE("elementary_product doubles up on tile overlap") {
    const BinaryMatrix y = BinaryMatrix::from_rows({{1, 1}, {1, 0}, {0, 1}, {1, 0}});
    const BinaryMatrix x =
        BinaryMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}, {0, 1}, {1, 1}});
    const RealMatrix prod = elementary_product(to_real(y), to_real(x));
    CHECK(prod(0, 2) == 2.0);
    CHECK(prod(0, 4) == 2.0);
    CHECK(prod(1, 0) == 1.0);
    CHECK(prod(1, 1) == 0.0);
}

TEST_CASE("transpose swaps indices") {
    Rng rng(103);
    const BinaryMatrix m = random_binary(rng, 7, 4);
    const BinaryMatrix t = transpose(m);
    REQUIRE(t.rows() == 4);
    REQUIRE(t.cols() == 7);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) CHECK(m(i, j) == t(j, i));
    CHECK(transpose(t) == m);
}

TEST_CASE("entrywise_l1 and frobenius_sq count ones on binary input") {
    Rng rng(104);
    const BinaryMatrix m = random_binary(rng, 9, 5);
    CHECK(entrywise_l1(m) == m.ones());
    CHECK(frobenius_sq(m) == m.ones());

    RealMatrix r(1, 3);
    r.set(0, 0, -2.0);
    r.set(0, 1, 0.5);
    CHECK(entrywise_l1(r) == doctest::Approx(2.5));
    CHECK(frobenius_sq(r) == doctest::Approx(4.25));
}

TEST_CASE("subtract and noise_split recover signs") {
    const BinaryMatrix d = BinaryMatrix::from_rows({{1, 0}, {0, 1}});
    const BinaryMatrix b = BinaryMatrix::from_rows({{0, 0}, {1, 1}});
    const SignedMatrix n = subtract(d, b);
    CHECK(n(0, 0) == 1);
    CHECK(n(0, 1) == 0);
    CHECK(n(1, 0) == -1);
    CHECK(n(1, 1) == 0);
    CHECK(entrywise_l1(n) == 2);

    const auto [pos, neg] = noise_split(n);
    CHECK(pos == BinaryMatrix::from_rows({{1, 0}, {0, 0}}));
    CHECK(neg == BinaryMatrix::from_rows({{0, 0}, {1, 0}}));

    CHECK_THROWS_AS(subtract(d, BinaryMatrix(2, 3)), DataError);
}

TEST_CASE("valuable_rank needs more than one item and transaction") {
    const BinaryMatrix x =
        BinaryMatrix::from_rows({{1, 1, 0, 1}, {1, 0, 0, 1}, {0, 0, 1, 0}});
    const BinaryMatrix y = BinaryMatrix::from_rows({{1, 1, 1, 0}, {1, 1, 1, 0}});
    // col 0: |X|=2, |Y|=2 -> valuable; col 1: |X|=1; col 2: |X|=1; col 3: |Y|=0.
    CHECK(valuable_rank(x, y) == 1);
    CHECK(valuable_rank(BinaryMatrix(3, 0), BinaryMatrix(2, 0)) == 0);
}
