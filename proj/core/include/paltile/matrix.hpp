#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace paltile {

// Dense row-major 0/1 matrix. Column sums are cached and recomputed lazily
// after mutation.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static BinaryMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    void set(std::size_t i, std::size_t j, bool value) {
        data_[i * cols_ + j] = value ? 1 : 0;
        cache_valid_ = false;
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& mutable_data() {
        cache_valid_ = false;
        return data_;
    }

    const std::vector<std::uint64_t>& col_sums() const;
    std::uint64_t ones() const;

    bool operator==(const BinaryMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
    mutable std::vector<std::uint64_t> col_sums_cache_;
    mutable bool cache_valid_ = false;
};

// Dense row-major real matrix; factor matrices keep entries in [0, 1].
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    void set(std::size_t i, std::size_t j, double value) {
        data_[i * cols_ + j] = value;
        cache_valid_ = false;
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& mutable_data() {
        cache_valid_ = false;
        return data_;
    }

    const std::vector<double>& col_sums() const;
    double sum() const;

    bool all_finite() const;

    bool operator==(const RealMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
    mutable std::vector<double> col_sums_cache_;
    mutable bool cache_valid_ = false;
};

// Dense row-major matrix over {-1, 0, +1}; holds noise matrices N = D - theta(YX^T).
class SignedMatrix {
public:
    SignedMatrix() = default;
    SignedMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int8_t operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    void set(std::size_t i, std::size_t j, std::int8_t value);

    const std::vector<std::int8_t>& data() const { return data_; }
    std::vector<std::int8_t>& mutable_data() { return data_; }

    bool operator==(const SignedMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int8_t> data_;
};

// Entry-wise rounding: 1 where the entry is >= t.
BinaryMatrix threshold(const RealMatrix& m, double t);
BinaryMatrix threshold(const BinaryMatrix& m, double t);

// Boolean product theta(Y X^T): output (j, i) is 1 iff some s has
// Y(j, s) = 1 and X(i, s) = 1. Y is m x r, X is n x r, result m x n.
BinaryMatrix bool_product(const BinaryMatrix& y, const BinaryMatrix& x);

// Elementary product Y X^T over the reals.
RealMatrix elementary_product(const RealMatrix& y, const RealMatrix& x);

RealMatrix to_real(const BinaryMatrix& m);
BinaryMatrix transpose(const BinaryMatrix& m);

std::uint64_t entrywise_l1(const BinaryMatrix& m);
std::uint64_t entrywise_l1(const SignedMatrix& m);
double entrywise_l1(const RealMatrix& m);

std::uint64_t frobenius_sq(const BinaryMatrix& m);
double frobenius_sq(const RealMatrix& m);

// Entry-wise D - B as a signed matrix.
SignedMatrix subtract(const BinaryMatrix& d, const BinaryMatrix& b);

// Splits a signed matrix into its positive and negative parts, both binary.
std::pair<BinaryMatrix, BinaryMatrix> noise_split(const SignedMatrix& n);

// Number of columns s with |X_{.s}| > 1 and |Y_{.s}| > 1.
std::size_t valuable_rank(const BinaryMatrix& x, const BinaryMatrix& y);

}  // namespace paltile
