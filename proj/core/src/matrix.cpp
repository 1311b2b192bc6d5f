#include "paltile/matrix.hpp"

#include <cmath>
#include <numeric>

#include "paltile/errors.hpp"

namespace paltile {

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    BinaryMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DataError("ragged row in matrix literal");
        std::size_t j = 0;
        for (int v : row) {
            if (v != 0 && v != 1) throw DataError("binary matrix literal entry not 0/1");
            m.data_[i * c + j] = static_cast<std::uint8_t>(v);
            ++j;
        }
        ++i;
    }
    return m;
}

const std::vector<std::uint64_t>& BinaryMatrix::col_sums() const {
    if (!cache_valid_) {
        col_sums_cache_.assign(cols_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::uint8_t* row = data_.data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) col_sums_cache_[j] += row[j];
        }
        cache_valid_ = true;
    }
    return col_sums_cache_;
}

std::uint64_t BinaryMatrix::ones() const {
    const auto& sums = col_sums();
    return std::accumulate(sums.begin(), sums.end(), std::uint64_t{0});
}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    RealMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DataError("ragged row in matrix literal");
        std::size_t j = 0;
        for (double v : row) m.data_[i * c + j++] = v;
        ++i;
    }
    return m;
}

const std::vector<double>& RealMatrix::col_sums() const {
    if (!cache_valid_) {
        col_sums_cache_.assign(cols_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const double* row = data_.data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) col_sums_cache_[j] += row[j];
        }
        cache_valid_ = true;
    }
    return col_sums_cache_;
}

double RealMatrix::sum() const {
    const auto& sums = col_sums();
    return std::accumulate(sums.begin(), sums.end(), 0.0);
}

bool RealMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void SignedMatrix::set(std::size_t i, std::size_t j, std::int8_t value) {
    if (value < -1 || value > 1) throw DataError("signed matrix entry not in {-1, 0, 1}");
    data_[i * cols_ + j] = value;
}

BinaryMatrix threshold(const RealMatrix& m, double t) {
    BinaryMatrix out(m.rows(), m.cols());
    auto& dst = out.mutable_data();
    const auto& src = m.data();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] >= t ? 1 : 0;
    return out;
}

BinaryMatrix threshold(const BinaryMatrix& m, double t) {
    BinaryMatrix out(m.rows(), m.cols());
    auto& dst = out.mutable_data();
    const auto& src = m.data();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] >= t ? 1 : 0;
    return out;
}

BinaryMatrix bool_product(const BinaryMatrix& y, const BinaryMatrix& x) {
    if (y.cols() != x.cols())
        throw DataError("bool_product: factor rank mismatch");
    const std::size_t m = y.rows(), n = x.rows(), r = y.cols();
    BinaryMatrix out(m, n);
    auto& dst = out.mutable_data();
    const auto& yd = y.data();
    const auto& xd = x.data();
    for (std::size_t j = 0; j < m; ++j) {
        const std::uint8_t* yrow = yd.data() + j * r;
        std::uint8_t* orow = dst.data() + j * n;
        for (std::size_t s = 0; s < r; ++s) {
            if (!yrow[s]) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (xd[i * r + s]) orow[i] = 1;
            }
        }
    }
    return out;
}

RealMatrix elementary_product(const RealMatrix& y, const RealMatrix& x) {
    if (y.cols() != x.cols())
        throw DataError("elementary_product: factor rank mismatch");
    const std::size_t m = y.rows(), n = x.rows(), r = y.cols();
    RealMatrix out(m, n);
    auto& dst = out.mutable_data();
    const auto& yd = y.data();
    const auto& xd = x.data();
    for (std::size_t j = 0; j < m; ++j) {
        const double* yrow = yd.data() + j * r;
        double* orow = dst.data() + j * n;
        for (std::size_t s = 0; s < r; ++s) {
            const double yv = yrow[s];
            if (yv == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i) orow[i] += yv * xd[i * r + s];
        }
    }
    return out;
}

RealMatrix to_real(const BinaryMatrix& m) {
    RealMatrix out(m.rows(), m.cols());
    auto& dst = out.mutable_data();
    const auto& src = m.data();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k];
    return out;
}

BinaryMatrix transpose(const BinaryMatrix& m) {
    BinaryMatrix out(m.cols(), m.rows());
    auto& dst = out.mutable_data();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) dst[j * m.rows() + i] = m(i, j);
    return out;
}

std::uint64_t entrywise_l1(const BinaryMatrix& m) { return m.ones(); }

std::uint64_t entrywise_l1(const SignedMatrix& m) {
    std::uint64_t total = 0;
    for (std::int8_t v : m.data()) total += v != 0;
    return total;
}

double entrywise_l1(const RealMatrix& m) {
    double total = 0.0;
    for (double v : m.data()) total += std::abs(v);
    return total;
}

std::uint64_t frobenius_sq(const BinaryMatrix& m) { return m.ones(); }

double frobenius_sq(const RealMatrix& m) {
    double total = 0.0;
    for (double v : m.data()) total += v * v;
    return total;
}

SignedMatrix subtract(const BinaryMatrix& d, const BinaryMatrix& b) {
    if (d.rows() != b.rows() || d.cols() != b.cols())
        throw DataError("subtract: shape mismatch");
    SignedMatrix out(d.rows(), d.cols());
    auto* dst = out.mutable_data().data();
    const auto& dd = d.data();
    const auto& bd = b.data();
    for (std::size_t k = 0; k < dd.size(); ++k)
        dst[k] = static_cast<std::int8_t>(static_cast<int>(dd[k]) - static_cast<int>(bd[k]));
    return out;
}

std::pair<BinaryMatrix, BinaryMatrix> noise_split(const SignedMatrix& n) {
    BinaryMatrix pos(n.rows(), n.cols());
    BinaryMatrix neg(n.rows(), n.cols());
    auto& pd = pos.mutable_data();
    auto& nd = neg.mutable_data();
    const auto& src = n.data();
    for (std::size_t k = 0; k < src.size(); ++k) {
        pd[k] = src[k] > 0 ? 1 : 0;
        nd[k] = src[k] < 0 ? 1 : 0;
    }
    return {std::move(pos), std::move(neg)};
}

std::size_t valuable_rank(const BinaryMatrix& x, const BinaryMatrix& y) {
    if (x.cols() != y.cols())
        throw DataError("valuable_rank: factor rank mismatch");
    const auto& xs = x.col_sums();
    const auto& ys = y.col_sums();
    std::size_t count = 0;
    for (std::size_t s = 0; s < x.cols(); ++s) {
        if (xs[s] > 1 && ys[s] > 1) ++count;
    }
    return count;
}

}  // namespace paltile
