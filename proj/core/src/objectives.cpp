#include "paltile/objectives.hpp"

#include <cmath>
#include <cstddef>

#include "detail.hpp"
#include "paltile/errors.hpp"
#include "paltile/penalty.hpp"

namespace paltile {

namespace detail {

void check_factor_dims(const RealMatrix& x, const RealMatrix& y, std::size_t d_rows,
                       std::size_t d_cols) {
    if (x.rows() != d_cols || y.rows() != d_rows || x.cols() != y.cols())
        throw DataError("factor dimensions do not match data");
}

void check_factor_dims(const BinaryMatrix& x, const BinaryMatrix& y, std::size_t d_rows,
                       std::size_t d_cols) {
    if (x.rows() != d_cols || y.rows() != d_rows || x.cols() != y.cols())
        throw DataError("factor dimensions do not match data");
}

void residual_into(const RealMatrix& x, const RealMatrix& y, const RealMatrix& d_real,
                   RealMatrix& r_out) {
    if (x.cols() == 0) {
        auto& dst = r_out.mutable_data();
        const auto& src = d_real.data();
        for (std::size_t k = 0; k < src.size(); ++k) dst[k] = -src[k];
        return;
    }
    emap(r_out).noalias() = emap(y) * emap(x).transpose();
    emap(r_out) -= emap(d_real);
}

void grad_x_into(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                 const RealMatrix& d_real, RealMatrix& r_buf, RealMatrix& out) {
    residual_into(x, y, d_real, r_buf);
    emap(out).noalias() = emap(r_buf).transpose() * emap(y);
    const std::size_t n = x.rows(), r = x.cols();
    auto& o = out.mutable_data();
    if (model.kind == ModelKind::panpal) {
        for (double& v : o) v += 0.5;
    } else {
        for (double& v : o) v *= model.mu;
        for (std::size_t i = 0; i < n; ++i) {
            const double add = 0.5 * model.codes[i];
            for (std::size_t s = 0; s < r; ++s) o[i * r + s] += add;
        }
    }
}

void grad_y_into(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                 const RealMatrix& d_real, RealMatrix& r_buf, RealMatrix& out) {
    residual_into(x, y, d_real, r_buf);
    emap(out).noalias() = emap(r_buf) * emap(x);
    const std::size_t m = y.rows(), r = y.cols();
    auto& o = out.mutable_data();
    if (model.kind == ModelKind::panpal) {
        for (double& v : o) v += 0.5;
        return;
    }
    for (double& v : o) v *= model.mu;
    std::vector<double> col(r, 0.0);
    const auto& yd = y.data();
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t s = 0; s < r; ++s) {
            const double a = std::abs(yd[j * r + s]);
            col[s] += a;
            total += a;
        }
    for (std::size_t s = 0; s < r; ++s)
        col[s] = -0.5 * std::log((col[s] + 1.0) / (total + static_cast<double>(r))) + 0.5;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t s = 0; s < r; ++s) o[j * r + s] += col[s];
}

double relaxed_objective_real(const CostModel& model, const RealMatrix& x,
                              const RealMatrix& y, const RealMatrix& d_real) {
    const std::size_t r = x.cols();
    double rss = 0.0;
    if (r == 0) {
        for (double v : d_real.data()) rss += v * v;
    } else {
        rss = (emap(y) * emap(x).transpose() - emap(d_real)).squaredNorm();
    }
    double x_l1 = 0.0;
    for (double v : x.data()) x_l1 += std::abs(v);
    double y_l1 = 0.0;
    for (double v : y.data()) y_l1 += std::abs(v);

    if (model.kind == ModelKind::panpal)
        return 0.5 * rss + 0.5 * (x_l1 + y_l1);

    std::vector<double> ycol(r, 0.0);
    const auto& yd = y.data();
    for (std::size_t j = 0; j < y.rows(); ++j)
        for (std::size_t s = 0; s < r; ++s) ycol[s] += std::abs(yd[j * r + s]);
    double g = 0.0;
    for (std::size_t s = 0; s < r; ++s)
        g -= (ycol[s] + 1.0) * std::log((ycol[s] + 1.0) / (y_l1 + static_cast<double>(r)));
    const auto& xd = x.data();
    for (std::size_t s = 0; s < r; ++s) {
        double dot = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) dot += xd[i * r + s] * model.codes[i];
        g += std::abs(dot);
    }
    g += y_l1;
    return 0.5 * model.mu * rss + 0.5 * g;
}

double gram_frobenius(const RealMatrix& a) {
    if (a.cols() == 0 || a.rows() == 0) return 0.0;
    RowMat gram = emap(a).transpose() * emap(a);
    return gram.norm();
}

}  // namespace detail

CostModel CostModel::panpal() {
    CostModel m;
    m.kind = ModelKind::panpal;
    m.mu = 1.0;
    return m;
}

CostModel CostModel::primp(const BinaryMatrix& d) {
    CostModel m;
    m.kind = ModelKind::primp;
    m.mu = 1.0 + std::log(static_cast<double>(d.cols()));
    m.codes = standard_codes(d);
    return m;
}

std::vector<double> standard_codes(const BinaryMatrix& d) {
    const std::uint64_t total = d.ones();
    if (total == 0)
        throw DataError("standard_codes: all-zero data has no code table");
    const auto& cs = d.col_sums();
    std::vector<double> codes(d.cols(), 0.0);
    for (std::size_t i = 0; i < d.cols(); ++i)
        if (cs[i] > 0)
            codes[i] = -std::log(static_cast<double>(cs[i]) / static_cast<double>(total));
    return codes;
}

std::uint64_t f_rss(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d) {
    detail::check_factor_dims(x, y, d.rows(), d.cols());
    const BinaryMatrix cover = bool_product(y, x);
    const auto& a = d.data();
    const auto& b = cover.data();
    std::uint64_t miss = 0;
    for (std::size_t k = 0; k < a.size(); ++k) miss += a[k] != b[k];
    return miss;
}

std::uint64_t f_l1(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d) {
    return f_rss(x, y, d) + x.ones() + y.ones();
}

CtBreakdown f_ct(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d) {
    return f_ct(x, y, d, standard_codes(d));
}

CtBreakdown f_ct(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d,
                 const std::vector<double>& codes) {
    detail::check_factor_dims(x, y, d.rows(), d.cols());
    if (d.ones() == 0)
        throw DataError("f_ct: all-zero data has no code table");
    if (codes.size() != d.cols())
        throw DataError("f_ct: code vector length does not match item count");

    const std::size_t m = d.rows(), n = d.cols(), r = x.cols();
    const BinaryMatrix cover = bool_product(y, x);
    std::vector<std::uint64_t> noise(n, 0);
    const auto& dd = d.data();
    const auto& cd = cover.data();
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            noise[i] += dd[j * n + i] != cd[j * n + i];

    const auto& ycs = y.col_sums();
    std::uint64_t y_total = y.ones();
    std::uint64_t n_total = 0;
    for (auto v : noise) n_total += v;
    const double denom = static_cast<double>(y_total + n_total);

    CtBreakdown out;
    for (std::size_t s = 0; s < r; ++s) {
        if (ycs[s] == 0) continue;
        const double p = static_cast<double>(ycs[s]) / denom;
        out.data_bits -= static_cast<double>(ycs[s]) * std::log(p);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (x(i, s)) dot += codes[i];
        out.model_bits += dot - std::log(p);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (noise[i] == 0) continue;
        const double p = static_cast<double>(noise[i]) / denom;
        out.data_bits -= static_cast<double>(noise[i]) * std::log(p);
        out.model_bits += codes[i] - std::log(p);
    }
    out.total = out.data_bits + out.model_bits;
    return out;
}

double discrete_cost(ModelKind kind, const BinaryMatrix& x, const BinaryMatrix& y,
                     const BinaryMatrix& d) {
    if (kind == ModelKind::panpal)
        return static_cast<double>(f_l1(x, y, d));
    return f_ct(x, y, d).total;
}

double discrete_cost(ModelKind kind, const BinaryMatrix& x, const BinaryMatrix& y,
                     const BinaryMatrix& d, const std::vector<double>& codes) {
    if (kind == ModelKind::panpal)
        return static_cast<double>(f_l1(x, y, d));
    return f_ct(x, y, d, codes).total;
}

double relaxed_objective(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                         const BinaryMatrix& d) {
    detail::check_factor_dims(x, y, d.rows(), d.cols());
    if (!x.all_finite() || !y.all_finite())
        throw NumericalError("relaxed_objective: non-finite factor entries");
    return detail::relaxed_objective_real(model, x, y, to_real(d));
}

double penalized_objective(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                           const BinaryMatrix& d) {
    return relaxed_objective(model, x, y, d) + phi(x) + phi(y);
}

RealMatrix grad_x(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                  const BinaryMatrix& d) {
    detail::check_factor_dims(x, y, d.rows(), d.cols());
    if (x.cols() == 0)
        throw DataError("grad_x: empty factorization has no gradient");
    RealMatrix r_buf(d.rows(), d.cols());
    RealMatrix out(x.rows(), x.cols());
    detail::grad_x_into(model, x, y, to_real(d), r_buf, out);
    return out;
}

RealMatrix grad_y(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                  const BinaryMatrix& d) {
    detail::check_factor_dims(x, y, d.rows(), d.cols());
    if (x.cols() == 0)
        throw DataError("grad_y: empty factorization has no gradient");
    RealMatrix r_buf(d.rows(), d.cols());
    RealMatrix out(y.rows(), y.cols());
    detail::grad_y_into(model, x, y, to_real(d), r_buf, out);
    return out;
}

double lipschitz_x(const CostModel& model, const RealMatrix& y) {
    const double base = detail::gram_frobenius(y);
    return model.kind == ModelKind::primp ? model.mu * base : base;
}

double lipschitz_y(const CostModel& model, const RealMatrix& x, std::size_t m) {
    const double base = detail::gram_frobenius(x);
    if (model.kind == ModelKind::primp)
        return model.mu * base + static_cast<double>(m);
    return base;
}

double ct_data_bound(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d) {
    detail::check_factor_dims(x, y, d.rows(), d.cols());
    if (d.cols() == 0)
        throw DataError("ct_data_bound: data has no items");
    const RealMatrix prod = elementary_product(to_real(y), to_real(x));
    const auto& dd = d.data();
    const auto& pd = prod.data();
    double res = 0.0;
    for (std::size_t k = 0; k < dd.size(); ++k) {
        const double diff = static_cast<double>(dd[k]) - pd[k];
        res += diff * diff;
    }
    const double mu = 1.0 + std::log(static_cast<double>(d.cols()));
    const auto& ycs = y.col_sums();
    const double y_total = static_cast<double>(y.ones());
    const double r = static_cast<double>(x.cols());
    double bterm = 0.0;
    for (std::size_t s = 0; s < x.cols(); ++s) {
        const double a = static_cast<double>(ycs[s]) + 1.0;
        bterm -= a * std::log(a / (y_total + r));
    }
    return mu * res + bterm + y_total;
}

}  // namespace paltile
