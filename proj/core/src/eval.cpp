#include "paltile/eval.hpp"

#include <algorithm>
#include <limits>

#include "paltile/errors.hpp"
#include "paltile/objectives.hpp"

namespace paltile {

namespace {

struct PairStats {
    std::size_t padded = 0;
    std::vector<double> num;        // intersection areas, padded x padded
    std::vector<double> area_star;  // planted tile areas
    std::vector<double> area;       // computed tile areas
};

PairStats pair_stats(const BinaryMatrix& x_star, const BinaryMatrix& y_star,
                     const BinaryMatrix& x, const BinaryMatrix& y) {
    if (x_star.cols() != y_star.cols() || x.cols() != y.cols())
        throw DataError("tiling factors have different column counts");
    if (x_star.rows() != x.rows() || y_star.rows() != y.rows())
        throw DataError("tilings live on different data dimensions");

    const std::size_t rs = x_star.cols(), rc = x.cols();
    const std::size_t rp = std::max(rs, rc);
    PairStats st;
    st.padded = rp;
    st.num.assign(rp * rp, 0.0);
    st.area_star.assign(rp, 0.0);
    st.area.assign(rp, 0.0);

    const auto& xs_cs = x_star.col_sums();
    const auto& ys_cs = y_star.col_sums();
    const auto& x_cs = x.col_sums();
    const auto& y_cs = y.col_sums();
    for (std::size_t s = 0; s < rs; ++s)
        st.area_star[s] = static_cast<double>(xs_cs[s] * ys_cs[s]);
    for (std::size_t t = 0; t < rc; ++t)
        st.area[t] = static_cast<double>(x_cs[t] * y_cs[t]);

    for (std::size_t s = 0; s < rs; ++s)
        for (std::size_t t = 0; t < rc; ++t) {
            std::uint64_t yy = 0;
            for (std::size_t j = 0; j < y.rows(); ++j) yy += y_star(j, s) & y(j, t);
            if (yy == 0) continue;
            std::uint64_t xx = 0;
            for (std::size_t i = 0; i < x.rows(); ++i) xx += x_star(i, s) & x(i, t);
            st.num[s * rp + t] = static_cast<double>(yy * xx);
        }
    return st;
}

RealMatrix f_from_stats(const PairStats& st) {
    RealMatrix f(st.padded, st.padded);
    for (std::size_t s = 0; s < st.padded; ++s)
        for (std::size_t t = 0; t < st.padded; ++t) {
            const double num = st.num[s * st.padded + t];
            const double pre = st.area[t] > 0.0 ? num / st.area[t] : 0.0;
            const double rec = st.area_star[s] > 0.0 ? num / st.area_star[s] : 0.0;
            f.set(s, t, pre + rec > 0.0 ? 2.0 * pre * rec / (pre + rec) : 0.0);
        }
    return f;
}

}  // namespace

RealMatrix pairwise_f(const BinaryMatrix& x_star, const BinaryMatrix& y_star,
                      const BinaryMatrix& x, const BinaryMatrix& y) {
    return f_from_stats(pair_stats(x_star, y_star, x, y));
}

std::vector<std::size_t> match_tiles(const RealMatrix& per_pair_f) {
    if (per_pair_f.rows() != per_pair_f.cols())
        throw DataError("match_tiles: score matrix must be square");
    const std::size_t n = per_pair_f.rows();
    if (n == 0) return {};

    double maxv = 0.0;
    for (double v : per_pair_f.data()) maxv = std::max(maxv, v);

    // Assignment on cost = maxv - score via shortest augmenting paths with
    // potentials; p[j] is the row matched to column j, 1-based.
    const double inf = std::numeric_limits<double>::infinity();
    auto cost = [&](std::size_t i, std::size_t j) {
        return maxv - per_pair_f(i - 1, j - 1);
    };
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> sigma(n, 0);
    for (std::size_t j = 1; j <= n; ++j) sigma[p[j] - 1] = j - 1;
    return sigma;
}

MatchResult micro_f(const BinaryMatrix& x_star, const BinaryMatrix& y_star,
                    const BinaryMatrix& x, const BinaryMatrix& y) {
    const PairStats st = pair_stats(x_star, y_star, x, y);
    MatchResult res;
    res.per_pair_f = f_from_stats(st);
    res.sigma = match_tiles(res.per_pair_f);

    double t_star = 0.0, t_comp = 0.0, matched = 0.0;
    for (double a : st.area_star) t_star += a;
    for (double a : st.area) t_comp += a;
    for (std::size_t s = 0; s < st.padded; ++s)
        matched += st.num[s * st.padded + res.sigma[s]];

    if (t_star == 0.0 && t_comp == 0.0) {
        res.precision = res.recall = res.f_measure = 1.0;
        return res;
    }
    res.precision = t_comp > 0.0 ? matched / t_comp : 0.0;
    res.recall = t_star > 0.0 ? matched / t_star : 0.0;
    const double pr = res.precision + res.recall;
    res.f_measure = pr > 0.0 ? 2.0 * res.precision * res.recall / pr : 0.0;
    return res;
}

double relative_cost(CostKind kind, const BinaryMatrix& x, const BinaryMatrix& y,
                     const BinaryMatrix& d) {
    if (d.ones() == 0)
        throw DataError("relative_cost: all-zero data has no baseline cost");
    const BinaryMatrix empty_x(d.cols(), 0);
    const BinaryMatrix empty_y(d.rows(), 0);
    double value = 0.0, baseline = 0.0;
    switch (kind) {
        case CostKind::rss:
            value = static_cast<double>(f_rss(x, y, d));
            baseline = static_cast<double>(f_rss(empty_x, empty_y, d));
            break;
        case CostKind::l1:
            value = static_cast<double>(f_l1(x, y, d));
            baseline = static_cast<double>(f_l1(empty_x, empty_y, d));
            break;
        case CostKind::ct:
            value = f_ct(x, y, d).total;
            baseline = f_ct(empty_x, empty_y, d).total;
            break;
    }
    if (!(baseline > 0.0))
        throw DataError("relative_cost: empty-model cost is zero");
    return value / baseline * 100.0;
}

}  // namespace paltile
