#include "paltile/paltiling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>

#include "detail.hpp"
#include "paltile/errors.hpp"
#include "paltile/penalty.hpp"

namespace paltile {

namespace {

void validate_config(const PalConfig& cfg) {
    if (cfg.gamma <= 1.0)
        throw DataError("config: gamma must exceed 1");
    if (cfg.delta_r < 1)
        throw DataError("config: delta_r must be at least 1");
    if (cfg.thresholds.empty())
        throw DataError("config: thresholds must not be empty");
    for (double t : cfg.thresholds)
        if (!(t >= 0.0 && t <= 1.0))
            throw DataError("config: thresholds must lie in [0,1]");
    if (!(cfg.lipschitz_floor > 0.0))
        throw DataError("config: lipschitz_floor must be positive");
    if (cfg.trace_stride < 1)
        throw DataError("config: trace_stride must be positive");
}

std::string trim(const std::string& s) {
    const char* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    if (value.empty())
        throw DataError("config: empty value for " + key);
    for (char c : value)
        if (c < '0' || c > '9')
            throw DataError("config: bad value for " + key + ": '" + value + "'");
    errno = 0;
    char* end = nullptr;
    std::uint64_t v = std::strtoull(value.c_str(), &end, 10);
    if (errno != 0 || end != value.c_str() + value.size())
        throw DataError("config: bad value for " + key + ": '" + value + "'");
    return v;
}

double parse_real(const std::string& value, const std::string& key) {
    if (value.empty())
        throw DataError("config: empty value for " + key);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (errno != 0 || end != value.c_str() + value.size() || !std::isfinite(v))
        throw DataError("config: bad value for " + key + ": '" + value + "'");
    return v;
}

}  // namespace

std::vector<double> default_thresholds() {
    std::vector<double> t(21);
    for (int k = 0; k <= 20; ++k) t[k] = k * 0.05;
    return t;
}

std::pair<RealMatrix, RealMatrix> increase_rank(const RealMatrix& x, const RealMatrix& y,
                                                std::size_t delta_r, Rng& rng) {
    const std::size_t r0 = x.cols();
    if (y.cols() != r0)
        throw DataError("increase_rank: factors have different column counts");
    const std::size_t r1 = r0 + delta_r;
    RealMatrix nx(x.rows(), r1);
    RealMatrix ny(y.rows(), r1);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t s = 0; s < r0; ++s) nx.set(i, s, x(i, s));
    for (std::size_t j = 0; j < y.rows(); ++j)
        for (std::size_t s = 0; s < r0; ++s) ny.set(j, s, y(j, s));
    for (std::size_t s = r0; s < r1; ++s)
        for (std::size_t i = 0; i < x.rows(); ++i) nx.set(i, s, rng.uniform01());
    for (std::size_t s = r0; s < r1; ++s)
        for (std::size_t j = 0; j < y.rows(); ++j) ny.set(j, s, rng.uniform01());
    return {std::move(nx), std::move(ny)};
}

PalmResult palm_inner(const BinaryMatrix& d, const RealMatrix& x0, const RealMatrix& y0,
                      const CostModel& model, std::size_t iterations, double gamma,
                      double lipschitz_floor, std::size_t trace_stride) {
    detail::check_factor_dims(x0, y0, d.rows(), d.cols());
    if (gamma <= 1.0)
        throw DataError("palm_inner: gamma must exceed 1");
    if (!(lipschitz_floor > 0.0))
        throw DataError("palm_inner: lipschitz_floor must be positive");
    if (trace_stride < 1)
        throw DataError("palm_inner: trace_stride must be positive");
    if (model.kind == ModelKind::primp && model.codes.size() != d.cols())
        throw DataError("palm_inner: code vector length does not match item count");

    const std::size_t m = d.rows(), n = d.cols(), r = x0.cols();
    PalmResult res{x0, y0, {}};
    const RealMatrix d_real = to_real(d);

    auto sample = [&](std::size_t iter) {
        const double v = detail::relaxed_objective_real(model, res.x, res.y, d_real) +
                         phi(res.x) + phi(res.y);
        if (!std::isfinite(v))
            throw NumericalError("palm_inner: objective non-finite at iteration " +
                                 std::to_string(iter));
        res.trace.push_back({iter, v});
    };

    sample(0);
    if (r == 0 || iterations == 0) return res;

    RealMatrix r_buf(m, n);
    RealMatrix gx(n, r);
    RealMatrix gy(m, r);
    for (std::size_t k = 1; k <= iterations; ++k) {
        detail::grad_x_into(model, res.x, res.y, d_real, r_buf, gx);
        const double mx = std::max(lipschitz_x(model, res.y), lipschitz_floor);
        if (!std::isfinite(mx))
            throw NumericalError("palm_inner: step modulus non-finite at iteration " +
                                 std::to_string(k));
        const double alpha = 1.0 / (gamma * mx);
        {
            auto& xd = res.x.mutable_data();
            const auto& g = gx.data();
            for (std::size_t t = 0; t < xd.size(); ++t)
                xd[t] = prox_lambda(xd[t] - alpha * g[t], alpha);
        }

        detail::grad_y_into(model, res.x, res.y, d_real, r_buf, gy);
        const double my = std::max(lipschitz_y(model, res.x, m), lipschitz_floor);
        if (!std::isfinite(my))
            throw NumericalError("palm_inner: step modulus non-finite at iteration " +
                                 std::to_string(k));
        const double beta = 1.0 / (gamma * my);
        {
            auto& yd = res.y.mutable_data();
            const auto& g = gy.data();
            for (std::size_t t = 0; t < yd.size(); ++t)
                yd[t] = prox_lambda(yd[t] - beta * g[t], beta);
        }

        if (k % trace_stride == 0) sample(k);
    }
    if (iterations % trace_stride != 0) sample(iterations);
    return res;
}

namespace {

struct ThresholdedX {
    std::vector<std::vector<std::uint32_t>> active;  // per item: tile indices
    std::vector<std::uint64_t> col_ones;             // |X_s|
    std::vector<double> col_code;                    // sum of c_i over the column
};

struct ThresholdedY {
    std::vector<std::vector<std::uint64_t>> mask;  // per tile: m-bit column
    std::vector<std::uint64_t> col_ones;           // |Y_s|
};

double ct_cost_from_stats(const std::vector<std::uint64_t>& y_ones,
                          const std::vector<double>& x_code,
                          const std::vector<std::uint64_t>& noise,
                          const std::vector<double>& codes) {
    std::uint64_t y_total = 0;
    for (auto v : y_ones) y_total += v;
    std::uint64_t n_total = 0;
    for (auto v : noise) n_total += v;
    const double denom = static_cast<double>(y_total + n_total);
    double cost = 0.0;
    for (std::size_t s = 0; s < y_ones.size(); ++s) {
        if (y_ones[s] == 0) continue;
        const double lp = std::log(static_cast<double>(y_ones[s]) / denom);
        cost += -static_cast<double>(y_ones[s]) * lp + x_code[s] - lp;
    }
    for (std::size_t i = 0; i < noise.size(); ++i) {
        if (noise[i] == 0) continue;
        const double lp = std::log(static_cast<double>(noise[i]) / denom);
        cost += -static_cast<double>(noise[i]) * lp + codes[i] - lp;
    }
    return cost;
}

}  // namespace

ThresholdResult threshold_search(const RealMatrix& xk, const RealMatrix& yk,
                                 const BinaryMatrix& d, const CostModel& model,
                                 const std::vector<double>& thresholds) {
    detail::check_factor_dims(xk, yk, d.rows(), d.cols());
    if (thresholds.empty())
        throw DataError("threshold_search: empty threshold set");
    if (model.kind == ModelKind::primp && model.codes.size() != d.cols())
        throw DataError("threshold_search: code vector length does not match item count");

    const std::size_t m = d.rows(), n = d.cols(), r = xk.cols();
    const std::size_t words = (m + 63) / 64;

    std::vector<std::vector<std::uint64_t>> d_cols(n, std::vector<std::uint64_t>(words, 0));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (d(j, i)) d_cols[i][j / 64] |= std::uint64_t{1} << (j % 64);

    std::vector<ThresholdedX> xs(thresholds.size());
    std::vector<ThresholdedY> ys(thresholds.size());
    for (std::size_t a = 0; a < thresholds.size(); ++a) {
        const double t = thresholds[a];
        auto& tx = xs[a];
        tx.active.assign(n, {});
        tx.col_ones.assign(r, 0);
        tx.col_code.assign(r, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t s = 0; s < r; ++s)
                if (xk(i, s) >= t) {
                    tx.active[i].push_back(static_cast<std::uint32_t>(s));
                    tx.col_ones[s] += 1;
                    if (model.kind == ModelKind::primp) tx.col_code[s] += model.codes[i];
                }
        auto& ty = ys[a];
        ty.mask.assign(r, std::vector<std::uint64_t>(words, 0));
        ty.col_ones.assign(r, 0);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t s = 0; s < r; ++s)
                if (yk(j, s) >= t) {
                    ty.mask[s][j / 64] |= std::uint64_t{1} << (j % 64);
                    ty.col_ones[s] += 1;
                }
    }

    bool have_best = false;
    double best_cost = 0.0;
    std::size_t best_a = 0, best_b = 0;
    std::vector<std::uint64_t> cover(words);
    std::vector<std::uint64_t> noise(n);
    for (std::size_t a = 0; a < thresholds.size(); ++a) {
        for (std::size_t b = 0; b < thresholds.size(); ++b) {
            const auto& tx = xs[a];
            const auto& ty = ys[b];
            std::uint64_t n_total = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::fill(cover.begin(), cover.end(), 0);
                for (std::uint32_t s : tx.active[i])
                    for (std::size_t w = 0; w < words; ++w) cover[w] |= ty.mask[s][w];
                std::uint64_t miss = 0;
                for (std::size_t w = 0; w < words; ++w)
                    miss += std::popcount(cover[w] ^ d_cols[i][w]);
                noise[i] = miss;
                n_total += miss;
            }
            double cost;
            if (model.kind == ModelKind::panpal) {
                std::uint64_t ones = n_total;
                for (std::size_t s = 0; s < r; ++s) ones += tx.col_ones[s] + ty.col_ones[s];
                cost = static_cast<double>(ones);
            } else {
                cost = ct_cost_from_stats(ty.col_ones, tx.col_code, noise, model.codes);
            }
            const double tsum = thresholds[a] + thresholds[b];
            const double best_tsum = thresholds[best_a] + thresholds[best_b];
            const bool better =
                !have_best || cost < best_cost ||
                (cost == best_cost &&
                 (tsum > best_tsum ||
                  (tsum == best_tsum && (thresholds[a] > thresholds[best_a] ||
                                         (thresholds[a] == thresholds[best_a] &&
                                          thresholds[b] > thresholds[best_b])))));
            if (better) {
                have_best = true;
                best_cost = cost;
                best_a = a;
                best_b = b;
            }
        }
    }

    ThresholdResult out;
    out.t_x = thresholds[best_a];
    out.t_y = thresholds[best_b];
    out.x = threshold(xk, out.t_x);
    out.y = threshold(yk, out.t_y);
    out.cost = discrete_cost(model.kind, out.x, out.y, d, model.codes);
    return out;
}

std::pair<BinaryMatrix, BinaryMatrix> prune_trivial(const BinaryMatrix& x,
                                                    const BinaryMatrix& y) {
    if (x.cols() != y.cols())
        throw DataError("prune_trivial: factors have different column counts");
    const auto& xcs = x.col_sums();
    const auto& ycs = y.col_sums();
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < x.cols(); ++s)
        if (xcs[s] > 1 && ycs[s] > 1) keep.push_back(s);
    BinaryMatrix nx(x.rows(), keep.size());
    BinaryMatrix ny(y.rows(), keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (std::size_t i = 0; i < x.rows(); ++i)
            if (x(i, keep[k])) nx.set(i, k, 1);
        for (std::size_t j = 0; j < y.rows(); ++j)
            if (y(j, keep[k])) ny.set(j, k, 1);
    }
    return {std::move(nx), std::move(ny)};
}

Tiling pal_tiling(const BinaryMatrix& d, ModelKind kind, const PalConfig& config) {
    validate_config(config);
    const std::size_t m = d.rows(), n = d.cols();
    if (m == 0 || n == 0)
        throw DataError("pal_tiling: empty data matrix");

    Tiling out;
    out.x = BinaryMatrix(n, 0);
    out.y = BinaryMatrix(m, 0);
    if (d.ones() == 0) return out;

    const CostModel model = kind == ModelKind::panpal ? CostModel::panpal()
                                                      : CostModel::primp(d);
    const std::size_t cap = config.max_rank ? config.max_rank : std::min(n, m);
    Rng rng(config.seed);
    RealMatrix x(n, 0);
    RealMatrix y(m, 0);

    while (x.cols() < cap) {
        const std::size_t inc = std::min(config.delta_r, cap - x.cols());
        std::tie(x, y) = increase_rank(x, y, inc, rng);
        PalmResult opt = palm_inner(d, x, y, model, config.iterations, config.gamma,
                                    config.lipschitz_floor, config.trace_stride);
        x = std::move(opt.x);
        y = std::move(opt.y);
        const std::size_t r_off = x.cols();
        for (const auto& tp : opt.trace)
            out.relaxed_trace.push_back({r_off, tp.iter, tp.value});

        const ThresholdResult th = threshold_search(x, y, d, model, config.thresholds);
        const std::size_t r_val = valuable_rank(th.x, th.y);
        auto pruned = prune_trivial(th.x, th.y);
        const double cost = discrete_cost(kind, pruned.first, pruned.second, d, model.codes);
        out.rank_trace.push_back({r_off, r_val, cost, th.t_x, th.t_y});
        out.x = std::move(pruned.first);
        out.y = std::move(pruned.second);
        out.t_x = th.t_x;
        out.t_y = th.t_y;
        if (r_off - r_val > config.stop_slack) return out;
    }
    return out;
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "panpal") return ModelKind::panpal;
    if (name == "primp") return ModelKind::primp;
    throw DataError("unknown model '" + name + "' (expected panpal or primp)");
}

const char* model_kind_name(ModelKind kind) {
    return kind == ModelKind::panpal ? "panpal" : "primp";
}

std::vector<double> parse_threshold_list(const std::string& text) {
    std::vector<double> t;
    std::istringstream vs(text);
    std::string item;
    while (std::getline(vs, item, ',')) {
        const double v = parse_real(trim(item), "thresholds");
        if (!(v >= 0.0 && v <= 1.0))
            throw DataError("config: thresholds must lie in [0,1]");
        t.push_back(v);
    }
    if (t.empty())
        throw DataError("config: thresholds must not be empty");
    return t;
}

ParsedConfig parse_pal_config(std::istream& in, const PalConfig& base) {
    ParsedConfig out{base, std::nullopt, false};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "delta_r") {
            out.config.delta_r = static_cast<std::size_t>(parse_u64(value, key));
            if (out.config.delta_r < 1)
                throw DataError("config: delta_r must be at least 1");
        } else if (key == "iterations") {
            out.config.iterations = static_cast<std::size_t>(parse_u64(value, key));
        } else if (key == "gamma") {
            out.config.gamma = parse_real(value, key);
            if (out.config.gamma <= 1.0)
                throw DataError("config: gamma must exceed 1");
        } else if (key == "seed") {
            out.config.seed = parse_u64(value, key);
            out.seed_set = true;
        } else if (key == "thresholds") {
            out.config.thresholds = parse_threshold_list(value);
        } else if (key == "model") {
            out.model = parse_model_kind(value);
        } else if (key == "stop_slack") {
            out.config.stop_slack = static_cast<std::size_t>(parse_u64(value, key));
        } else if (key == "trace_stride") {
            out.config.trace_stride = static_cast<std::size_t>(parse_u64(value, key));
            if (out.config.trace_stride < 1)
                throw DataError("config: trace_stride must be positive");
        } else {
            throw DataError("config line " + std::to_string(lineno) + ": unknown key '" +
                            key + "'");
        }
    }
    return out;
}

}  // namespace paltile
