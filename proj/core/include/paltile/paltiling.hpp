#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paltile/matrix.hpp"
#include "paltile/objectives.hpp"
#include "paltile/rng.hpp"

namespace paltile {

// {0, 0.05, ..., 1.0}
std::vector<double> default_thresholds();

struct PalConfig {
    std::size_t delta_r = 10;
    std::size_t iterations = 50000;
    std::vector<double> thresholds = default_thresholds();
    double gamma = 1.00001;
    std::uint64_t seed = 0;
    double lipschitz_floor = 1e-12;
    std::size_t stop_slack = 1;
    std::size_t trace_stride = 50;
    std::size_t max_rank = 0;  // 0 means min(n, m)
};

struct RankTracePoint {
    std::size_t rank_offered = 0;
    std::size_t rank_valuable = 0;
    double cost = 0.0;
    double t_x = 0.0;
    double t_y = 0.0;
};

struct RelaxedTracePoint {
    std::size_t rank_offered = 0;
    std::size_t iter = 0;
    double value = 0.0;
};

struct Tiling {
    BinaryMatrix x;
    BinaryMatrix y;
    double t_x = 0.0;
    double t_y = 0.0;
    std::vector<RankTracePoint> rank_trace;
    std::vector<RelaxedTracePoint> relaxed_trace;
};

struct PalmTracePoint {
    std::size_t iter = 0;
    double value = 0.0;
};

struct PalmResult {
    RealMatrix x;
    RealMatrix y;
    std::vector<PalmTracePoint> trace;
};

struct ThresholdResult {
    BinaryMatrix x;
    BinaryMatrix y;
    double t_x = 0.0;
    double t_y = 0.0;
    double cost = 0.0;
};

// Appends delta_r uniform-[0,1) columns to both factors, X's columns first.
std::pair<RealMatrix, RealMatrix> increase_rank(const RealMatrix& x, const RealMatrix& y,
                                                std::size_t delta_r, Rng& rng);

// K alternating proximal gradient rounds, X updated first.  Step sizes are
// 1/(gamma * M) with M the partial-gradient Lipschitz modulus at the current
// iterate, floored at lipschitz_floor.  The trace samples the penalized
// objective at iteration 0, every trace_stride iterations, and at the end.
PalmResult palm_inner(const BinaryMatrix& d, const RealMatrix& x0, const RealMatrix& y0,
                      const CostModel& model, std::size_t iterations, double gamma,
                      double lipschitz_floor = 1e-12, std::size_t trace_stride = 50);

// Minimizes the model's discrete cost over all |T|^2 threshold pairs applied
// to X and Y separately.  Equal-cost ties prefer the larger t_x + t_y, then
// the larger (t_x, t_y) lexicographically.
ThresholdResult threshold_search(const RealMatrix& xk, const RealMatrix& yk,
                                 const BinaryMatrix& d, const CostModel& model,
                                 const std::vector<double>& thresholds);

// Drops columns with at most one item or at most one transaction.
std::pair<BinaryMatrix, BinaryMatrix> prune_trivial(const BinaryMatrix& x,
                                                    const BinaryMatrix& y);

// Rank-increment outer loop: grow by delta_r, optimize, threshold, and stop
// once offered rank minus valuable rank exceeds stop_slack.
Tiling pal_tiling(const BinaryMatrix& d, ModelKind kind, const PalConfig& config);

struct ParsedConfig {
    PalConfig config;
    std::optional<ModelKind> model;
    bool seed_set = false;
};

// key=value lines; keys: delta_r, iterations, gamma, seed, thresholds
// (comma list), model (panpal|primp), stop_slack, trace_stride.  Blank
// lines and lines starting with '#' are skipped.
ParsedConfig parse_pal_config(std::istream& in, const PalConfig& base);

ModelKind parse_model_kind(const std::string& name);
const char* model_kind_name(ModelKind kind);

// Comma-separated threshold list, each value in [0,1].
std::vector<double> parse_threshold_list(const std::string& text);

}  // namespace paltile
