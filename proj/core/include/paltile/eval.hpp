#pragma once

#include <cstddef>
#include <vector>

#include "paltile/matrix.hpp"

namespace paltile {

struct MatchResult {
    std::vector<std::size_t> sigma;  // planted tile s -> computed tile sigma[s]
    RealMatrix per_pair_f;           // padded rank x padded rank
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

// Per-pair F between planted tiles (rows) and computed tiles (columns),
// both zero-padded to the larger rank.  Precision of pair (s,t) is the
// intersection area over the computed tile's area, recall over the planted
// tile's area; 0/0 counts as 0.
RealMatrix pairwise_f(const BinaryMatrix& x_star, const BinaryMatrix& y_star,
                      const BinaryMatrix& x, const BinaryMatrix& y);

// Assignment maximizing the summed F over a square score matrix.
std::vector<std::size_t> match_tiles(const RealMatrix& per_pair_f);

// Micro-averaged precision/recall/F under the optimal tile matching.
MatchResult micro_f(const BinaryMatrix& x_star, const BinaryMatrix& y_star,
                    const BinaryMatrix& x, const BinaryMatrix& y);

enum class CostKind { rss, l1, ct };

// Cost of (X, Y) on D as a percentage of the empty model's cost.
double relative_cost(CostKind kind, const BinaryMatrix& x, const BinaryMatrix& y,
                     const BinaryMatrix& d);

}  // namespace paltile
