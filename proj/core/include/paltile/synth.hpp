#pragma once

#include <cstdint>

#include "paltile/matrix.hpp"

namespace paltile {

struct GenSpec {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t r_star = 0;
    double q = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    std::uint64_t seed = 0;
};

struct PlantedInstance {
    BinaryMatrix d;       // m x n
    BinaryMatrix x_star;  // n x r_star
    BinaryMatrix y_star;  // m x r_star
    SignedMatrix noise;   // m x n, D = theta(Y* X*^T) + N
};

// Planted tiling with identity-block prefixes (k = ceil(n/100) items and
// l = ceil(m/100) transactions per tile) and bounded-weight free parts,
// then independent per-cell noise: 0 -> 1 with p_plus, 1 -> 0 with p_minus.
// The free-column weight is drawn uniformly from {ceil(cap/10), ..., cap}
// with cap = floor(q * free_rows), then a uniform subset of that size.
PlantedInstance generate_data(const GenSpec& spec);

// Percentage of data cells covered by the planted tiles.
double planted_density(const PlantedInstance& inst);

// Percentage of multiply-covered cells relative to the covered region.
double planted_overlap(const PlantedInstance& inst);

}  // namespace paltile
