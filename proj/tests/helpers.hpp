#pragma once

#include <cstddef>

#include "paltile/matrix.hpp"
#include "paltile/rng.hpp"

namespace paltile::testing {

inline BinaryMatrix random_binary(Rng& rng, std::size_t rows, std::size_t cols,
                                  double density = 0.5) {
    BinaryMatrix out(rows, cols);
    auto& d = out.mutable_data();
    for (auto& v : d) v = rng.uniform01() < density ? 1 : 0;
    return out;
}

// Random binary matrix guaranteed to contain at least one 1.
inline BinaryMatrix random_binary_nonempty(Rng& rng, std::size_t rows, std::size_t cols,
                                           double density = 0.5) {
    BinaryMatrix out = random_binary(rng, rows, cols, density);
    if (out.ones() == 0) out.set(rng.below(rows), rng.below(cols), true);
    return out;
}

inline RealMatrix random_real(Rng& rng, std::size_t rows, std::size_t cols) {
    RealMatrix out(rows, cols);
    for (auto& v : out.mutable_data()) v = rng.uniform01();
    return out;
}

}  // namespace paltile::testing
