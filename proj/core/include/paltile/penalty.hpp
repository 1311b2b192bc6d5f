#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "paltile/matrix.hpp"

namespace paltile {

// Tent penalty: Lambda(x) = 1 - |1 - 2x| on [0,1], infinity outside.  Zero
// at 0 and 1, peak of 1 at 1/2, so it pushes entries toward binary values.
inline double lambda_penalty(double x) {
    if (x < 0.0 || x > 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 - std::abs(1.0 - 2.0 * x);
}

// Proximal operator of alpha * Lambda, closed form.  Moves the argument
// 2*alpha away from 1/2 and clamps to [0,1]; alpha = 0 is plain projection.
inline double prox_lambda(double x, double alpha) {
    if (x <= 0.5) return std::max(0.0, x - 2.0 * alpha);
    return std::min(1.0, x + 2.0 * alpha);
}

// Entrywise sum of Lambda over a factor matrix.
double phi(const RealMatrix& m);

// Entrywise prox of alpha * Lambda, in place.
void prox_phi_inplace(RealMatrix& m, double alpha);

}  // namespace paltile
