#include "paltile/penalty.hpp"

namespace paltile {

double phi(const RealMatrix& m) {
    double total = 0.0;
    for (double v : m.data()) total += lambda_penalty(v);
    return total;
}

void prox_phi_inplace(RealMatrix& m, double alpha) {
    for (double& v : m.mutable_data()) v = prox_lambda(v, alpha);
}

}  // namespace paltile
