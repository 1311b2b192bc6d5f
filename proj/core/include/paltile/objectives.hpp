#pragma once

#include <cstdint>
#include <vector>

#include "paltile/matrix.hpp"

namespace paltile {

enum class ModelKind { panpal, primp };

// Cost model shared by the discrete and relaxed objectives.  PANPAL weighs
// the residual with mu = 1 and carries no code table; PRIMP uses
// mu = 1 + ln(n) and the per-item standard code lengths of D.
struct CostModel {
    ModelKind kind = ModelKind::panpal;
    double mu = 1.0;
    std::vector<double> codes;

    static CostModel panpal();
    static CostModel primp(const BinaryMatrix& d);
};

struct CtBreakdown {
    double data_bits = 0.0;
    double model_bits = 0.0;
    double total = 0.0;
};

// Standard code lengths c_i = -ln(|D_i| / |D|).  Items without support get
// c_i = 0; they never occur in the noise matrix of any factorization of D,
// so the sentinel stays unused when encoding D itself.
std::vector<double> standard_codes(const BinaryMatrix& d);

// Number of cells where D and the Boolean product disagree.
std::uint64_t f_rss(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d);

// f_rss plus the number of ones in both factors.
std::uint64_t f_l1(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d);

// Code-table description length of (X, Y, N) with N = D - theta(YX^T),
// split into data and model parts.  Natural logarithms.
CtBreakdown f_ct(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d);
CtBreakdown f_ct(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d,
                 const std::vector<double>& codes);

// The discrete cost minimized by each model: f_l1 for PANPAL, total f_ct
// for PRIMP.
double discrete_cost(ModelKind kind, const BinaryMatrix& x, const BinaryMatrix& y,
                     const BinaryMatrix& d);
double discrete_cost(ModelKind kind, const BinaryMatrix& x, const BinaryMatrix& y,
                     const BinaryMatrix& d, const std::vector<double>& codes);

// Smooth relaxed objective F(X, Y) over real factors in [0,1].
double relaxed_objective(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                         const BinaryMatrix& d);

// F plus the tent penalty of both factors; the quantity PALM drives downhill.
double penalized_objective(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                           const BinaryMatrix& d);

RealMatrix grad_x(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                  const BinaryMatrix& d);
RealMatrix grad_y(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                  const BinaryMatrix& d);

// Lipschitz moduli of the partial gradients: Frobenius norm of the Gram
// matrix, scaled by mu, plus m for the PRIMP Y block.
double lipschitz_x(const CostModel& model, const RealMatrix& y);
double lipschitz_y(const CostModel& model, const RealMatrix& x, std::size_t m);

// Upper bound on f_ct(...).data_bits for binary factors, built from the
// elementary-algebra residual ||D - YX^T||^2 with mu = 1 + ln(n).
double ct_data_bound(const BinaryMatrix& x, const BinaryMatrix& y, const BinaryMatrix& d);

}  // namespace paltile
