#pragma once

#include <Eigen/Core>

#include "paltile/matrix.hpp"
#include "paltile/objectives.hpp"

namespace paltile::detail {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMap = Eigen::Map<const RowMat>;
using MMap = Eigen::Map<RowMat>;

inline CMap emap(const RealMatrix& m) {
    return CMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                static_cast<Eigen::Index>(m.cols()));
}

inline MMap emap(RealMatrix& m) {
    return MMap(m.mutable_data().data(), static_cast<Eigen::Index>(m.rows()),
                static_cast<Eigen::Index>(m.cols()));
}

// r_out = Y X^T - D over real factors; r_out must be preallocated m x n.
void residual_into(const RealMatrix& x, const RealMatrix& y, const RealMatrix& d_real,
                   RealMatrix& r_out);

// Gradients of the smooth objective into preallocated outputs; r_buf is a
// shared m x n scratch for the residual.  These are the single source of
// truth: the public grad_x/grad_y wrappers and the PALM loop both call them.
void grad_x_into(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                 const RealMatrix& d_real, RealMatrix& r_buf, RealMatrix& out);
void grad_y_into(const CostModel& model, const RealMatrix& x, const RealMatrix& y,
                 const RealMatrix& d_real, RealMatrix& r_buf, RealMatrix& out);

double relaxed_objective_real(const CostModel& model, const RealMatrix& x,
                              const RealMatrix& y, const RealMatrix& d_real);

// Frobenius norm of A^T A.
double gram_frobenius(const RealMatrix& a);

void check_factor_dims(const RealMatrix& x, const RealMatrix& y, std::size_t d_rows,
                       std::size_t d_cols);
void check_factor_dims(const BinaryMatrix& x, const BinaryMatrix& y, std::size_t d_rows,
                       std::size_t d_cols);

}  // namespace paltile::detail
