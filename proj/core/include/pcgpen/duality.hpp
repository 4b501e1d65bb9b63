#pragma once

#include "pcgpen/linmap.hpp"
#include "pcgpen/vector_ops.hpp"

namespace pcgpen {

// Dual of  min ||x||_1  s.t. ||Ax - b||_p <= sigma:
//   max -<b, l> - sigma ||l||_q  s.t. ||A^T l||_inf <= 1,  q = p/(p-1).
struct CsDualContext {
  CsDualContext(LinearMap a, Vector b, double sigma, double p);

  LinearMap A;
  Vector b;
  double sigma;
  double p;
  double q;
};

// -<b, l> - sigma ||l||_q, regardless of feasibility.
double dual_value(const CsDualContext& ctx, ConstSpan lambda);

// l / ||A^T l||_inf when that norm exceeds 1, l otherwise; also l when the
// norm is 0. `adj_inf_norm` is ||A^T l||_inf.
Vector scale_to_dual_feasible(Vector lambda, double adj_inf_norm);

// beta (Ax - b - y), rescaled into {||A^T l||_inf <= 1}.
Vector feasible_dual_point(const CsDualContext& ctx, ConstSpan x, ConstSpan y, double beta);

/// |‖x‖₁ + <b,l> + sigma‖l‖_q| / max{‖x‖₁, |<b,l> + sigma‖l‖_q|, 1}
double gap_r(const CsDualContext& ctx, ConstSpan x_next, ConstSpan lambda);

// Same, from precomputed ||x||_1 and the dual value.
double gap_r_from_values(double x_l1, double dual);

}  // namespace pcgpen
