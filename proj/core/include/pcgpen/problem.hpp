#pragma once

#include "pcgpen/blocks.hpp"
#include "pcgpen/linmap.hpp"
#include "pcgpen/vector_ops.hpp"

namespace pcgpen {

/// min f1(x) + f2(x) + g1(y) + g2(y)  s.t.  Ax + By = c,
/// with the derived quantities the solver and the complexity bounds need.
struct ProblemSpec {
  ProblemSpec(SmoothBlock f1, ProxBlock f2, SmoothBlock g1, LOBlock g2, LinearMap a, LinearMap b,
              Vector c);

  SmoothBlock f1;
  ProxBlock f2;
  SmoothBlock g1;
  LOBlock g2;
  LinearMap A;
  LinearMap B;
  Vector c;

  // Upper estimates of lambda_max(A^T A) and lambda_max(B^T B).
  double lambda_A = 0.0;
  double lambda_B = 0.0;
  // Domain diameters of f and g.
  double D_f = 0.0;
  double D_g = 0.0;
  // Upper bound on sup |<Ax, By>| over dom f x dom g.
  double D2_upper = 0.0;

  double f(ConstSpan x) const;
  double g(ConstSpan y) const;
  double objective(ConstSpan x, ConstSpan y) const { return f(x) + g(y); }
  // Ax + By - c
  Vector residual(ConstSpan x, ConstSpan y) const;
  // f(x) + g(y) + (beta/2)||Ax + By - c||^2
  double penalty_value(ConstSpan x, ConstSpan y, double beta) const;

  std::size_t x_dim() const { return A.in_dim(); }
  std::size_t y_dim() const { return B.in_dim(); }
};

}  // namespace pcgpen
