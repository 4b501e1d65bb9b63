#include "pcgpen/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pcgpen {

CsDualContext::CsDualContext(LinearMap a, Vector b_, double sigma_, double p_)
    : A(std::move(a)), b(std::move(b_)), sigma(sigma_), p(p_), q(p_ / (p_ - 1.0)) {
  require_size(b.size(), A.out_dim(), "CsDualContext: dim(b)");
  if (!(sigma > 0.0)) throw std::invalid_argument("CsDualContext: sigma must be positive");
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("CsDualContext: p must lie in (1, 2]");
}

double dual_value(const CsDualContext& ctx, ConstSpan lambda) {
  require_size(lambda.size(), ctx.b.size(), "dual_value");
  return -dot(ctx.b, lambda) - ctx.sigma * norm_p(lambda, ctx.q);
}

Vector scale_to_dual_feasible(Vector lambda, double adj_inf_norm) {
  if (adj_inf_norm > 1.0) {
    for (double& v : lambda) v /= adj_inf_norm;
  }
  return lambda;
}

Vector feasible_dual_point(const CsDualContext& ctx, ConstSpan x, ConstSpan y, double beta) {
  require_size(y.size(), ctx.b.size(), "feasible_dual_point: y");
  Vector lambda = ctx.A.apply(x);
  for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = beta * (lambda[i] - ctx.b[i] - y[i]);
  const double adj = norm_inf(ctx.A.adjoint_apply(lambda));
  return scale_to_dual_feasible(std::move(lambda), adj);
}

double gap_r_from_values(double x_l1, double dual) {
  // dual = -(<b,l> + sigma ||l||_q)
  const double num = std::abs(x_l1 - dual);
  const double den = std::max({x_l1, std::abs(dual), 1.0});
  return num / den;
}

double gap_r(const CsDualContext& ctx, ConstSpan x_next, ConstSpan lambda) {
  return gap_r_from_values(norm1(x_next), dual_value(ctx, lambda));
}

}  // namespace pcgpen
