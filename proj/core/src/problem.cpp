#include "pcgpen/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pcgpen {

ProblemSpec::ProblemSpec(SmoothBlock f1_, ProxBlock f2_, SmoothBlock g1_, LOBlock g2_,
                         LinearMap a, LinearMap b, Vector c_)
    : f1(std::move(f1_)),
      f2(std::move(f2_)),
      g1(std::move(g1_)),
      g2(std::move(g2_)),
      A(std::move(a)),
      B(std::move(b)),
      c(std::move(c_)) {
  require_size(B.out_dim(), A.out_dim(), "ProblemSpec: out_dim(B) vs out_dim(A)");
  require_size(c.size(), A.out_dim(), "ProblemSpec: dim(c)");
  require_size(f1.dim, A.in_dim(), "ProblemSpec: f1 dim");
  require_size(f2.dim, A.in_dim(), "ProblemSpec: f2 dim");
  require_size(g1.dim, B.in_dim(), "ProblemSpec: g1 dim");
  require_size(g2.dim, B.in_dim(), "ProblemSpec: g2 dim");
  if (!f1.eval || !f1.grad || !f2.eval || !f2.prox || !f2.contains || !g1.eval || !g1.grad ||
      !g2.eval || !g2.lo || !g2.contains) {
    throw std::invalid_argument("ProblemSpec: every block needs all of its oracles");
  }
  D_f = f2.domain_diameter;
  D_g = g2.domain_diameter;
  if (!std::isfinite(D_f) || !std::isfinite(D_g)) {
    throw std::invalid_argument("ProblemSpec: domains of f and g must be bounded");
  }
  lambda_A = A.kind() == LinearMap::Kind::Zero ? 0.0 : lambda_max_sq_upper(A);
  lambda_B = B.kind() == LinearMap::Kind::Zero ? 0.0 : lambda_max_sq_upper(B);
  D2_upper = std::sqrt(lambda_A * lambda_B) * f2.domain_radius * g2.domain_radius;
}

double ProblemSpec::f(ConstSpan x) const { return f1.eval(x) + f2.eval(x); }

double ProblemSpec::g(ConstSpan y) const { return g1.eval(y) + g2.eval(y); }

Vector ProblemSpec::residual(ConstSpan x, ConstSpan y) const {
  Vector r = A.apply(x);
  const Vector by = B.apply(y);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += by[i] - c[i];
  return r;
}

double ProblemSpec::penalty_value(ConstSpan x, ConstSpan y, double beta) const {
  const Vector r = residual(x, y);
  return objective(x, y) + 0.5 * beta * dot(r, r);
}

}  // namespace pcgpen
