#include "pcgpen/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

#include "pcgpen/rng.hpp"

namespace pcgpen {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Vector prox_l1_box(ConstSpan u, double gamma, double radius) {
  if (gamma < 0.0) throw std::invalid_argument("prox_l1_box: gamma must be nonnegative");
  if (!(radius > 0.0)) throw std::invalid_argument("prox_l1_box: radius must be positive");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double mag = std::max(std::abs(u[i]) - gamma, 0.0);
    const double soft = std::copysign(mag, u[i]);
    out[i] = std::clamp(mag == 0.0 ? 0.0 : soft, -radius, radius);
  }
  return out;
}

Vector lo_lp_ball(ConstSpan v, double sigma, double p) {
  if (!(sigma > 0.0)) throw std::invalid_argument("lo_lp_ball: sigma must be positive");
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("lo_lp_ball: p must lie in (1, 2]");
  Vector out(v.size(), 0.0);
  const double scale = norm_inf(v);
  if (scale == 0.0) return out;
  const double q = p / (p - 1.0);
  // Work with v / ||v||_inf: the result is invariant to positive scaling.
  double sum_q = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) / scale;
    out[i] = pow_abs(a, q - 1.0);
    sum_q += pow_abs(a, q);
  }
  // ||w||_q^(q/p) = (sum |w|^q)^(1/p)
  const double denom = std::exp(std::log(sum_q) / p);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] > 0.0 ? -sigma * out[i] / denom : (v[i] < 0.0 ? sigma * out[i] / denom : 0.0);
  }
  return out;
}

double lp_ball_l2_radius(std::size_t dim, double sigma, double p) {
  const double e = std::max(0.0, 0.5 - 1.0 / p);
  return sigma * std::pow(static_cast<double>(dim), e);
}

ProxBlock l1_box_prox_block(std::size_t dim, double weight, double radius) {
  if (weight < 0.0) throw std::invalid_argument("l1_box_prox_block: weight must be nonnegative");
  if (!(radius > 0.0)) throw std::invalid_argument("l1_box_prox_block: radius must be positive");
  ProxBlock b;
  b.dim = dim;
  const double tol = radius * (1.0 + kMembershipTol);
  b.contains = [tol, dim](ConstSpan x) { return x.size() == dim && norm_inf(x) <= tol; };
  b.eval = [weight, tol](ConstSpan x) { return norm_inf(x) <= tol ? weight * norm1(x) : kInf; };
  b.prox = [weight, radius, dim](ConstSpan u, double gamma) {
    require_size(u.size(), dim, "l1_box prox");
    return prox_l1_box(u, weight * gamma, radius);
  };
  b.domain_radius = radius * std::sqrt(static_cast<double>(dim));
  b.domain_diameter = 2.0 * b.domain_radius;
  return b;
}

ProxBlock point_prox_block(Vector point) {
  ProxBlock b;
  b.dim = point.size();
  auto pt = std::make_shared<const Vector>(std::move(point));
  b.contains = [pt](ConstSpan x) {
    return x.size() == pt->size() && distance2(x, *pt) <= kMembershipTol * (1.0 + norm2(*pt));
  };
  b.eval = [c = b.contains](ConstSpan x) { return c(x) ? 0.0 : kInf; };
  b.prox = [pt](ConstSpan u, double) {
    require_size(u.size(), pt->size(), "point prox");
    return *pt;
  };
  b.domain_radius = norm2(*pt);
  b.domain_diameter = 0.0;
  return b;
}

LOBlock lp_ball_lo_block(std::size_t dim, double sigma, double p) {
  if (!(sigma > 0.0)) throw std::invalid_argument("lp_ball_lo_block: sigma must be positive");
  LOBlock b;
  b.dim = dim;
  const double tol = sigma * (1.0 + kMembershipTol);
  b.contains = [tol, p, dim](ConstSpan y) { return y.size() == dim && norm_p(y, p) <= tol; };
  b.eval = [c = b.contains](ConstSpan y) { return c(y) ? 0.0 : kInf; };
  b.lo = [sigma, p, dim](ConstSpan v) {
    require_size(v.size(), dim, "lp_ball lo");
    return lo_lp_ball(v, sigma, p);
  };
  b.domain_radius = lp_ball_l2_radius(dim, sigma, p);
  b.domain_diameter = 2.0 * b.domain_radius;
  return b;
}

LOBlock point_lo_block(Vector point) {
  LOBlock b;
  b.dim = point.size();
  auto pt = std::make_shared<const Vector>(std::move(point));
  b.contains = [pt](ConstSpan y) {
    return y.size() == pt->size() && distance2(y, *pt) <= kMembershipTol * (1.0 + norm2(*pt));
  };
  b.eval = [c = b.contains](ConstSpan y) { return c(y) ? 0.0 : kInf; };
  b.lo = [pt](ConstSpan v) {
    require_size(v.size(), pt->size(), "point lo");
    return *pt;
  };
  b.domain_radius = norm2(*pt);
  b.domain_diameter = 0.0;
  return b;
}

double estimate_holder_constant(const std::function<Vector(ConstSpan)>& grad, double mu,
                                std::size_t dim, double box_radius, int samples,
                                std::uint64_t seed) {
  CounterRng rng = CounterRng::stream(seed, "holder-estimate");
  auto draw = [&](Vector& x) {
    for (double& e : x) e = box_radius * (2.0 * rng.uniform() - 1.0);
  };
  Vector x(dim);
  Vector y(dim);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    draw(x);
    switch (s % 3) {
      case 0:  // independent pair
        draw(y);
        break;
      case 1: {  // reflected pair, shrunk towards the origin
        const double shrink = rng.uniform();
        for (std::size_t i = 0; i < dim; ++i) {
          x[i] *= shrink;
          y[i] = -x[i];
        }
        break;
      }
      default: {  // nearby pair
        const double h = box_radius * std::exp(-12.0 * rng.uniform());
        for (std::size_t i = 0; i < dim; ++i)
          y[i] = std::clamp(x[i] + h * (2.0 * rng.uniform() - 1.0), -box_radius, box_radius);
        break;
      }
    }
    const double d = distance2(x, y);
    if (d == 0.0) continue;
    const Vector gx = grad(x);
    const Vector gy = grad(y);
    best = std::max(best, distance2(gx, gy) / std::pow(d, mu));
  }
  return best;
}

SmoothBlock power_smooth_block(double mu, std::size_t dim, double box_radius,
                               std::uint64_t seed) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("power_smooth_block: mu must lie in (0, 1]");
  SmoothBlock b;
  b.dim = dim;
  b.holder_exponent = mu;
  b.eval = [mu, dim](ConstSpan x) {
    require_size(x.size(), dim, "power block eval");
    double s = 0.0;
    for (double e : x) s += pow_abs(e, 1.0 + mu);
    return s / (1.0 + mu);
  };
  b.grad = [mu, dim](ConstSpan x) {
    require_size(x.size(), dim, "power block grad");
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::copysign(pow_abs(x[i], mu), x[i]);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] == 0.0) g[i] = 0.0;
    return g;
  };
  b.holder_constant = 1.5 * estimate_holder_constant(b.grad, mu, dim, box_radius, 30000, seed);
  return b;
}

SmoothBlock quadratic_smooth_block(const LinearMap& q, Vector r) {
  require_size(r.size(), q.out_dim(), "quadratic_smooth_block");
  SmoothBlock b;
  b.dim = q.in_dim();
  b.holder_exponent = 1.0;
  b.holder_constant = q.kind() == LinearMap::Kind::Zero ? 0.0 : lambda_max_sq_upper(q);
  auto map = std::make_shared<const LinearMap>(q);
  auto rhs = std::make_shared<const Vector>(std::move(r));
  b.eval = [map, rhs](ConstSpan x) {
    Vector res = map->apply(x);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= (*rhs)[i];
    return 0.5 * dot(res, res);
  };
  b.grad = [map, rhs](ConstSpan x) {
    Vector res = map->apply(x);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= (*rhs)[i];
    return map->adjoint_apply(res);
  };
  return b;
}

SmoothBlock zero_smooth_block(std::size_t dim) {
  SmoothBlock b;
  b.dim = dim;
  b.holder_exponent = 1.0;
  b.holder_constant = 0.0;
  b.eval = [dim](ConstSpan x) {
    require_size(x.size(), dim, "zero block eval");
    return 0.0;
  };
  b.grad = [dim](ConstSpan x) {
    require_size(x.size(), dim, "zero block grad");
    return Vector(dim, 0.0);
  };
  return b;
}

}  // namespace pcgpen
