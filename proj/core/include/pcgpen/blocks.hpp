#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "pcgpen/linmap.hpp"
#include "pcgpen/vector_ops.hpp"

namespace pcgpen {

// Smooth convex term with a Hölder-continuous gradient:
//   ||grad(x) - grad(y)|| <= holder_constant * ||x - y||^holder_exponent.
struct SmoothBlock {
  std::size_t dim = 0;
  std::function<double(ConstSpan)> eval;
  std::function<Vector(ConstSpan)> grad;
  double holder_exponent = 1.0;
  double holder_constant = 0.0;
};

// Closed convex term whose proximal map argmin_z (1/2gamma)||z-u||^2 + h(z) is
// available in closed form. gamma == 0 means projection onto the domain.
struct ProxBlock {
  std::size_t dim = 0;
  std::function<double(ConstSpan)> eval;  // +inf outside the domain
  std::function<Vector(ConstSpan, double)> prox;
  std::function<bool(ConstSpan)> contains;
  double domain_diameter = 0.0;
  double domain_radius = 0.0;  // sup of the l2 norm over the domain
};

// Closed convex term with a linear minimization oracle argmin_z <v,z> + h(z).
struct LOBlock {
  std::size_t dim = 0;
  std::function<double(ConstSpan)> eval;  // +inf outside the domain
  std::function<Vector(ConstSpan)> lo;
  std::function<bool(ConstSpan)> contains;
  double domain_diameter = 0.0;
  double domain_radius = 0.0;
};

// Relative slack used by domain membership tests.
inline constexpr double kMembershipTol = 1e-9;

/// Prox of gamma*||.||_1 plus the indicator of the l_inf ball of radius R:
/// clip(soft_threshold(u, gamma), [-R, R]) componentwise.
Vector prox_l1_box(ConstSpan u, double gamma, double radius);

/// Minimizer of <v,u> over the l_p ball of radius sigma, p in (1,2]:
///   u = -sigma * sign(v) |v|^(q-1) / ||v||_q^(q/p),  q = p/(p-1),
/// and u = 0 when v = 0. Depends only on the direction of v.
Vector lo_lp_ball(ConstSpan v, double sigma, double p);

// Upper bound on the l2 radius of the l_p ball of radius sigma in `dim`
// coordinates: sigma * dim^max(0, 1/2 - 1/p).
double lp_ball_l2_radius(std::size_t dim, double sigma, double p);

// weight*||x||_1 + indicator{||x||_inf <= radius}; weight 0 gives the box.
ProxBlock l1_box_prox_block(std::size_t dim, double weight, double radius);
// Indicator of {point}; prox always returns the point.
ProxBlock point_prox_block(Vector point);

LOBlock lp_ball_lo_block(std::size_t dim, double sigma, double p);
LOBlock point_lo_block(Vector point);

// f(x) = sum_i |x_i|^(1+mu) / (1+mu), grad = sign(x)|x|^mu. The Hölder
// constant is estimated by sampling pairs in the box [-box_radius, box_radius]^dim
// and inflated by 1.5.
SmoothBlock power_smooth_block(double mu, std::size_t dim, double box_radius,
                               std::uint64_t seed = 0);

// Sample-based estimate of sup ||grad(x)-grad(y)|| / ||x-y||^mu over a box,
// before inflation.
double estimate_holder_constant(const std::function<Vector(ConstSpan)>& grad, double mu,
                                std::size_t dim, double box_radius, int samples,
                                std::uint64_t seed);

// f(x) = 0.5 ||Qx - r||^2 with Lipschitz constant lambda_max(Q^T Q).
SmoothBlock quadratic_smooth_block(const LinearMap& q, Vector r);

SmoothBlock zero_smooth_block(std::size_t dim);

}  // namespace pcgpen
