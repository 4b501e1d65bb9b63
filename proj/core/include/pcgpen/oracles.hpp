#pragma once

#include <cstddef>
#include <string>

#include "pcgpen/csgen.hpp"
#include "pcgpen/vector_ops.hpp"

// Exhaustive-search reference oracles. They share no code path with the
// closed forms they check and are limited to three dimensions.
namespace pcgpen::oracles {

// Per-coordinate grid minimization of (1/2gamma)(x - u_i)^2 + |x| over
// [-R, R] with spacing `step`; gamma == 0 minimizes |x - u_i| instead.
Vector prox_l1_box_grid(ConstSpan u, double gamma, double radius, double step = 1e-5);

// Minimizes <v, u> over the boundary of the l_p ball of radius sigma by an
// angular grid with spacing `grid_step`, refined around the incumbent until
// the spacing drops below 1e-9. dim(v) <= 3.
Vector lo_bruteforce(ConstSpan v, double sigma, double p, double grid_step = 1e-2);

struct ReferenceSolution {
  Vector x_star;
  double val = 0.0;       // ||x_star||_1, x_star feasible
  Vector lambda_bar;      // dual-feasible multiplier estimate
  double dual_val = 0.0;  // dual objective at lambda_bar
  double tolerance = 0.0; // val - dual_val
  double final_step = 0.0;
  std::string method;
};

struct TinySolveOptions {
  double grid_step = 1e-3;  // angular spacing of the first grid, radians
  int refine_rounds = 9;    // each shrinks the spacing by 10
  int window = 5;           // refinement half-width in old grid steps
};

// Reference optimum of min ||x||_1 s.t. ||Ax - b||_p <= sigma for n <= 3, m <= 2.
//
// Primal: the constraint is active at a nonzero solution, so x = A^+(b + r) + N z
// with ||r||_p = sigma and N a null-space basis. For fixed r the minimum over z
// of the piecewise-linear ||x||_1 sits at a vertex where dim(z) coordinates of x
// vanish; these are enumerated exactly. r sweeps an angular grid on the sphere.
// Dual: along each ray l = s d the objective is linear in s, so the maximum is
// at s = 0 or on the boundary s = 1/||A^T d||_inf; d sweeps an angular grid.
// Both grids are refined around the incumbent; val - dual_val brackets the
// optimum by weak duality.
ReferenceSolution reference_solve_tiny(const CsInstance& inst, const TinySolveOptions& opts = {});

// E|X|^r under the density proportional to exp(-|x|^p), by composite Simpson
// quadrature on [0, X] with exp(-X^p) below 1e-30.
double ggd_abs_moment_quadrature(double p, double r, int intervals = 200000);

}  // namespace pcgpen::oracles
