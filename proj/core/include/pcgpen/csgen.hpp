#pragma once

#include <cstddef>
#include <cstdint>

#include "pcgpen/duality.hpp"
#include "pcgpen/linmap.hpp"
#include "pcgpen/problem.hpp"
#include "pcgpen/rng.hpp"

namespace pcgpen {

// Compressed-sensing instance  min ||x||_1  s.t. ||Ax - b||_p <= sigma.
struct CsInstance {
  LinearMap A;  // m x n, unit l2 columns
  Vector b;
  double sigma = 0.0;
  double p = 1.5;
  Vector x_orig;  // k-sparse signal
  std::size_t k = 0;
  std::uint64_t seed = 0;            // seed the data was drawn with
  std::uint64_t requested_seed = 0;  // seed asked for; differs after redraws

  std::size_t m() const { return A.out_dim(); }
  std::size_t n() const { return A.in_dim(); }
};

inline constexpr double kNoiseScale = 0.01;
inline constexpr double kSigmaFactor = 1.1;

// i.i.d. draws with density proportional to exp(-|x|^p): S * G^(1/p) with
// S a fair sign and G ~ Gamma(1/p, 1). Moment signature E|X|^p = 1/p.
Vector sample_ggd(double p, std::size_t count, std::uint64_t seed);
Vector sample_ggd(double p, std::size_t count, CounterRng& rng);

/// Gaussian A with normalized columns, k-sparse Gaussian x_orig on a uniform
/// support, b = A x_orig + 0.01 eps with eps ~ GGD(p), sigma = 1.1 ||A x_orig - b||_p.
/// Degenerate draws (sigma == 0 or sigma >= ||b||_p) are redrawn with seed + 1.
CsInstance generate_instance(std::size_t m, std::size_t n, std::size_t k, double p,
                             std::uint64_t seed);

// Least-norm solution of Ax = b: x = A^T z with (A A^T) z = b solved by
// conjugate gradients to relative residual `tol`. Throws std::runtime_error
// when CG stagnates (rank-deficient A).
Vector min_norm_solution(const LinearMap& A, ConstSpan b, double tol = 1e-12);

// The instance recast as  min ||x||_1 + I{||x||_inf <= ||x_hat||_1 + 1} + I{||y||_p <= sigma}
// s.t. Ax - y = b.
struct CsProblem {
  CsInstance instance;
  Vector x_hat;
  double box_radius;
  ProblemSpec spec;
  CsDualContext dual;
};

CsProblem reformulate(const CsInstance& inst);

}  // namespace pcgpen
