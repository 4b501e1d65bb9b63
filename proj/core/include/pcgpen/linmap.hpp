#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcgpen/vector_ops.hpp"

namespace pcgpen {

/// Linear operator between real Euclidean spaces together with its adjoint.
///
/// Dense maps store entries row-major (out_dim x in_dim). Identity-like maps
/// store only a scale. Instances are immutable once built.
class LinearMap {
 public:
  enum class Kind { Dense, ScaledIdentity, NegatedIdentity, Zero };

  static LinearMap dense(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  static LinearMap identity(std::size_t dim);
  static LinearMap scaled_identity(std::size_t dim, double scale);
  static LinearMap negated_identity(std::size_t dim);
  static LinearMap zero(std::size_t out_dim, std::size_t in_dim);
  // Dense diagonal map; convenience for tests and examples.
  static LinearMap diagonal(const std::vector<double>& diag);

  Kind kind() const { return kind_; }
  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  double scale() const { return scale_; }
  const std::vector<double>& entries() const { return entries_; }
  double at(std::size_t row, std::size_t col) const;

  Vector apply(ConstSpan x) const;
  Vector adjoint_apply(ConstSpan w) const;
  // out = map(x); `out` must already have out_dim entries.
  void apply_into(ConstSpan x, std::span<double> out) const;
  void adjoint_apply_into(ConstSpan w, std::span<double> out) const;

  // The adjoint as a standalone map (transpose for dense kinds).
  LinearMap transposed() const;

 private:
  LinearMap(Kind kind, std::size_t out_dim, std::size_t in_dim, double scale,
            std::vector<double> entries);

  Kind kind_;
  std::size_t out_dim_;
  std::size_t in_dim_;
  double scale_;
  std::vector<double> entries_;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iters = 5000;
  std::uint64_t seed = 0;
};

struct PowerIterationResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  // Whether every Rayleigh quotient was >= its predecessor (up to rounding).
  bool monotone = true;
};

// Largest eigenvalue of map^T map by power iteration from a seeded start.
PowerIterationResult power_iteration(const LinearMap& map, const PowerIterationOptions& opts = {});

// Estimate of lambda_max(map^T map); 0 for the zero map.
double lambda_max_sq(const LinearMap& map, double tol = 1e-10, int max_iters = 5000,
                     std::uint64_t seed = 0);

// Relative inflation applied before an eigenvalue estimate is used as a
// curvature majorizer.
inline constexpr double kLambdaInflation = 1e-6;

// lambda_max_sq(map) * (1 + kLambdaInflation).
double lambda_max_sq_upper(const LinearMap& map);

}  // namespace pcgpen
