#include "pcgpen/linmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pcgpen/rng.hpp"

namespace pcgpen {

LinearMap::LinearMap(Kind kind, std::size_t out_dim, std::size_t in_dim, double scale,
                     std::vector<double> entries)
    : kind_(kind), out_dim_(out_dim), in_dim_(in_dim), scale_(scale), entries_(std::move(entries)) {
  if (out_dim_ == 0 || in_dim_ == 0) {
    throw std::invalid_argument("LinearMap: dimensions must be positive");
  }
}

LinearMap LinearMap::dense(std::size_t rows, std::size_t cols, std::vector<double> row_major) {
  if (row_major.size() != rows * cols) {
    throw std::invalid_argument("LinearMap::dense: entry count does not match rows*cols");
  }
  return LinearMap(Kind::Dense, rows, cols, 1.0, std::move(row_major));
}

LinearMap LinearMap::identity(std::size_t dim) {
  return LinearMap(Kind::ScaledIdentity, dim, dim, 1.0, {});
}

LinearMap LinearMap::scaled_identity(std::size_t dim, double scale) {
  return LinearMap(Kind::ScaledIdentity, dim, dim, scale, {});
}

LinearMap LinearMap::negated_identity(std::size_t dim) {
  return LinearMap(Kind::NegatedIdentity, dim, dim, -1.0, {});
}

LinearMap LinearMap::zero(std::size_t out_dim, std::size_t in_dim) {
  return LinearMap(Kind::Zero, out_dim, in_dim, 0.0, {});
}

LinearMap LinearMap::diagonal(const std::vector<double>& diag) {
  const std::size_t n = diag.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return dense(n, n, std::move(e));
}

double LinearMap::at(std::size_t row, std::size_t col) const {
  if (row >= out_dim_ || col >= in_dim_) throw std::out_of_range("LinearMap::at");
  switch (kind_) {
    case Kind::Dense:
      return entries_[row * in_dim_ + col];
    case Kind::ScaledIdentity:
    case Kind::NegatedIdentity:
      return row == col ? scale_ : 0.0;
    case Kind::Zero:
      return 0.0;
  }
  return 0.0;
}

void LinearMap::apply_into(ConstSpan x, std::span<double> out) const {
  require_size(x.size(), in_dim_, "LinearMap::apply");
  require_size(out.size(), out_dim_, "LinearMap::apply output");
  switch (kind_) {
    case Kind::Dense:
      for (std::size_t i = 0; i < out_dim_; ++i) {
        const double* row = entries_.data() + i * in_dim_;
        double s = 0.0;
        for (std::size_t j = 0; j < in_dim_; ++j) s += row[j] * x[j];
        out[i] = s;
      }
      break;
    case Kind::ScaledIdentity:
    case Kind::NegatedIdentity:
      for (std::size_t i = 0; i < out_dim_; ++i) out[i] = scale_ * x[i];
      break;
    case Kind::Zero:
      for (double& v : out) v = 0.0;
      break;
  }
}

void LinearMap::adjoint_apply_into(ConstSpan w, std::span<double> out) const {
  require_size(w.size(), out_dim_, "LinearMap::adjoint_apply");
  require_size(out.size(), in_dim_, "LinearMap::adjoint_apply output");
  switch (kind_) {
    case Kind::Dense:
      for (double& v : out) v = 0.0;
      for (std::size_t i = 0; i < out_dim_; ++i) {
        const double* row = entries_.data() + i * in_dim_;
        const double wi = w[i];
        if (wi == 0.0) continue;
        for (std::size_t j = 0; j < in_dim_; ++j) out[j] += row[j] * wi;
      }
      break;
    case Kind::ScaledIdentity:
    case Kind::NegatedIdentity:
      for (std::size_t i = 0; i < in_dim_; ++i) out[i] = scale_ * w[i];
      break;
    case Kind::Zero:
      for (double& v : out) v = 0.0;
      break;
  }
}

Vector LinearMap::apply(ConstSpan x) const {
  Vector out(out_dim_);
  apply_into(x, out);
  return out;
}

Vector LinearMap::adjoint_apply(ConstSpan w) const {
  Vector out(in_dim_);
  adjoint_apply_into(w, out);
  return out;
}

LinearMap LinearMap::transposed() const {
  if (kind_ == Kind::Dense) {
    std::vector<double> t(entries_.size());
    for (std::size_t i = 0; i < out_dim_; ++i)
      for (std::size_t j = 0; j < in_dim_; ++j) t[j * out_dim_ + i] = entries_[i * in_dim_ + j];
    return dense(in_dim_, out_dim_, std::move(t));
  }
  return LinearMap(kind_, in_dim_, out_dim_, scale_, {});
}

PowerIterationResult power_iteration(const LinearMap& map, const PowerIterationOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("power_iteration: tol must be positive");
  PowerIterationResult res;
  switch (map.kind()) {
    case LinearMap::Kind::Zero:
      res.converged = true;
      return res;
    case LinearMap::Kind::ScaledIdentity:
    case LinearMap::Kind::NegatedIdentity:
      res.value = map.scale() * map.scale();
      res.converged = true;
      return res;
    case LinearMap::Kind::Dense:
      break;
  }

  const std::size_t n = map.in_dim();
  CounterRng rng = CounterRng::stream(opts.seed, "power-iteration");
  Vector v(n);
  for (double& e : v) e = 2.0 * rng.uniform() - 1.0;
  double nv = norm2(v);
  if (nv == 0.0) {
    v.assign(n, 1.0);
    nv = norm2(v);
  }
  for (double& e : v) e /= nv;

  Vector av(map.out_dim());
  Vector w(n);
  double prev = -1.0;
  for (int k = 0; k < opts.max_iters; ++k) {
    map.apply_into(v, av);
    const double rayleigh = dot(av, av);
    map.adjoint_apply_into(av, w);
    res.iterations = k + 1;
    if (rayleigh < prev - 1e-12 * std::abs(prev)) res.monotone = false;
    res.value = std::max(res.value, rayleigh);
    const double nw = norm2(w);
    if (nw == 0.0) {
      res.converged = true;
      return res;
    }
    if (prev >= 0.0 && std::abs(rayleigh - prev) <= opts.tol * rayleigh) {
      res.converged = true;
      return res;
    }
    prev = rayleigh;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return res;
}

double lambda_max_sq(const LinearMap& map, double tol, int max_iters, std::uint64_t seed) {
  return power_iteration(map, {tol, max_iters, seed}).value;
}

double lambda_max_sq_upper(const LinearMap& map) {
  return lambda_max_sq(map) * (1.0 + kLambdaInflation);
}

}  // namespace pcgpen
