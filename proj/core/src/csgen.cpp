#include "pcgpen/csgen.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pcgpen {

Vector sample_ggd(double p, std::size_t count, CounterRng& rng) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("sample_ggd: p must lie in (1, 2]");
  Vector out(count);
  const double shape = 1.0 / p;
  for (double& v : out) {
    const double sign = (rng.next_u64() >> 63) != 0 ? -1.0 : 1.0;
    const double g = rng.gamma(shape);
    v = sign * std::exp(std::log(g) / p);
  }
  return out;
}

Vector sample_ggd(double p, std::size_t count, std::uint64_t seed) {
  CounterRng rng = CounterRng::stream(seed, "ggd");
  return sample_ggd(p, count, rng);
}

namespace {

struct Draw {
  LinearMap A;
  Vector x_orig;
  Vector b;
  double sigma;
};

Draw draw_instance(std::size_t m, std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  CounterRng mat = CounterRng::stream(seed, "matrix");
  std::vector<double> a(m * n);
  for (double& v : a) v = mat.normal();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a[i * n + j] * a[i * n + j];
    const double nrm = std::sqrt(s);
    if (nrm == 0.0) throw std::runtime_error("zero column");
    for (std::size_t i = 0; i < m; ++i) a[i * n + j] /= nrm;
  }
  LinearMap A = LinearMap::dense(m, n, std::move(a));

  // Partial Fisher-Yates for the support.
  CounterRng sup = CounterRng::stream(seed, "support");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(sup.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  CounterRng sig = CounterRng::stream(seed, "signal");
  Vector x(n, 0.0);
  for (std::size_t i = 0; i < k; ++i) x[idx[i]] = sig.normal();

  CounterRng noise = CounterRng::stream(seed, "noise");
  const Vector eps = sample_ggd(p, m, noise);
  const Vector ax = A.apply(x);
  Vector b(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = ax[i] + kNoiseScale * eps[i];
  const double sigma = kSigmaFactor * norm_p(subtract(ax, b), p);
  return Draw{std::move(A), std::move(x), std::move(b), sigma};
}

}  // namespace

CsInstance generate_instance(std::size_t m, std::size_t n, std::size_t k, double p,
                             std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("generate_instance: m and n must be positive");
  if (k > n) throw std::invalid_argument("generate_instance: k must not exceed n");
  if (m > n) throw std::invalid_argument("generate_instance: m must not exceed n");
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("generate_instance: p must lie in (1, 2]");
  constexpr int kMaxRedraws = 1000;
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    Draw d = [&]() -> Draw {
      try {
        return draw_instance(m, n, k, p, s);
      } catch (const std::runtime_error&) {
        return Draw{LinearMap::zero(m, n), {}, {}, 0.0};
      }
    }();
    if (d.sigma > 0.0 && d.sigma < norm_p(d.b, p)) {
      return CsInstance{std::move(d.A), std::move(d.b), d.sigma, p, std::move(d.x_orig), k, s, seed};
    }
    std::clog << "generate_instance: degenerate draw for seed " << s << ", redrawing\n";
  }
  throw std::runtime_error("generate_instance: no valid draw after repeated attempts");
}

Vector min_norm_solution(const LinearMap& A, ConstSpan b, double tol) {
  require_size(b.size(), A.out_dim(), "min_norm_solution: dim(b)");
  const std::size_t m = A.out_dim();
  const double bnorm = norm2(b);
  Vector z(m, 0.0);
  if (bnorm == 0.0) return Vector(A.in_dim(), 0.0);
  Vector r(b.begin(), b.end());
  Vector dir = r;
  Vector tmp(A.in_dim());
  Vector q(m);
  double rr = dot(r, r);
  const long max_iters = 20 * static_cast<long>(m) + 200;
  for (long it = 0; it < max_iters; ++it) {
    A.adjoint_apply_into(dir, tmp);
    A.apply_into(tmp, q);
    const double pq = dot(dir, q);
    if (!(pq > 0.0)) break;
    const double step = rr / pq;
    axpy(step, dir, z);
    axpy(-step, q, r);
    const double rr_next = dot(r, r);
    if (std::sqrt(rr_next) <= tol * bnorm) break;
    const double ratio = rr_next / rr;
    for (std::size_t i = 0; i < m; ++i) dir[i] = r[i] + ratio * dir[i];
    rr = rr_next;
  }
  Vector x = A.adjoint_apply(z);
  const Vector ax = A.apply(x);
  const double true_res = distance2(ax, b);
  if (!std::isfinite(true_res) || true_res > 1e-8 * (1.0 + bnorm)) {
    throw std::runtime_error("min_norm_solution: conjugate gradients stagnated (A rank deficient?)");
  }
  return x;
}

CsProblem reformulate(const CsInstance& inst) {
  Vector x_hat = min_norm_solution(inst.A, inst.b);
  const double radius = norm1(x_hat) + 1.0;
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  ProblemSpec spec(zero_smooth_block(n), l1_box_prox_block(n, 1.0, radius), zero_smooth_block(m),
                   lp_ball_lo_block(m, inst.sigma, inst.p), inst.A, LinearMap::negated_identity(m),
                   inst.b);
  CsDualContext dual(inst.A, inst.b, inst.sigma, inst.p);
  return CsProblem{inst, std::move(x_hat), radius, std::move(spec), std::move(dual)};
}

}  // namespace pcgpen
