#pragma once

// Independent reference computations used only by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace pcgpen::testing {

// Largest eigenvalue of a symmetric matrix (row-major, n x n) by cyclic
// Jacobi rotations.
inline double jacobi_max_eigenvalue(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  double best = at(0, 0);
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, at(i, i));
  return best;
}

struct FormulaInputs {
  double beta0, delta, H0, mu, nu, M_f, M_g, lambda_A, lambda_B, D_f, D_g, D2, theta;
};

struct FormulaConstants {
  double w0 = 0, w1 = 0, w2 = 0, w3 = 0, w4 = 0, w5 = 0;
};

// The constants term by term, summed in reverse order of the library.
inline FormulaConstants formula_constants(const FormulaInputs& in) {
  FormulaConstants c;
  const double h = std::max(in.H0, 2.0 * in.M_f / (in.mu + 1.0));
  c.w5 = in.D_f * in.D_f * h * 2.0;
  if (in.mu < 1.0) {
    const double ratio = 2.0 * in.M_f / ((1.0 + in.mu) * h);
    c.w0 = std::pow(ratio, 2.0 / (1.0 - in.mu)) * h * 4.0;
    c.w4 = 2.0 * c.w0 + c.w5;
  }
  c.w3 = in.M_g * std::pow(in.D_g, in.nu + 1.0) * std::pow(2.0, in.nu + 1.0) / (in.nu + 1.0);
  const double t3 = in.D2 * in.beta0 * (32.0 + 16.0 * in.delta) / (1.0 + in.delta);
  const double t2 = 2.0 * in.beta0 * in.lambda_B * in.D_g * in.D_g;
  const double t1 = 2.0 * in.beta0 * in.lambda_A * in.D_f * in.D_f;
  c.w2 = t3 + t2 + t1;
  c.w1 = in.theta + in.D2 * in.beta0 * std::pow(2.0, in.delta + 3.0);
  return c;
}

inline double formula_tau(long t, const FormulaConstants& c, double mu, double nu, double delta) {
  const double s = static_cast<double>(t) + 1.0;
  double v = mu < 1.0 ? c.w4 * std::pow(s, -mu) : c.w5 / s;
  v += c.w3 * std::pow(s, -nu);
  v += c.w2 * std::pow(s, delta - 1.0);
  v += c.w1 / (static_cast<double>(t) * s);
  return v;
}

// Positive root of -(beta/2) s^2 + lam s + tau = 0 by bisection.
inline double quadratic_root_bisect(double beta, double lam, double tau) {
  auto f = [&](double s) { return -0.5 * beta * s * s + lam * s + tau; };
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace pcgpen::testing
