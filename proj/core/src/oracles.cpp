#include "pcgpen/oracles.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace pcgpen::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double oracle_lp_norm(ConstSpan v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

struct GridBest {
  std::vector<double> point;
  double value = kInf;
};

// Visits center + step * k for integer k with |k| <= half_count in each of
// `dim` coordinates; `objective` returns +inf for infeasible points.
GridBest grid_minimize(std::size_t dim, const std::vector<double>& center, double step,
                       long half_count,
                       const std::function<double(const std::vector<double>&)>& objective) {
  GridBest best;
  std::vector<long> idx(dim, -half_count);
  std::vector<double> pt(dim);
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) pt[i] = center[i] + step * static_cast<double>(idx[i]);
    const double v = objective(pt);
    if (v < best.value) {
      best.value = v;
      best.point = pt;
    }
    std::size_t d = 0;
    while (d < dim) {
      if (++idx[d] <= half_count) break;
      idx[d] = -half_count;
      ++d;
    }
    if (d == dim) break;
  }
  return best;
}

// Minimizes a function of an angle in [0, 2pi): full grid, then windows
// re-centred on the incumbent with spacing shrinking by 10 per round.
GridBest angle_search(const std::function<double(double)>& f, const TinySolveOptions& opts) {
  const auto objective = [&](const std::vector<double>& a) { return f(a[0]); };
  const double pi = std::numbers::pi;
  double step = opts.grid_step;
  GridBest best = grid_minimize(1, {pi}, step, static_cast<long>(std::ceil(pi / step)), objective);
  for (int r = 0; r < opts.refine_rounds && std::isfinite(best.value); ++r) {
    const double window = opts.window * step;
    step /= 10.0;
    const long half = static_cast<long>(std::ceil(window / step));
    for (int pass = 0; pass < 100; ++pass) {
      GridBest cand = grid_minimize(1, best.point, step, half, objective);
      if (!(cand.value < best.value)) break;
      best = cand;
    }
  }
  return best;
}

}  // namespace

Vector prox_l1_box_grid(ConstSpan u, double gamma, double radius, double step) {
  Vector out(u.size());
  const long count = static_cast<long>(std::floor(2.0 * radius / step));
  for (std::size_t i = 0; i < u.size(); ++i) {
    double best_x = 0.0;
    double best_v = kInf;
    for (long kk = 0; kk <= count + 1; ++kk) {
      const double x = kk > count ? radius : -radius + step * static_cast<double>(kk);
      const double d = x - u[i];
      const double v = gamma > 0.0 ? d * d / (2.0 * gamma) + std::abs(x) : std::abs(d);
      if (v < best_v) {
        best_v = v;
        best_x = x;
      }
    }
    out[i] = best_x;
  }
  return out;
}

Vector lo_bruteforce(ConstSpan v, double sigma, double p, double grid_step) {
  const std::size_t dim = v.size();
  if (dim == 0 || dim > 3) throw std::invalid_argument("lo_bruteforce: dimension must be 1..3");
  auto point_of = [&](const std::vector<double>& ang) {
    Vector d(dim);
    if (dim == 1) {
      d[0] = ang[0] < 0.0 ? -1.0 : 1.0;
    } else if (dim == 2) {
      d[0] = std::cos(ang[0]);
      d[1] = std::sin(ang[0]);
    } else {
      d[0] = std::sin(ang[0]) * std::cos(ang[1]);
      d[1] = std::sin(ang[0]) * std::sin(ang[1]);
      d[2] = std::cos(ang[0]);
    }
    const double s = sigma / oracle_lp_norm(d, p);
    for (double& e : d) e *= s;
    return d;
  };
  auto objective = [&](const std::vector<double>& ang) {
    const Vector u = point_of(ang);
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += v[i] * u[i];
    return s;
  };

  if (dim == 1) {
    const double plus = objective({1.0});
    const double minus = objective({-1.0});
    return point_of({plus <= minus ? 1.0 : -1.0});
  }

  const std::size_t nang = dim - 1;
  const double pi = std::numbers::pi;
  // Coarse pass over the full angular range.
  std::vector<double> best_ang(nang, 0.0);
  double best = kInf;
  const long n0 = static_cast<long>(std::ceil(2.0 * pi / grid_step));
  const long n1 = static_cast<long>(std::ceil(pi / grid_step));
  if (nang == 1) {
    for (long i = 0; i < n0; ++i) {
      const std::vector<double> a{grid_step * static_cast<double>(i)};
      const double val = objective(a);
      if (val < best) {
        best = val;
        best_ang = a;
      }
    }
  } else {
    for (long i = 0; i <= n1; ++i) {
      for (long j = 0; j < n0; ++j) {
        const std::vector<double> a{std::min(pi, grid_step * static_cast<double>(i)),
                                    grid_step * static_cast<double>(j)};
        const double val = objective(a);
        if (val < best) {
          best = val;
          best_ang = a;
        }
      }
    }
  }
  // Local refinement around the incumbent.
  double step = grid_step;
  while (step > 1e-9) {
    const double window = 3.0 * step;
    step /= 10.0;
    const long half = static_cast<long>(std::ceil(window / step));
    GridBest cand = grid_minimize(nang, best_ang, step, half, objective);
    if (cand.value < best) {
      best = cand.value;
      best_ang = cand.point;
    }
  }
  return point_of(best_ang);
}

ReferenceSolution reference_solve_tiny(const CsInstance& inst, const TinySolveOptions& opts) {
  const std::size_t m = inst.m();
  const std::size_t n = inst.n();
  if (n > 3 || m > 2 || m > n) {
    throw std::invalid_argument("reference_solve_tiny: requires m <= n <= 3 and m <= 2");
  }
  const double p = inst.p;
  const double q = p / (p - 1.0);
  const double sigma = inst.sigma;

  double gram[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < n; ++j) gram[i][k] += inst.A.at(i, j) * inst.A.at(k, j);
  const double det = m == 2 ? gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0] : gram[0][0];
  if (!(det > 1e-14)) throw std::invalid_argument("reference_solve_tiny: A must have full row rank");
  // x = A^+ w with A^+ = A^T (A A^T)^{-1}.
  auto pinv_apply = [&](const std::array<double, 2>& w) {
    std::array<double, 2> z{};
    if (m == 1) {
      z[0] = w[0] / gram[0][0];
    } else {
      z[0] = (gram[1][1] * w[0] - gram[0][1] * w[1]) / det;
      z[1] = (gram[0][0] * w[1] - gram[1][0] * w[0]) / det;
    }
    std::array<double, 3> x{};
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) x[j] += inst.A.at(i, j) * z[i];
    return x;
  };
  // Orthonormal basis of null(A) by Gram-Schmidt on (I - A^+ A) e_j.
  std::vector<std::array<double, 3>> null_basis;
  for (std::size_t j = 0; j < n && null_basis.size() < n - m; ++j) {
    std::array<double, 2> col{};
    for (std::size_t i = 0; i < m; ++i) col[i] = inst.A.at(i, j);
    std::array<double, 3> v = pinv_apply(col);
    for (std::size_t r = 0; r < n; ++r) v[r] = (r == j ? 1.0 : 0.0) - v[r];
    for (const auto& e : null_basis) {
      double d = 0.0;
      for (std::size_t r = 0; r < n; ++r) d += e[r] * v[r];
      for (std::size_t r = 0; r < n; ++r) v[r] -= d * e[r];
    }
    double nv = 0.0;
    for (std::size_t r = 0; r < n; ++r) nv += v[r] * v[r];
    nv = std::sqrt(nv);
    if (nv < 1e-8) continue;
    for (std::size_t r = 0; r < n; ++r) v[r] /= nv;
    null_basis.push_back(v);
  }
  const std::size_t k = null_basis.size();

  // Unit l_p (or l_q) direction for an angle; m == 1 uses the sign of cos.
  auto direction = [&](double theta, double norm_exp) {
    std::array<double, 2> d{};
    if (m == 1) {
      d[0] = std::cos(theta) >= 0.0 ? 1.0 : -1.0;
      return d;
    }
    d[0] = std::cos(theta);
    d[1] = std::sin(theta);
    const double s = oracle_lp_norm(ConstSpan(d.data(), m), norm_exp);
    d[0] /= s;
    d[1] /= s;
    return d;
  };

  // min over z of ||x0 + N z||_1, exactly: some k coordinates vanish at a minimizer.
  auto best_in_fiber = [&](const std::array<double, 3>& x0, std::array<double, 3>* arg) {
    auto l1 = [&](const std::array<double, 3>& x) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += std::abs(x[r]);
      return s;
    };
    double best = kInf;
    auto consider = [&](const std::array<double, 3>& x) {
      const double v = l1(x);
      if (v < best) {
        best = v;
        *arg = x;
      }
    };
    if (k == 0) {
      consider(x0);
    } else if (k == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(null_basis[0][i]) < 1e-14) continue;
        const double z = -x0[i] / null_basis[0][i];
        std::array<double, 3> x = x0;
        for (std::size_t r = 0; r < n; ++r) x[r] += z * null_basis[0][r];
        consider(x);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double a = null_basis[0][i], b = null_basis[1][i];
          const double c = null_basis[0][j], d = null_basis[1][j];
          const double dt = a * d - b * c;
          if (std::abs(dt) < 1e-14) continue;
          const double z0 = (-x0[i] * d + x0[j] * b) / dt;
          const double z1 = (-x0[j] * a + x0[i] * c) / dt;
          std::array<double, 3> x = x0;
          for (std::size_t r = 0; r < n; ++r) x[r] += z0 * null_basis[0][r] + z1 * null_basis[1][r];
          consider(x);
        }
      }
    }
    return best;
  };

  auto residual_norm = [&](const std::array<double, 3>& x) {
    std::array<double, 2> r{};
    for (std::size_t i = 0; i < m; ++i) {
      double s = -inst.b[i];
      for (std::size_t j = 0; j < n; ++j) s += inst.A.at(i, j) * x[j];
      r[i] = s;
    }
    return oracle_lp_norm(ConstSpan(r.data(), m), p);
  };

  ReferenceSolution ref;
  ref.method = "angular-grid+vertex-enumeration";

  if (oracle_lp_norm(inst.b, p) <= sigma) {
    ref.x_star.assign(n, 0.0);
    ref.val = 0.0;
  } else {
    auto primal_at = [&](double theta, std::array<double, 3>* arg) {
      const std::array<double, 2> d = direction(theta, p);
      std::array<double, 2> w{};
      for (std::size_t i = 0; i < m; ++i) w[i] = inst.b[i] + sigma * d[i];
      return best_in_fiber(pinv_apply(w), arg);
    };
    std::array<double, 3> scratch{};
    const GridBest best = angle_search([&](double th) { return primal_at(th, &scratch); }, opts);
    if (!std::isfinite(best.value)) throw std::runtime_error("reference_solve_tiny: no feasible primal point");
    std::array<double, 3> x{};
    ref.val = primal_at(best.point[0], &x);
    if (residual_norm(x) > sigma * (1.0 + 1e-9)) {
      throw std::runtime_error("reference_solve_tiny: primal point left the constraint set");
    }
    ref.x_star.assign(x.begin(), x.begin() + static_cast<long>(n));
  }

  auto dual_at = [&](double theta, Vector* lambda) {
    const std::array<double, 2> d = direction(theta, 2.0);
    double adj = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += inst.A.at(i, j) * d[i];
      adj = std::max(adj, std::abs(s));
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) slope -= inst.b[i] * d[i];
    slope -= sigma * oracle_lp_norm(ConstSpan(d.data(), m), q);
    const double s = slope > 0.0 ? 1.0 / adj : 0.0;
    if (lambda != nullptr) {
      lambda->assign(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) (*lambda)[i] = s * d[i];
    }
    return s * slope;
  };
  const GridBest dbest = angle_search([&](double th) { return -dual_at(th, nullptr); }, opts);
  ref.dual_val = dual_at(dbest.point[0], &ref.lambda_bar);
  ref.tolerance = ref.val - ref.dual_val;
  ref.final_step = opts.grid_step * std::pow(10.0, -opts.refine_rounds);
  return ref;
}

double ggd_abs_moment_quadrature(double p, double r, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double upper = std::pow(70.0, 1.0 / p);  // exp(-70) ~ 4e-31
  const double h = upper / intervals;
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double x = h * i;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double dens = std::exp(-std::pow(x, p));
    num += w * std::pow(x, r) * dens;
    den += w * dens;
  }
  return num / den;
}

}  // namespace pcgpen::oracles
