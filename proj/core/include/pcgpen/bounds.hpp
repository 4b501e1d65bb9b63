#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcgpen/problem.hpp"
#include "pcgpen/solver.hpp"

namespace pcgpen {

// Inputs of the global complexity certificate. Constants may be upper
// bounds: every derived quantity is nondecreasing in M_f, M_g, D_f, D_g, D2
// and theta.
struct BoundInputs {
  double beta0 = 1.0;
  double delta = 0.5;
  double H0 = 1e-4;
  double mu = 1.0;
  double nu = 1.0;
  double M_f = 0.0;
  double M_g = 0.0;
  double lambda_A = 0.0;
  double lambda_B = 0.0;
  double D_f = 0.0;
  double D_g = 0.0;
  double D2 = 0.0;
  // 2 (F_{beta0}(x^1, y^1) - val), clamped at zero.
  double theta = 0.0;
  std::optional<double> multiplier_norm;
  // Free-form description of the first iterate used for theta.
  std::string theta_source;

  void validate() const;
};

struct BoundReport {
  BoundInputs inputs;
  double H0_tilde = 0.0;
  std::optional<double> omega0;  // only defined for mu < 1
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  std::optional<double> omega4;  // only defined for mu < 1
  double omega5 = 0.0;

  // tau_t and G_t for this report's own mu, nu, delta, beta0.
  double tau(long t) const;
  double G(long t, double multiplier_norm) const;

  std::vector<std::pair<std::string, std::string>> to_metadata() const;
};

BoundReport compute_constants(const BoundInputs& in);

/// tau_t for t >= 2:
///   omega1/(t(t+1)) + omega2/(t+1)^(1-delta) + omega3/(t+1)^nu + omega4/(t+1)^mu   (mu < 1)
///   omega1/(t(t+1)) + omega2/(t+1)^(1-delta) + omega3/(t+1)^nu + omega5/(t+1)      (mu = 1)
double tau(long t, const BoundReport& rep, double mu, double nu, double delta);

/// G_t = |l|/(beta0 t^delta) + sqrt(|l|^2/(beta0^2 t^(2 delta)) + 2 tau_t/(beta0 t^delta)).
double G(long t, const BoundReport& rep, double multiplier_norm, double beta0, double delta);

struct DeltaChoice {
  double delta = 0.5;
  double varpi1 = 0.0;  // objective-side exponent
  double varpi2 = 0.0;  // feasibility exponent
};

// Exponents of the asymptotic rates for a given delta.
DeltaChoice rate_exponents(double mu, double nu, double delta);

// delta = 0.5 when min{mu, nu} >= 0.5, else 1 - min{mu, nu}.
DeltaChoice choose_delta(double mu, double nu);

// 2 (f(x1) + g(y1) + (beta0/2)||Ax1 + By1 - c||^2 - val), clamped at zero.
double theta_from_first_iterate(const ProblemSpec& spec, ConstSpan x1, ConstSpan y1,
                                double beta0, double val);

// Fills the problem-dependent fields of BoundInputs from a spec and config.
BoundInputs bound_inputs_for(const ProblemSpec& spec, const SolverConfig& cfg);

}  // namespace pcgpen
