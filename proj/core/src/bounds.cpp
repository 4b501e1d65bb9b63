#include "pcgpen/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcgpen/trace_csv.hpp"

namespace pcgpen {

void BoundInputs::validate() const {
  const double nonneg[] = {beta0, H0, M_f, M_g, lambda_A, lambda_B, D_f, D_g, D2, theta};
  for (double v : nonneg) {
    if (!(v >= 0.0)) throw std::invalid_argument("BoundInputs: constants must be nonnegative");
  }
  if (!(beta0 > 0.0)) throw std::invalid_argument("BoundInputs: beta0 must be positive");
  if (!(H0 > 0.0)) throw std::invalid_argument("BoundInputs: H0 must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("BoundInputs: delta must lie in (0, 1)");
  if (!(mu > 0.0 && mu <= 1.0) || !(nu > 0.0 && nu <= 1.0)) {
    throw std::invalid_argument("BoundInputs: mu and nu must lie in (0, 1]");
  }
  if (multiplier_norm && !(*multiplier_norm >= 0.0)) {
    throw std::invalid_argument("BoundInputs: multiplier norm must be nonnegative");
  }
}

BoundReport compute_constants(const BoundInputs& in) {
  in.validate();
  BoundReport rep;
  rep.inputs = in;
  rep.H0_tilde = std::max(in.H0, 2.0 * in.M_f / (in.mu + 1.0));
  const double df2 = in.D_f * in.D_f;
  rep.omega1 = std::pow(2.0, in.delta + 3.0) * in.beta0 * in.D2 + in.theta;
  rep.omega2 = 2.0 * in.lambda_A * df2 * in.beta0 +
               2.0 * in.lambda_B * in.D_g * in.D_g * in.beta0 +
               (32.0 + 16.0 * in.delta) / (1.0 + in.delta) * in.D2 * in.beta0;
  rep.omega3 = std::pow(2.0, in.nu + 1.0) / (in.nu + 1.0) * in.M_g * std::pow(in.D_g, in.nu + 1.0);
  rep.omega5 = 2.0 * rep.H0_tilde * df2;
  if (in.mu < 1.0) {
    const double ratio = 2.0 * in.M_f / ((1.0 + in.mu) * rep.H0_tilde);
    rep.omega0 = 4.0 * rep.H0_tilde * std::pow(ratio, 2.0 / (1.0 - in.mu));
    rep.omega4 = rep.omega5 + 2.0 * *rep.omega0;
  }
  return rep;
}

double tau(long t, const BoundReport& rep, double mu, double nu, double delta) {
  if (t < 2) throw std::invalid_argument("tau: t must be >= 2");
  const double td = static_cast<double>(t);
  const double t1 = td + 1.0;
  double v = rep.omega1 / (td * t1) + rep.omega2 / std::pow(t1, 1.0 - delta) +
             rep.omega3 / std::pow(t1, nu);
  if (mu < 1.0) {
    if (!rep.omega4) throw std::invalid_argument("tau: report has no omega4 for mu < 1");
    v += *rep.omega4 / std::pow(t1, mu);
  } else {
    v += rep.omega5 / t1;
  }
  return v;
}

double G(long t, const BoundReport& rep, double multiplier_norm, double beta0, double delta) {
  const double scaled = beta0 * std::pow(static_cast<double>(t), delta);
  const double lt = multiplier_norm / scaled;
  return lt + std::sqrt(lt * lt + 2.0 * tau(t, rep, rep.inputs.mu, rep.inputs.nu, delta) / scaled);
}

double BoundReport::tau(long t) const { return pcgpen::tau(t, *this, inputs.mu, inputs.nu, inputs.delta); }

double BoundReport::G(long t, double multiplier_norm) const {
  return pcgpen::G(t, *this, multiplier_norm, inputs.beta0, inputs.delta);
}

std::vector<std::pair<std::string, std::string>> BoundReport::to_metadata() const {
  Metadata m;
  auto put = [&m](const char* k, double v) { m.emplace_back(k, format_double(v)); };
  auto put_opt = [&m](const char* k, const std::optional<double>& v) {
    m.emplace_back(k, v ? format_double(*v) : std::string("n/a"));
  };
  put("bound.beta0", inputs.beta0);
  put("bound.delta", inputs.delta);
  put("bound.H0", inputs.H0);
  put("bound.mu", inputs.mu);
  put("bound.nu", inputs.nu);
  put("bound.M_f", inputs.M_f);
  put("bound.M_g", inputs.M_g);
  put("bound.lambda_A", inputs.lambda_A);
  put("bound.lambda_B", inputs.lambda_B);
  put("bound.D_f", inputs.D_f);
  put("bound.D_g", inputs.D_g);
  put("bound.D2", inputs.D2);
  put("bound.theta", inputs.theta);
  put_opt("bound.multiplier_norm", inputs.multiplier_norm);
  if (!inputs.theta_source.empty()) m.emplace_back("bound.theta_source", inputs.theta_source);
  put("bound.H0_tilde", H0_tilde);
  put_opt("bound.omega0", omega0);
  put("bound.omega1", omega1);
  put("bound.omega2", omega2);
  put("bound.omega3", omega3);
  put_opt("bound.omega4", omega4);
  put("bound.omega5", omega5);
  return m;
}

DeltaChoice rate_exponents(double mu, double nu, double delta) {
  DeltaChoice c;
  c.delta = delta;
  c.varpi1 = std::min({1.0 - delta, nu, mu});
  c.varpi2 = std::min({delta, 0.5, (nu + delta) / 2.0, (mu + delta) / 2.0});
  return c;
}

DeltaChoice choose_delta(double mu, double nu) {
  if (!(mu > 0.0 && mu <= 1.0) || !(nu > 0.0 && nu <= 1.0)) {
    throw std::invalid_argument("choose_delta: mu and nu must lie in (0, 1]");
  }
  const double m = std::min(mu, nu);
  return rate_exponents(mu, nu, m >= 0.5 ? 0.5 : 1.0 - m);
}

double theta_from_first_iterate(const ProblemSpec& spec, ConstSpan x1, ConstSpan y1,
                                double beta0, double val) {
  return std::max(0.0, 2.0 * (spec.penalty_value(x1, y1, beta0) - val));
}

BoundInputs bound_inputs_for(const ProblemSpec& spec, const SolverConfig& cfg) {
  BoundInputs in;
  in.beta0 = cfg.beta0;
  in.delta = cfg.delta;
  in.H0 = cfg.H0;
  in.mu = spec.f1.holder_exponent;
  in.nu = spec.g1.holder_exponent;
  in.M_f = spec.f1.holder_constant;
  in.M_g = spec.g1.holder_constant;
  in.lambda_A = spec.lambda_A;
  in.lambda_B = spec.lambda_B;
  in.D_f = spec.D_f;
  in.D_g = spec.D_g;
  in.D2 = spec.D2_upper;
  return in;
}

}  // namespace pcgpen
