#include "pcgpen/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pcgpen {

void SolverConfig::validate() const {
  if (!(beta0 > 0.0)) throw std::invalid_argument("SolverConfig: beta0 must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("SolverConfig: delta must lie in (0, 1)");
  if (!(H0 > 0.0)) throw std::invalid_argument("SolverConfig: H0 must be positive");
  if (max_iters < 0) throw std::invalid_argument("SolverConfig: max_iters must be nonnegative");
  if (record_every < 1) throw std::invalid_argument("SolverConfig: record_every must be >= 1");
}

Schedule schedules(long t, const SolverConfig& cfg, double mu, double holder_constant) {
  if (t < 0) throw std::invalid_argument("schedules: t must be nonnegative");
  Schedule s;
  const double td = static_cast<double>(t);
  s.alpha = 2.0 / (td + 2.0);
  s.beta = cfg.beta0 * std::exp(cfg.delta * std::log(td + 1.0));
  if (t == 0) {
    s.H = cfg.H0;
  } else {
    const double h_tilde = std::max(cfg.H0, 2.0 * holder_constant / (mu + 1.0));
    s.H = mu == 1.0 ? h_tilde : h_tilde * std::exp((1.0 - mu) * std::log(td));
  }
  return s;
}

SolverState initial_state(const ProblemSpec& spec, const SolverConfig& cfg, Vector x0, Vector y0) {
  cfg.validate();
  require_size(x0.size(), spec.x_dim(), "initial_state: x0");
  require_size(y0.size(), spec.y_dim(), "initial_state: y0");
  if (!spec.f2.contains(x0)) throw std::invalid_argument("initial_state: x0 is outside dom f");
  if (!spec.g2.contains(y0)) throw std::invalid_argument("initial_state: y0 is outside dom g");
  SolverState s;
  const Schedule sch = schedules(0, cfg, spec.f1.holder_exponent, spec.f1.holder_constant);
  s.t = 0;
  s.beta = sch.beta;
  s.H = sch.H;
  s.lambda_A = spec.lambda_A;
  s.residual = spec.residual(x0, y0);
  s.x = std::move(x0);
  s.y = std::move(y0);
  return s;
}

SolverState step(const SolverState& state, const ProblemSpec& spec, const SolverConfig& cfg,
                 StepDetail* detail) {
  const long t = state.t;
  const Schedule sch = schedules(t, cfg, spec.f1.holder_exponent, spec.f1.holder_constant);
  const std::size_t n = spec.x_dim();
  const std::size_t m = spec.A.out_dim();

  // x-update: prox of f2 at x - (grad f1(x) + beta A^* R) / (H + lambda_A beta).
  const Vector& r = state.residual;
  Vector adj_r = spec.A.adjoint_apply(r);
  const Vector grad_f = spec.f1.grad(state.x);
  const double curvature = sch.H + state.lambda_A * sch.beta;
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = state.x[i] - (grad_f[i] + sch.beta * adj_r[i]) / curvature;
  }
  Vector x_next = spec.f2.prox(v, 1.0 / curvature);

  // y-update: conditional-gradient step towards the linear oracle output.
  Vector ax_next = spec.A.apply(x_next);
  const Vector by = spec.B.apply(state.y);
  Vector r_tilde(m);
  for (std::size_t i = 0; i < m; ++i) r_tilde[i] = ax_next[i] + by[i] - spec.c[i];
  const Vector adj_rt = spec.B.adjoint_apply(r_tilde);
  const Vector grad_g = spec.g1.grad(state.y);
  Vector direction(spec.y_dim());
  for (std::size_t i = 0; i < direction.size(); ++i) {
    direction[i] = grad_g[i] + sch.beta * adj_rt[i];
  }
  Vector u = spec.g2.lo(direction);
  Vector y_next(state.y);
  for (std::size_t i = 0; i < y_next.size(); ++i) y_next[i] += sch.alpha * (u[i] - state.y[i]);

  SolverState next;
  next.t = t + 1;
  const Schedule after = schedules(t + 1, cfg, spec.f1.holder_exponent, spec.f1.holder_constant);
  next.beta = after.beta;
  next.H = after.H;
  next.lambda_A = state.lambda_A;
  const Vector by_next = spec.B.apply(y_next);
  next.residual.resize(m);
  for (std::size_t i = 0; i < m; ++i) next.residual[i] = ax_next[i] + by_next[i] - spec.c[i];

  if (!all_finite(x_next) || !all_finite(y_next) || !all_finite(next.residual)) {
    throw SolverAbort(t, "non-finite iterate (beta=" + std::to_string(sch.beta) +
                             ", H=" + std::to_string(sch.H) + ")");
  }
  next.x = std::move(x_next);
  next.y = std::move(y_next);

  if (detail != nullptr) {
    detail->schedule = sch;
    detail->residual = r;
    detail->adj_residual = std::move(adj_r);
    detail->ax_next = std::move(ax_next);
    detail->lo_point = std::move(u);
  }
  return next;
}

bool terminate_small_steps(ConstSpan x_prev, ConstSpan y_prev, ConstSpan x_next,
                           ConstSpan y_next, double tol) {
  return std::max(distance2(x_prev, x_next), distance2(y_prev, y_next)) <= tol;
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::GapAndFeasibility:
      return "gap-and-feasibility";
    case StopReason::SmallSteps:
      return "small-steps";
    case StopReason::IterationCap:
      return "iteration-cap";
    case StopReason::User:
      return "user";
  }
  return "unknown";
}

namespace {

TraceRecord make_record(const SolverState& s, const ProblemSpec& spec, const SolverConfig& cfg) {
  TraceRecord rec;
  const Schedule sch = schedules(s.t, cfg, spec.f1.holder_exponent, spec.f1.holder_constant);
  rec.t = s.t;
  rec.alpha = sch.alpha;
  rec.beta = sch.beta;
  rec.H = sch.H;
  rec.obj = spec.objective(s.x, s.y);
  rec.feas2 = norm2(s.residual);
  return rec;
}

}  // namespace

RunResult run(const ProblemSpec& spec, const SolverConfig& cfg, Vector x0, Vector y0,
              const RunHooks& hooks) {
  RunResult out;
  out.state = initial_state(spec, cfg, std::move(x0), std::move(y0));
  out.trace.push_back(make_record(out.state, spec, cfg));
  if (hooks.on_iterate) hooks.on_iterate(out.state);

  StepDetail detail;
  while (out.state.t < cfg.max_iters) {
    SolverState next = step(out.state, spec, cfg, &detail);
    const double dx = distance2(out.state.x, next.x);
    const double dy = distance2(out.state.y, next.y);

    StepDiagnostics diag;
    if (hooks.diagnose) diag = hooks.diagnose(StepEvent{out.state, next, detail, dx, dy});

    std::optional<StopReason> reason;
    if (diag.accuracy_reached) {
      reason = StopReason::GapAndFeasibility;
    } else if (cfg.step_tol > 0.0 && std::max(dx, dy) <= cfg.step_tol) {
      reason = StopReason::SmallSteps;
    } else if (hooks.user_stop && hooks.user_stop(next)) {
      reason = StopReason::User;
    }

    out.state = std::move(next);
    if (hooks.on_iterate) hooks.on_iterate(out.state);

    if (out.state.t % cfg.record_every == 0 || reason) {
      TraceRecord rec = make_record(out.state, spec, cfg);
      rec.dx = dx;
      rec.dy = dy;
      rec.gap_r = diag.gap_r;
      rec.dual = diag.dual;
      rec.dist_ref = diag.dist_ref;
      if (!spec.f2.contains(out.state.x) || !spec.g2.contains(out.state.y)) {
        ++out.domain_violations;
      }
      out.trace.push_back(std::move(rec));
    }
    if (reason) {
      out.stop_reason = *reason;
      return out;
    }
  }
  out.stop_reason = StopReason::IterationCap;
  return out;
}

}  // namespace pcgpen
