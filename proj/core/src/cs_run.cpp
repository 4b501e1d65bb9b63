#include "pcgpen/cs_run.hpp"

#include <algorithm>
#include <memory>

#include "pcgpen/duality.hpp"

namespace pcgpen {

SolverConfig cs_default_config(double beta0) {
  SolverConfig cfg;
  cfg.beta0 = beta0;
  cfg.delta = 0.5;
  cfg.H0 = 1e-4;
  cfg.max_iters = 10000;
  cfg.step_tol = 1e-6;
  cfg.gap_tol = 0.05;
  cfg.feas_tol_rel = 0.005;
  cfg.record_every = 100;
  return cfg;
}

double cs_feasibility_violation(const CsProblem& prob, ConstSpan x) {
  const Vector r = subtract(prob.instance.A.apply(x), prob.instance.b);
  return std::max(0.0, norm_p(r, prob.instance.p) - prob.instance.sigma);
}

RunHooks cs_hooks(const CsProblem& prob, const SolverConfig& cfg, const CsRunOptions& opts) {
  RunHooks hooks;
  const CsProblem* pp = &prob;
  auto ref = opts.reference_x ? std::make_shared<const Vector>(*opts.reference_x) : nullptr;
  const bool accuracy = opts.accuracy_criterion;
  const double gap_tol = cfg.gap_tol;
  const double feas_tol = cfg.feas_tol_rel;
  hooks.diagnose = [pp, ref, accuracy, gap_tol, feas_tol](const StepEvent& ev) {
    const CsDualContext& ctx = pp->dual;
    const double beta = ev.detail.schedule.beta;
    // With B = -I and c = b the residual R^t is A x^t - b - y^t, so the
    // dual candidate is beta R^t and A^T of it is beta A^T R^t.
    Vector lambda(ev.detail.residual);
    for (double& v : lambda) v *= beta;
    const double adj = beta * norm_inf(ev.detail.adj_residual);
    lambda = scale_to_dual_feasible(std::move(lambda), adj);

    StepDiagnostics d;
    const double dual = dual_value(ctx, lambda);
    d.dual = dual;
    d.gap_r = gap_r_from_values(norm1(ev.next.x), dual);
    if (ref) d.dist_ref = distance2(ev.next.x, *ref);
    if (accuracy && *d.gap_r <= gap_tol) {
      const Vector r = subtract(ev.detail.ax_next, ctx.b);
      d.accuracy_reached = norm_p(r, ctx.p) - ctx.sigma <= feas_tol * ctx.sigma;
    }
    return d;
  };
  hooks.user_stop = opts.user_stop;
  return hooks;
}

CsRunResult solve_cs(const CsProblem& prob, const SolverConfig& cfg, const CsRunOptions& opts) {
  CsRunResult out;
  const RunHooks hooks = cs_hooks(prob, cfg, opts);
  std::optional<double> last_gap;
  RunHooks wrapped = hooks;
  wrapped.diagnose = [&](const StepEvent& ev) {
    StepDiagnostics d = hooks.diagnose(ev);
    last_gap = d.gap_r;
    return d;
  };
  out.run = run(prob.spec, cfg, Vector(prob.instance.n(), 0.0), Vector(prob.instance.m(), 0.0),
                wrapped);
  out.iterations = out.run.state.t;
  if (last_gap) {
    out.terminal_gap_r = *last_gap;
  } else {
    const Vector lambda = feasible_dual_point(prob.dual, out.run.state.x, out.run.state.y,
                                              out.run.state.beta);
    out.terminal_gap_r = gap_r(prob.dual, out.run.state.x, lambda);
  }
  out.feas_violation = cs_feasibility_violation(prob, out.run.state.x);
  return out;
}

}  // namespace pcgpen
