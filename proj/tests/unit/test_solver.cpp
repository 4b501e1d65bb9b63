#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "pcgpen/blocks.hpp"
#include "pcgpen/bounds.hpp"
#include "pcgpen/solver.hpp"

namespace pcgpen {
namespace {

SolverConfig config(double beta0, double delta, double h0, long max_iters, long record_every = 1) {
  SolverConfig cfg;
  cfg.beta0 = beta0;
  cfg.delta = delta;
  cfg.H0 = h0;
  cfg.max_iters = max_iters;
  cfg.record_every = record_every;
  return cfg;
}

// min |x| + box(1)  s.t.  x - y = 0,  |y| <= sigma.
ProblemSpec one_dim_spec(double sigma) {
  return ProblemSpec(zero_smooth_block(1), l1_box_prox_block(1, 1.0, 1.0), zero_smooth_block(1),
                     lp_ball_lo_block(1, sigma, 2.0), LinearMap::identity(1), LinearMap::negated_identity(1),
                     Vector{0.0});
}

// sum |x_i|^1.5 / 1.5 over ||x||_inf <= 4, ||y||_2 <= 1, x - y = (2, 0, 0); val = 2/3.
ProblemSpec holder_spec() {
  return ProblemSpec(power_smooth_block(0.5, 3, 4.0, 5), l1_box_prox_block(3, 0.0, 4.0), zero_smooth_block(3),
                     lp_ball_lo_block(3, 1.0, 2.0), LinearMap::identity(3), LinearMap::negated_identity(3),
                     Vector{2.0, 0.0, 0.0});
}

TEST(Schedules, InitialValues) {
  const Schedule s = schedules(0, config(3.0, 0.5, 0.25, 10), 1.0, 0.0);
  EXPECT_EQ(s.alpha, 1.0);
  EXPECT_EQ(s.beta, 3.0);
  EXPECT_EQ(s.H, 0.25);
}

TEST(Schedules, BetaExample) { EXPECT_NEAR(schedules(3, config(2.0, 0.5, 1e-4, 10), 1.0, 0.0).beta, 4.0, 1e-15); }

TEST(Schedules, HolderBranchExample) {
  EXPECT_NEAR(schedules(4, config(1.0, 0.5, 1.0, 10), 0.5, 3.0).H, 8.0, 1e-14);
}

TEST(Schedules, MonotoneInT) {
  const SolverConfig cfg = config(2.0, 0.6, 0.1, 10);
  Schedule prev = schedules(0, cfg, 0.4, 2.0);
  for (long t = 1; t < 5000; ++t) {
    const Schedule s = schedules(t, cfg, 0.4, 2.0);
    EXPECT_LT(s.alpha, prev.alpha);
    EXPECT_GE(s.beta, prev.beta);
    if (t >= 2) EXPECT_GE(s.H, prev.H);
    prev = s;
  }
}

TEST(SolverConfig, Validation) {
  EXPECT_THROW(config(0.0, 0.5, 1e-4, 1).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.0, 1.0, 1e-4, 1).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.0, 0.5, 0.0, 1).validate(), std::invalid_argument);
  EXPECT_NO_THROW(config(1.0, 0.5, 1e-4, 1).validate());
}

TEST(Step, ConstantOraclesPinIterates) {
  const Vector xbar{0.5, -1.0};
  const Vector ybar{2.0};
  ProblemSpec spec(zero_smooth_block(2), point_prox_block(xbar), zero_smooth_block(1), point_lo_block(ybar),
                   LinearMap::dense(1, 2, {1.0, 1.0}), LinearMap::identity(1), Vector{0.0});
  const SolverConfig cfg = config(1.0, 0.5, 1e-4, 10);
  SolverState s = initial_state(spec, cfg, xbar, ybar);
  s = step(s, spec, cfg);
  EXPECT_EQ(s.x, xbar);
  EXPECT_EQ(s.y, ybar);
}

TEST(Step, HandExecutedOneDimensionalRun) {
  const double sigma = 0.5;
  const ProblemSpec spec = one_dim_spec(sigma);
  const SolverConfig cfg = config(1.0, 0.5, 1e-4, 2);
  SolverState s = initial_state(spec, cfg, Vector{1.0}, Vector{0.0});

  const double lam = spec.lambda_A;
  double x = 1.0;
  double y = 0.0;
  for (long t = 0; t < 2; ++t) {
    const double alpha = 2.0 / (t + 2.0);
    const double beta = std::sqrt(static_cast<double>(t) + 1.0);
    const double L = 1e-4 + lam * beta;
    const double v = x - beta * (x - y) / L;
    const double soft = std::copysign(std::max(std::abs(v) - 1.0 / L, 0.0), v);
    x = std::clamp(soft, -1.0, 1.0);
    const double direction = -beta * (x - y);
    const double u = direction == 0.0 ? 0.0 : -sigma * std::copysign(1.0, direction);
    y = y + alpha * (u - y);

    s = step(s, spec, cfg);
    EXPECT_NEAR(s.x[0], x, 1e-12) << "t=" << t;
    EXPECT_NEAR(s.y[0], y, 1e-12) << "t=" << t;
  }
}

TEST(Step, FirstLinearOracleStepLandsOnOraclePoint) {
  const ProblemSpec spec = one_dim_spec(0.3);
  const SolverConfig cfg = config(1.0, 0.5, 1e-4, 2);
  StepDetail detail;
  const SolverState s0 = initial_state(spec, cfg, Vector{1.0}, Vector{0.0});
  const SolverState s1 = step(s0, spec, cfg, &detail);
  EXPECT_EQ(s1.y, detail.lo_point);
  StepDetail detail2;
  const SolverState s2 = step(s1, spec, cfg, &detail2);
  const double a = detail2.schedule.alpha;
  EXPECT_NEAR(s2.y[0], (1.0 - a) * s1.y[0] + a * detail2.lo_point[0], 1e-15);
}

TEST(InitialState, RejectsPointsOutsideDomains) {
  const ProblemSpec spec = one_dim_spec(0.3);
  const SolverConfig cfg = config(1.0, 0.5, 1e-4, 2);
  EXPECT_THROW(initial_state(spec, cfg, Vector{2.0}, Vector{0.0}), std::invalid_argument);
  EXPECT_THROW(initial_state(spec, cfg, Vector{0.0}, Vector{0.5}), std::invalid_argument);
}

TEST(SmallSteps, Examples) {
  EXPECT_TRUE(terminate_small_steps(Vector{1, 2}, Vector{3}, Vector{1, 2}, Vector{3}, 1e-6));
  EXPECT_FALSE(terminate_small_steps(Vector{0, 0}, Vector{0}, Vector{2e-6, 0}, Vector{0}, 1e-6));
  EXPECT_TRUE(terminate_small_steps(Vector{0, 0}, Vector{0}, Vector{5e-7, 0}, Vector{9e-7}, 1e-6));
}

TEST(Run, ZeroIterations) {
  const ProblemSpec spec = one_dim_spec(0.3);
  const RunResult r = run(spec, config(1.0, 0.5, 1e-4, 0), Vector{1.0}, Vector{0.0});
  EXPECT_EQ(r.stop_reason, StopReason::IterationCap);
  EXPECT_EQ(r.state.t, 0);
  EXPECT_EQ(r.state.x[0], 1.0);
  ASSERT_EQ(r.trace.size(), 1u);
}

TEST(Run, TraceLengthFollowsStride) {
  const ProblemSpec spec = holder_spec();
  for (long every : {1L, 3L, 7L, 100L}) {
    const RunResult r = run(spec, config(1.0, 0.5, 1e-4, 250, every), Vector(3, 0.0), Vector(3, 0.0));
    EXPECT_EQ(r.state.t, 250);
    EXPECT_EQ(static_cast<long>(r.trace.size()), 250 / every + 1) << every;
    EXPECT_EQ(r.trace.back().t, (250 / every) * every);
  }
}

TEST(Run, UserStop) {
  const ProblemSpec spec = holder_spec();
  RunHooks hooks;
  hooks.user_stop = [](const SolverState& s) { return s.t >= 17; };
  const RunResult r = run(spec, config(1.0, 0.5, 1e-4, 1000), Vector(3, 0.0), Vector(3, 0.0), hooks);
  EXPECT_EQ(r.stop_reason, StopReason::User);
  EXPECT_EQ(r.state.t, 17);
}

TEST(Run, BitIdenticalTraces) {
  const ProblemSpec spec = holder_spec();
  const SolverConfig cfg = config(2.0, 0.5, 1e-4, 500);
  const RunResult a = run(spec, cfg, Vector(3, 0.0), Vector(3, 0.0));
  const RunResult b = run(spec, cfg, Vector(3, 0.0), Vector(3, 0.0));
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.trace[i].obj), std::bit_cast<std::uint64_t>(b.trace[i].obj));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.trace[i].feas2), std::bit_cast<std::uint64_t>(b.trace[i].feas2));
  }
}

TEST(Run, IteratesStayInDomains) {
  const ProblemSpec spec = holder_spec();
  long checked = 0;
  RunHooks hooks;
  hooks.on_iterate = [&](const SolverState& s) {
    ASSERT_TRUE(spec.f2.contains(s.x)) << "t=" << s.t;
    ASSERT_TRUE(spec.g2.contains(s.y)) << "t=" << s.t;
    ++checked;
  };
  const RunResult r = run(spec, config(5.0, 0.5, 1e-4, 2000), Vector(3, 0.0), Vector(3, 0.0), hooks);
  EXPECT_EQ(r.domain_violations, 0);
  EXPECT_EQ(checked, 2001);
}

TEST(Run, SmallStepCriterionStops) {
  // The pinned problem stops moving after the first step.
  const Vector xbar{0.5};
  ProblemSpec spec(zero_smooth_block(1), point_prox_block(xbar), zero_smooth_block(1), point_lo_block(Vector{0.5}),
                   LinearMap::identity(1), LinearMap::negated_identity(1), Vector{0.0});
  SolverConfig cfg = config(1.0, 0.5, 1e-4, 100);
  cfg.step_tol = 1e-6;
  const RunResult r = run(spec, cfg, xbar, Vector{0.5});
  EXPECT_EQ(r.stop_reason, StopReason::SmallSteps);
  EXPECT_EQ(r.state.t, 1);
}

TEST(Run, HolderPenaltyBoundHolds) {
  const ProblemSpec spec = holder_spec();
  const double val = 1.0 / 1.5;
  const SolverConfig cfg = config(1.0, 0.5, 1e-4, 10000);
  Vector x1;
  Vector y1;
  RunHooks hooks;
  hooks.on_iterate = [&](const SolverState& s) {
    if (s.t == 1) {
      x1 = s.x;
      y1 = s.y;
    }
  };
  const RunResult r = run(spec, cfg, Vector(3, 0.0), Vector(3, 0.0), hooks);
  BoundInputs in = bound_inputs_for(spec, cfg);
  ASSERT_EQ(in.mu, 0.5);
  in.theta = theta_from_first_iterate(spec, x1, y1, cfg.beta0, val);
  const BoundReport rep = compute_constants(in);
  for (const TraceRecord& rec : r.trace) {
    if (rec.t < 2) continue;
    const double beta_prev = cfg.beta0 * std::sqrt(static_cast<double>(rec.t));
    const double lhs = rec.obj + 0.5 * beta_prev * rec.feas2 * rec.feas2 - val;
    ASSERT_LE(lhs, rep.tau(rec.t) + 1e-9) << "t=" << rec.t;
  }
}

}  // namespace
}  // namespace pcgpen
