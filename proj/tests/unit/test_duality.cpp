#include <gtest/gtest.h>

#include "pcgpen/cs_run.hpp"
#include "pcgpen/csgen.hpp"
#include "pcgpen/duality.hpp"
#include "pcgpen/oracles.hpp"

namespace pcgpen {
namespace {

TEST(DualValue, ZeroMultiplier) {
  const CsDualContext ctx(LinearMap::identity(2), Vector{1, 0}, 1.0, 2.0);
  EXPECT_EQ(dual_value(ctx, Vector{0, 0}), 0.0);
}

TEST(DualValue, DirectSubstitution) {
  const CsDualContext ctx(LinearMap::identity(2), Vector{1, 0}, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(ctx.q, 2.0);
  EXPECT_DOUBLE_EQ(dual_value(ctx, Vector{-1, 0}), 0.0);
}

TEST(FeasibleDualPoint, ZeroResidual) {
  const CsDualContext ctx(LinearMap::identity(2), Vector{1, 2}, 0.5, 1.5);
  const Vector l = feasible_dual_point(ctx, Vector{1, 2}, Vector{0, 0}, 7.0);
  for (double v : l) EXPECT_EQ(v, 0.0);
}

TEST(FeasibleDualPoint, ScalesToUnitAdjointNorm) {
  const Vector scaled = scale_to_dual_feasible(Vector{4.0, -2.0}, 4.0);
  EXPECT_DOUBLE_EQ(scaled[0], 1.0);
  EXPECT_DOUBLE_EQ(scaled[1], -0.5);
  const Vector kept = scale_to_dual_feasible(Vector{0.5, 0.25}, 0.5);
  EXPECT_EQ(kept, (Vector{0.5, 0.25}));

  const CsDualContext ctx(LinearMap::dense(2, 2, {1, 1, 0, 1}), Vector{0, 0}, 0.5, 1.5);
  const Vector l = feasible_dual_point(ctx, Vector{3, 1}, Vector{0, 0}, 1.0);
  EXPECT_NEAR(norm_inf(ctx.A.adjoint_apply(l)), 1.0, 1e-15);
}

TEST(FeasibleDualPoint, PreservesDirection) {
  const CsDualContext ctx(LinearMap::dense(2, 3, {1, 2, -1, 0.5, 0, 3}), Vector{0.2, -0.1}, 0.5, 1.5);
  const Vector x{1.0, -0.5, 2.0};
  const Vector y{0.1, 0.05};
  const double beta = 3.0;
  const Vector l = feasible_dual_point(ctx, x, y, beta);
  const Vector ax = ctx.A.apply(x);
  Vector raw(2);
  for (std::size_t i = 0; i < 2; ++i) raw[i] = beta * (ax[i] - ctx.b[i] - y[i]);
  const double ratio = l[0] / raw[0];
  EXPECT_GT(ratio, 0.0);
  EXPECT_LT(ratio, 1.0);
  EXPECT_NEAR(l[1] / raw[1], ratio, 1e-12);
}

TEST(GapR, ZeroPair) {
  const CsDualContext ctx(LinearMap::identity(2), Vector{1, 1}, 0.5, 2.0);
  EXPECT_EQ(gap_r(ctx, Vector{0, 0}, Vector{0, 0}), 0.0);
}

TEST(GapR, DirectSubstitution) { EXPECT_NEAR(gap_r_from_values(2.0, 1.9), 0.05, 1e-15); }

TEST(GapR, DenominatorAtLeastOne) {
  EXPECT_NEAR(gap_r_from_values(1e-3, -1e-3), 2e-3, 1e-18);
  EXPECT_GE(gap_r_from_values(0.0, -5.0), 0.0);
}

TEST(GapR, ExactOptimalPairOneDimensional) {
  // min |x| s.t. |x - 1| <= 0.4: x* = 0.6; the dual optimum is l = -1.
  const CsDualContext ctx(LinearMap::identity(1), Vector{1.0}, 0.4, 2.0);
  EXPECT_NEAR(dual_value(ctx, Vector{-1.0}), 0.6, 1e-15);
  EXPECT_LE(gap_r(ctx, Vector{0.6}, Vector{-1.0}), 1e-6);
}

TEST(GapR, GridOptimalPairTinyInstance) {
  const CsInstance inst = generate_instance(2, 3, 1, 2.0, 3);
  const oracles::ReferenceSolution ref = oracles::reference_solve_tiny(inst);
  const CsDualContext ctx(inst.A, inst.b, inst.sigma, inst.p);
  EXPECT_LE(gap_r(ctx, ref.x_star, ref.lambda_bar), 1e-6);
}

TEST(WeakDuality, IteratesOnTinyInstances) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const CsInstance inst = generate_instance(2, 3, 1, 1.5, seed);
    const oracles::ReferenceSolution ref = oracles::reference_solve_tiny(inst);
    const CsProblem prob = reformulate(inst);
    SolverConfig cfg = cs_default_config(1.0);
    cfg.record_every = 1;
    cfg.max_iters = 3000;
    CsRunOptions ro;
    ro.accuracy_criterion = false;
    const CsRunResult res = solve_cs(prob, cfg, ro);
    for (const TraceRecord& rec : res.run.trace) {
      if (!rec.dual) continue;
      ASSERT_LE(*rec.dual, ref.val + 1e-9) << "seed " << seed << " t=" << rec.t;
      ASSERT_GE(*rec.gap_r, 0.0);
    }
  }
}

}  // namespace
}  // namespace pcgpen
