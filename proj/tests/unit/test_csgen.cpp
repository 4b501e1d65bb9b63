#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "pcgpen/csgen.hpp"
#include "pcgpen/instance_io.hpp"
#include "pcgpen/oracles.hpp"
#include "pcgpen/rng.hpp"
#include "pcgpen/sweep.hpp"

namespace pcgpen {
namespace {

struct Moment {
  double mean;
  double se;
};

Moment moment(const Vector& xs, const std::function<double(double)>& f) {
  double s = 0.0;
  double s2 = 0.0;
  for (double x : xs) {
    const double v = f(x);
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  return {mean, std::sqrt((s2 / n - mean * mean) / (n - 1.0))};
}

TEST(SampleGgd, SecondMomentForP2) {
  const Vector xs = sample_ggd(2.0, 100000, 1);
  const Moment m = moment(xs, [](double x) { return x * x; });
  EXPECT_NEAR(m.mean, 0.5, 3.0 * m.se);
  EXPECT_NEAR(oracles::ggd_abs_moment_quadrature(2.0, 2.0), 0.5, 1e-9);
}

TEST(SampleGgd, MomentForP15) {
  const Vector xs = sample_ggd(1.5, 100000, 2);
  const Moment m = moment(xs, [](double x) { return std::pow(std::abs(x), 1.5); });
  EXPECT_NEAR(m.mean, 2.0 / 3.0, 3.0 * m.se);
  EXPECT_NEAR(oracles::ggd_abs_moment_quadrature(1.5, 1.5), 2.0 / 3.0, 1e-9);
}

TEST(SampleGgd, SignSymmetry) {
  const Vector xs = sample_ggd(1.5, 100000, 3);
  const Moment m = moment(xs, [](double x) { return x; });
  EXPECT_NEAR(m.mean, 0.0, 3.0 * m.se);
}

TEST(SampleGgd, RejectsBadShape) { EXPECT_THROW(sample_ggd(2.5, 10, 0), std::invalid_argument); }

TEST(GenerateInstance, InvariantsOnRandomShapes) {
  CounterRng rng = CounterRng::stream(4, "shapes");
  for (int c = 0; c < 100; ++c) {
    const std::size_t m = 1 + rng.below(12);
    const std::size_t n = m + rng.below(20);
    const std::size_t k = 1 + rng.below(n);
    const double p = 1.0 + 0.05 + 0.95 * rng.uniform();
    const CsInstance inst = generate_instance(m, n, k, p, rng.next_u64() % 1000);
    ASSERT_EQ(inst.m(), m);
    ASSERT_EQ(inst.n(), n);
    ASSERT_EQ(inst.b.size(), m);
    std::size_t nnz = 0;
    for (double v : inst.x_orig) nnz += v != 0.0 ? 1 : 0;
    EXPECT_EQ(nnz, k);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += inst.A.at(i, j) * inst.A.at(i, j);
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
    EXPECT_GT(inst.sigma, 0.0);
    EXPECT_LT(inst.sigma, norm_p(inst.b, p));
    const double res = norm_p(subtract(inst.A.apply(inst.x_orig), inst.b), p);
    EXPECT_NEAR(inst.sigma, kSigmaFactor * res, 1e-14 * inst.sigma);
  }
}

TEST(GenerateInstance, NoiseIdentity) {
  const CsInstance inst = generate_instance(30, 80, 5, 1.5, 11);
  CounterRng noise = CounterRng::stream(inst.seed, "noise");
  const Vector eps = sample_ggd(1.5, 30, noise);
  const double res = norm_p(subtract(inst.A.apply(inst.x_orig), inst.b), 1.5);
  EXPECT_NEAR(res, kNoiseScale * norm_p(eps, 1.5), 1e-12 * res);
}

TEST(GenerateInstance, PureFunctionOfArguments) {
  const CsInstance a = generate_instance(20, 50, 4, 1.5, 9);
  const CsInstance b = generate_instance(20, 50, 4, 1.5, 9);
  EXPECT_EQ(a.A.entries(), b.A.entries());
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.sigma), std::bit_cast<std::uint64_t>(b.sigma));
  const CsInstance c = generate_instance(20, 50, 4, 1.5, 10);
  EXPECT_NE(a.A.entries(), c.A.entries());
}

TEST(GenerateInstance, PinnedDraw) {
  // FNV-1a of the serialized instance. Normals and gamma draws go through
  // libm, so a different math library may legitimately change this value.
  const CsInstance inst = generate_instance(3, 5, 2, 1.5, 0);
  std::ostringstream os;
  write_instance(os, inst);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) h = (h ^ ch) * 1099511628211ULL;
  EXPECT_EQ(h, 4495665769564846088ULL);
}

TEST(CounterRng, PinnedIntegerStream) {
  CounterRng a = CounterRng::stream(42, "matrix");
  CounterRng b = CounterRng::stream(42, "matrix");
  CounterRng c = CounterRng::stream(42, "noise");
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  EXPECT_EQ(mix64(0), 0u);
  EXPECT_EQ(mix64(1), 0x5692161d100b05e5ULL);
}

TEST(GenerateInstance, InvalidArguments) {
  EXPECT_THROW(generate_instance(0, 5, 1, 1.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_instance(3, 5, 6, 1.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_instance(6, 5, 1, 1.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_instance(3, 5, 1, 1.0, 0), std::invalid_argument);
}

TEST(FullSizes, DefaultPlan) {
  const SweepPlan plan = SweepPlan::full_default();
  ASSERT_FALSE(plan.sizes.empty());
  EXPECT_EQ(plan.sizes.front().m, 720u * 4);
  EXPECT_EQ(plan.sizes.front().n, 2560u * 4);
  EXPECT_EQ(plan.sizes.front().k, 80u * 4);
}

TEST(MinNormSolution, Identity) {
  const Vector x = min_norm_solution(LinearMap::identity(3), Vector{1, -2, 3});
  EXPECT_NEAR(x[0], 1.0, 1e-14);
  EXPECT_NEAR(x[1], -2.0, 1e-14);
  EXPECT_NEAR(x[2], 3.0, 1e-14);
}

TEST(MinNormSolution, ZeroPaddedColumns) {
  const LinearMap a = LinearMap::dense(2, 5, {1, 0, 0, 0, 0, 0, 1, 0, 0, 0});
  const Vector x = min_norm_solution(a, Vector{2, 3});
  EXPECT_NEAR(x[0], 2.0, 1e-14);
  EXPECT_NEAR(x[1], 3.0, 1e-14);
  for (std::size_t i = 2; i < 5; ++i) EXPECT_EQ(x[i], 0.0);
}

TEST(MinNormSolution, MinimumNormAmongSolutions) {
  const CsInstance inst = generate_instance(5, 20, 2, 2.0, 4);
  const Vector xh = min_norm_solution(inst.A, inst.b);
  EXPECT_LT(norm2(subtract(inst.A.apply(xh), inst.b)), 1e-10);
  CounterRng rng = CounterRng::stream(5, "null");
  for (int c = 0; c < 100; ++c) {
    Vector z(20);
    for (double& v : z) v = rng.normal();
    // Project z onto null(A): z - A^+ A z.
    const Vector back = min_norm_solution(inst.A, inst.A.apply(z));
    Vector x = xh;
    for (std::size_t i = 0; i < 20; ++i) x[i] += z[i] - back[i];
    ASSERT_LT(norm2(subtract(inst.A.apply(x), inst.b)), 1e-9);
    EXPECT_LE(norm2(xh), norm2(x) + 1e-12);
  }
}

TEST(Reformulate, SpecAndConstraintQualification) {
  const CsInstance inst = generate_instance(12, 40, 3, 1.5, 6);
  const CsProblem prob = reformulate(inst);
  EXPECT_EQ(prob.spec.x_dim(), 40u);
  EXPECT_EQ(prob.spec.y_dim(), 12u);
  EXPECT_TRUE(std::isfinite(prob.spec.D_f));
  EXPECT_TRUE(std::isfinite(prob.spec.D_g));
  const double l1 = norm1(prob.x_hat);
  EXPECT_DOUBLE_EQ(prob.box_radius, l1 + 1.0);
  EXPECT_LT(norm_inf(prob.x_hat), prob.box_radius);
  EXPECT_LT(norm2(subtract(inst.A.apply(prob.x_hat), inst.b)), 1e-10);
  EXPECT_TRUE(prob.spec.g2.contains(Vector(12, 0.0)));
  EXPECT_NEAR(prob.spec.D_f, 2.0 * (l1 + 1.0) * std::sqrt(40.0), 1e-12 * prob.spec.D_f);
  EXPECT_NEAR(prob.spec.D_g, 2.0 * inst.sigma * std::pow(12.0, std::max(0.0, 0.5 - 1.0 / 1.5)), 1e-14);
}

TEST(InstanceIo, RoundTrip) {
  const CsInstance inst = generate_instance(7, 13, 3, 1.5, 21);
  std::stringstream ss;
  write_instance(ss, inst);
  const CsInstance back = read_instance(ss);
  EXPECT_EQ(back.A.entries(), inst.A.entries());
  EXPECT_EQ(back.b, inst.b);
  EXPECT_EQ(back.x_orig, inst.x_orig);
  EXPECT_EQ(back.sigma, inst.sigma);
  EXPECT_EQ(back.p, inst.p);
  EXPECT_EQ(back.k, inst.k);
  EXPECT_EQ(back.seed, inst.seed);
}

TEST(InstanceIo, RejectsBadMagic) {
  std::stringstream ss("XXXX0000000000000000");
  EXPECT_THROW(read_instance(ss), std::runtime_error);
}

TEST(InstanceIo, SaveWritesSidecar) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "pcgpen_io_test.bin").string();
  const CsInstance inst = generate_instance(4, 6, 2, 2.0, 1);
  save_instance(path, inst);
  EXPECT_TRUE(std::filesystem::exists(path + ".meta"));
  const CsInstance back = load_instance(path);
  EXPECT_EQ(back.b, inst.b);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".meta");
}

}  // namespace
}  // namespace pcgpen
