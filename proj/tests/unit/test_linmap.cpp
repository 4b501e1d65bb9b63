#include <gtest/gtest.h>

#include "pcgpen/linmap.hpp"
#include "pcgpen/rng.hpp"
#include "test_oracles.hpp"

namespace pcgpen {
namespace {

void expect_vec(const Vector& got, const Vector& want, double tol = 0.0) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

LinearMap random_dense(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  CounterRng rng = CounterRng::stream(seed, "test-matrix");
  std::vector<double> a(rows * cols);
  for (double& v : a) v = rng.normal();
  return LinearMap::dense(rows, cols, a);
}

TEST(LinearMapApply, Identity) { expect_vec(LinearMap::identity(3).apply(Vector{1, 2, 3}), {1, 2, 3}); }

TEST(LinearMapApply, NegatedIdentity) {
  expect_vec(LinearMap::negated_identity(2).apply(Vector{1, -4}), {-1, 4});
}

TEST(LinearMapApply, Dense2x2) {
  expect_vec(LinearMap::dense(2, 2, {1, 2, 0, 1}).apply(Vector{1, 1}), {3, 1});
}

TEST(LinearMapApply, DimensionMismatchThrows) {
  EXPECT_THROW(LinearMap::identity(3).apply(Vector{1, 2}), std::invalid_argument);
  EXPECT_THROW(LinearMap::dense(2, 2, {1, 2, 3}), std::invalid_argument);
}

TEST(LinearMapAdjoint, Identity) {
  expect_vec(LinearMap::identity(3).adjoint_apply(Vector{5, 0, 1}), {5, 0, 1});
}

TEST(LinearMapAdjoint, DenseTransposeColumn) {
  expect_vec(LinearMap::dense(2, 2, {1, 2, 0, 1}).adjoint_apply(Vector{1, 0}), {1, 2});
}

TEST(LinearMapAdjoint, ZeroMap) { expect_vec(LinearMap::zero(2, 3).adjoint_apply(Vector{1, 1}), {0, 0, 0}); }

TEST(LinearMapAdjoint, InnerProductIdentity) {
  const LinearMap a = random_dense(4, 7, 1);
  CounterRng rng = CounterRng::stream(2, "vectors");
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(7);
    Vector w(4);
    for (double& v : x) v = rng.normal();
    for (double& v : w) v = rng.normal();
    EXPECT_NEAR(dot(a.apply(x), w), dot(x, a.adjoint_apply(w)), 1e-12);
  }
}

TEST(LambdaMaxSq, Identity) { EXPECT_NEAR(lambda_max_sq(LinearMap::identity(4)), 1.0, 1e-8); }

TEST(LambdaMaxSq, DenseDiagonal) { EXPECT_NEAR(lambda_max_sq(LinearMap::diagonal({1, 2})), 4.0, 1e-6); }

TEST(LambdaMaxSq, ZeroMap) { EXPECT_EQ(lambda_max_sq(LinearMap::zero(3, 2)), 0.0); }

TEST(LambdaMaxSq, MatchesJacobiOnRandom3x5) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMap a = random_dense(3, 5, seed);
    std::vector<double> gram(25, 0.0);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t r = 0; r < 3; ++r) gram[i * 5 + j] += a.at(r, i) * a.at(r, j);
    const double want = testing::jacobi_max_eigenvalue(gram, 5);
    EXPECT_NEAR(lambda_max_sq(a), want, 1e-6 * want) << "seed " << seed;
  }
}

TEST(LambdaMaxSq, SharedWithTranspose) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMap a = random_dense(6, 11, seed + 10);
    const double l = lambda_max_sq(a);
    EXPECT_NEAR(lambda_max_sq(a.transposed()), l, 1e-6 * l);
  }
}

TEST(LambdaMaxSq, DeterministicGivenSeed) {
  const LinearMap a = random_dense(8, 9, 3);
  const double first = lambda_max_sq(a, 1e-10, 5000, 42);
  const double second = lambda_max_sq(a, 1e-10, 5000, 42);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(first), std::bit_cast<std::uint64_t>(second));
}

TEST(PowerIteration, RayleighQuotientMonotone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PowerIterationResult r = power_iteration(random_dense(10, 15, seed), {1e-12, 5000, seed});
    EXPECT_TRUE(r.monotone) << "seed " << seed;
    EXPECT_TRUE(r.converged) << "seed " << seed;
  }
}

TEST(LambdaMaxSq, UpperIsInflated) {
  const LinearMap a = LinearMap::diagonal({1, 3});
  EXPECT_GE(lambda_max_sq_upper(a), 9.0);
  EXPECT_NEAR(lambda_max_sq_upper(a), 9.0 * (1.0 + kLambdaInflation), 1e-8);
}

}  // namespace
}  // namespace pcgpen
