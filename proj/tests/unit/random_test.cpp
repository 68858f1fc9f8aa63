#include "riesz/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace riesz {
namespace {

TEST(Rng, SameSeedSameSequence) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next(), b.next());
  }
  Rng c(42), d(42);
  EXPECT_EQ(c.gaussianMatrix(7, 5), d.gaussianMatrix(7, 5));
}

TEST(Rng, StreamsDependOnKeys) {
  Rng a = Rng::stream(42, {0, 1, 2});
  Rng b = Rng::stream(42, {0, 1, 2});
  Rng c = Rng::stream(42, {0, 2, 1});
  const auto va = a.next();
  EXPECT_EQ(va, b.next());
  EXPECT_NE(va, c.next());
}

TEST(Rng, UniformInUnitInterval) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
}

TEST(Rng, GaussianMoments) {
  Rng rng(2);
  double s1 = 0.0, s2 = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    s1 += g;
    s2 += g * g;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.03);
}

TEST(Rng, UniformIntCoversInclusiveRange) {
  Rng rng(3);
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 400; ++i) {
    const auto k = rng.uniformInt(2, 5);
    ASSERT_GE(k, 2);
    ASSERT_LE(k, 5);
    ++seen[k - 2];
  }
  for (int c : seen) EXPECT_GT(c, 0);
  EXPECT_EQ(rng.uniformInt(7, 7), 7);
}

TEST(Rng, UnitVectorAndSubspace) {
  Rng rng(4);
  EXPECT_NEAR(rng.unitVector(9).norm(), 1.0, 1e-15);
  const SubspaceBasis b = rng.randomSubspace(10, 4);
  EXPECT_EQ(b.count(), 4);
  EXPECT_LT((b.vectors().transpose() * b.vectors() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_TRUE(rng.randomSubspace(5, 0).isEmpty());
}

}  // namespace
}  // namespace riesz
