#include "oracles.hpp"

#include "riesz/errors.hpp"
#include "riesz/operator.hpp"
#include "riesz/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace riesz {
namespace {

double maxAbs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

TEST(Operator, RejectsNonFiniteEntries) {
  RowMatrix m = RowMatrix::Zero(2, 2);
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Operator{m}, InvalidInput);
  m(1, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Operator{m}, InvalidInput);
  EXPECT_THROW(Operator(0, 3), InvalidInput);
}

TEST(Operator, DoubleTransposeIsIdentity) {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const Operator a(rng.gaussianMatrix(1 + t, 2 + 2 * t));
    EXPECT_EQ(a.transpose().transpose(), a);
  }
}

TEST(Operator, ApplyChecksDimensions) {
  const Operator a = Operator::fromRows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_THROW(a.apply(Vector::Ones(2)), DimensionMismatch);
  EXPECT_THROW(a.applyTranspose(Vector::Ones(3)), DimensionMismatch);
  EXPECT_EQ(a.apply(Vector::Ones(3)), (Vector(2) << 6, 15).finished());
}

TEST(OperatorNorm, DiagonalAndZero) {
  EXPECT_DOUBLE_EQ(operatorNorm(Operator::fromRows({{2, 0}, {0, 0}})), 2.0);
  EXPECT_EQ(operatorNorm(Operator::zero(3, 5)), 0.0);
  EXPECT_EQ(operatorNorm(Operator::zero(1, 1)), 0.0);
}

TEST(OperatorNorm, AllOnesAgainstCharacteristicPolynomial) {
  const Operator a = Operator::fromRows({{1, 1}, {1, 1}});
  const double expected = oracle::norm2x2(Matrix(a.entries()));
  EXPECT_NEAR(expected, 2.0, 1e-15);
  EXPECT_NEAR(operatorNorm(a), expected, 1e-14);
}

TEST(OperatorNorm, AgreesWithPowerIteration) {
  Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    const Matrix m = rng.gaussianMatrix(8 + t, 12);
    EXPECT_NEAR(operatorNorm(Operator(m)), oracle::powerNorm(m), 1e-10 * oracle::powerNorm(m));
  }
}

TEST(OperatorNorm, RejectsNonFiniteThroughConstruction) {
  Matrix m = Matrix::Ones(2, 2);
  m(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(operatorNorm(Operator(m)), InvalidInput);
}

TEST(NullspaceBasis, HandExamples) {
  const SubspaceBasis n1 = nullspaceBasis(Operator::fromRows({{1, 0}, {0, 0}}), 1e-10);
  ASSERT_EQ(n1.count(), 1);
  EXPECT_NEAR(std::abs(n1.vector(0)(1)), 1.0, 1e-15);
  EXPECT_NEAR(n1.vector(0)(0), 0.0, 1e-15);

  EXPECT_EQ(nullspaceBasis(Operator::identity(3), 1e-10).count(), 0);

  const Operator a = Operator::fromRows({{1, 1}, {2, 2}});
  const SubspaceBasis n2 = nullspaceBasis(a, 1e-10);
  ASSERT_EQ(n2.count(), 1);
  const Matrix z = oracle::gramSchmidt(oracle::nullspace(Matrix(a.entries())));
  const Vector expected = (Vector(2) << 1, -1).finished() / std::sqrt(2.0);
  EXPECT_LT(maxAbs(oracle::projector(z) - expected * expected.transpose()), 1e-15);
  EXPECT_LT(maxAbs(Matrix(orthoProjector(n2).entries()) - oracle::projector(z)), 1e-14);
}

TEST(NullspaceBasis, ZeroOperatorGivesStandardBasis) {
  const SubspaceBasis n = nullspaceBasis(Operator::zero(2, 4));
  EXPECT_EQ(n.count(), 4);
  EXPECT_EQ(n.vectors(), Matrix(Matrix::Identity(4, 4)));
}

TEST(NullspaceBasis, RejectsNonPositiveTolerance) {
  EXPECT_THROW(nullspaceBasis(Operator::identity(2), 0.0), InvalidInput);
  EXPECT_THROW(nullspaceBasis(Operator::identity(2), -1.0), InvalidInput);
}

TEST(ImageBasis, HandExamples) {
  const SubspaceBasis i1 = imageBasis(Operator::fromRows({{1, 0}, {0, 0}}));
  ASSERT_EQ(i1.count(), 1);
  EXPECT_NEAR(std::abs(i1.vector(0)(0)), 1.0, 1e-15);

  EXPECT_TRUE(imageBasis(Operator::zero(3, 2)).isEmpty());

  const SubspaceBasis i2 = imageBasis(Operator::fromRows({{1, 2}, {2, 4}}));
  ASSERT_EQ(i2.count(), 1);
  const Vector expected = (Vector(2) << 1, 2).finished() / std::sqrt(5.0);
  EXPECT_NEAR(std::abs(i2.vector(0).dot(expected)), 1.0, 1e-15);
}

TEST(OrthoProjector, HandExamples) {
  const SubspaceBasis e1(2, (Matrix(2, 1) << 1, 0).finished(), kDefaultTol);
  EXPECT_EQ(Matrix(orthoProjector(e1).entries()), (Matrix(2, 2) << 1, 0, 0, 0).finished());

  EXPECT_EQ(Matrix(orthoProjector(SubspaceBasis::empty(3)).entries()), Matrix(Matrix::Zero(3, 3)));

  const double s = 1.0 / std::sqrt(2.0);
  const SubspaceBasis diag(2, (Matrix(2, 1) << s, s).finished(), kDefaultTol);
  EXPECT_LT(maxAbs(Matrix(orthoProjector(diag).entries()) - Matrix::Constant(2, 2, 0.5)), 1e-15);
}

TEST(OrthoProjector, IdempotentAndSymmetric) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Index d = 1 + t;
    const SubspaceBasis b = rng.randomSubspace(d, rng.uniformInt(0, d));
    const Matrix p = orthoProjector(b).entries();
    EXPECT_LT(maxAbs(p * p - p), 1e-12);
    EXPECT_LT(maxAbs(p - p.transpose()), 1e-12);
  }
}

TEST(Rank, HandExamples) {
  EXPECT_EQ(rank(Operator::identity(4)), 4u);
  EXPECT_EQ(rank(Operator::zero(3, 5)), 0u);
  const Operator a = Operator::fromRows({{1, 2}, {2, 4}, {3, 6}});
  EXPECT_EQ(oracle::rank(Matrix(a.entries())), 1);
  EXPECT_EQ(rank(a), 1u);
}

TEST(Rank, RelativeThresholdSeparatesSmallSingularValues) {
  const Operator a = Operator(Matrix((Vector(3) << 1.0, 1e-8, 1e-12).finished().asDiagonal()));
  EXPECT_EQ(rank(a, 1e-10), 2u);
  EXPECT_EQ(rank(a, 1e-6), 1u);
  EXPECT_EQ(rank(a, 1e-13), 3u);
}

TEST(Rank, NullityPlusRankIsColumnCount) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Index r = rng.uniformInt(1, 40);
    const Index c = rng.uniformInt(1, 40);
    Matrix m = rng.gaussianMatrix(r, c);
    if (t % 3 == 0 && c > 1) {
      m.col(c - 1) = m.col(0);
    }
    const Operator a(m);
    EXPECT_EQ(static_cast<Index>(rank(a)) + nullspaceBasis(a).count(), c);
    EXPECT_EQ(static_cast<int>(rank(a)), oracle::rank(m));
  }
}

TEST(MinNormLeastSquares, HandExamples) {
  EXPECT_EQ(minNormLeastSquares(Operator::identity(2), (Vector(2) << 3, 4).finished()),
            (Vector(2) << 3, 4).finished());
  const Vector x = minNormLeastSquares(Operator::fromRows({{1, 0}, {0, 0}}), (Vector(2) << 5, 7).finished());
  EXPECT_NEAR(x(0), 5.0, 1e-15);
  EXPECT_NEAR(x(1), 0.0, 1e-15);

  // Minimum-norm point of x1 + x2 = 4 via the normal equations x = A^T (A A^T)^-1 b.
  const Matrix a = (Matrix(1, 2) << 1, 1).finished();
  const Vector b = (Vector(1) << 4).finished();
  const Vector expected = a.transpose() * ((a * a.transpose()).inverse() * b);
  EXPECT_NEAR(expected(0), 2.0, 1e-15);
  const Vector got = minNormLeastSquares(Operator(a), b);
  EXPECT_NEAR((got - expected).norm(), 0.0, 1e-14);
}

TEST(MinNormLeastSquares, DimensionMismatch) {
  EXPECT_THROW(minNormLeastSquares(Operator::identity(3), Vector::Ones(2)), DimensionMismatch);
}

TEST(MinNormLeastSquares, ResidualOrthogonalToImageAndSolutionInRowSpace) {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const Index r = rng.uniformInt(2, 30);
    const Index c = rng.uniformInt(2, 30);
    Matrix m = rng.gaussianMatrix(r, c);
    m.col(c - 1) = m.col(0) * 2.0;  // rank deficient
    const Operator a(m);
    const Vector b = rng.gaussianVector(r);
    const Vector x = minNormLeastSquares(a, b);
    const Vector residual = b - a.apply(x);
    const SubspaceBasis image = imageBasis(a);
    EXPECT_LE(image.project(residual).norm(), 1e-10 * b.norm());
    const SubspaceBasis rows = imageBasis(a.transpose());
    EXPECT_LE(rows.distance(x), 1e-10 * std::max(1.0, x.norm()));
  }
}

TEST(NormProperty, TransposeHasSameNorm) {
  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    const Operator a(rng.gaussianMatrix(rng.uniformInt(1, 80), rng.uniformInt(1, 80)));
    const double n = operatorNorm(a);
    EXPECT_LE(std::abs(operatorNorm(a.transpose()) - n), 1e-10 * n);
  }
}

TEST(SubspaceBasis, RejectsNonOrthonormalVectors) {
  EXPECT_THROW(SubspaceBasis(2, (Matrix(2, 1) << 1, 1).finished(), kDefaultTol), InvalidInput);
  EXPECT_THROW(SubspaceBasis(2, Matrix::Identity(3, 3), kDefaultTol), DimensionMismatch);
}

TEST(OrthogonalComplement, SpansTheRest) {
  Rng rng(29);
  for (int t = 0; t < 10; ++t) {
    const Index d = 2 + t;
    const SubspaceBasis b = rng.randomSubspace(d, rng.uniformInt(0, d));
    const SubspaceBasis c = orthogonalComplement(b);
    EXPECT_EQ(b.count() + c.count(), d);
    const Matrix sum = Matrix(orthoProjector(b).entries()) + Matrix(orthoProjector(c).entries());
    EXPECT_LT(maxAbs(sum - Matrix::Identity(d, d)), 1e-13);
  }
}

TEST(PrincipalAngle, KnownAngleAndConventions) {
  const double theta = 1e-9;
  const SubspaceBasis a(3, (Matrix(3, 1) << 1, 0, 0).finished(), kDefaultTol);
  const SubspaceBasis b(3, (Matrix(3, 1) << std::cos(theta), std::sin(theta), 0).finished(), kDefaultTol);
  EXPECT_NEAR(largestPrincipalAngle(a, b), theta, 1e-15);
  EXPECT_EQ(largestPrincipalAngle(a, a), 0.0);
  EXPECT_EQ(largestPrincipalAngle(SubspaceBasis::empty(3), SubspaceBasis::empty(3)), 0.0);
  EXPECT_DOUBLE_EQ(largestPrincipalAngle(a, SubspaceBasis::full(3)), std::numbers::pi / 2);
}

TEST(Functional, EvaluatesAsDotProduct) {
  const Functional f((Vector(3) << 1, 2, 3).finished());
  EXPECT_EQ(f((Vector(3) << 1, 1, 1).finished()), 6.0);
  EXPECT_THROW(f(Vector::Ones(2)), DimensionMismatch);
  EXPECT_THROW(Functional(Vector(0)), InvalidInput);
}

TEST(CosetVector, RequiresMatchingDimension) {
  auto n = std::make_shared<const SubspaceBasis>(SubspaceBasis::empty(3));
  EXPECT_THROW(CosetVector(Vector::Ones(2), n), DimensionMismatch);
  EXPECT_THROW(CosetVector(Vector::Ones(3), nullptr), InvalidInput);
}

}  // namespace
}  // namespace riesz
