#pragma once

// Dense real linear algebra substrate: operators, orthonormal subspace
// bases, projectors, norms and ranks. Everything is backed by Eigen's SVD
// and Householder QR; all values are 64-bit reals.

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <memory>

namespace riesz {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Relative rank threshold used when a call does not supply one.
inline constexpr double kDefaultTol = 1e-10;

/// Dense real matrix with explicit domain (cols) and codomain (rows)
/// dimensions. Entries are row-major and always finite. Immutable.
class Operator {
 public:
  /// Zero operator of the given shape.
  Operator(Index rows, Index cols);
  explicit Operator(RowMatrix entries);
  explicit Operator(const Matrix& entries);

  static Operator fromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Operator identity(Index n);
  static Operator zero(Index rows, Index cols) { return Operator(rows, cols); }

  Index rows() const noexcept { return entries_.rows(); }
  Index cols() const noexcept { return entries_.cols(); }
  const RowMatrix& entries() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

  Operator transpose() const;
  Vector apply(const Vector& x) const;
  Vector applyTranspose(const Vector& y) const;

  friend bool operator==(const Operator& a, const Operator& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_.cols() == b.entries_.cols() &&
           a.entries_ == b.entries_;
  }

 private:
  RowMatrix entries_;
};

/// Orthonormal spanning set of a subspace of R^ambientDim, stored as the
/// columns of a matrix. Orthonormality is checked on construction to 1e-12.
class SubspaceBasis {
 public:
  /// Orthonormality threshold enforced by the constructor.
  static constexpr double kOrthonormalityTol = 1e-12;

  SubspaceBasis(Index ambientDim, Matrix vectors, double tolUsed);

  static SubspaceBasis empty(Index ambientDim, double tolUsed = kDefaultTol);
  static SubspaceBasis full(Index ambientDim, double tolUsed = kDefaultTol);
  /// Orthonormal basis of the span of arbitrary columns (SVD, relative tol).
  static SubspaceBasis spanOf(const Matrix& columns, double tol = kDefaultTol);

  Index ambientDim() const noexcept { return ambientDim_; }
  Index count() const noexcept { return vectors_.cols(); }
  bool isEmpty() const noexcept { return vectors_.cols() == 0; }
  const Matrix& vectors() const noexcept { return vectors_; }
  Vector vector(Index i) const { return vectors_.col(i); }
  double tolUsed() const noexcept { return tolUsed_; }

  /// Orthogonal projection of x onto the span.
  Vector project(const Vector& x) const;
  /// Euclidean distance from x to the span.
  double distance(const Vector& x) const;

 private:
  Index ambientDim_;
  Matrix vectors_;
  double tolUsed_;
};

/// Coordinates of an element of the dual space in the standard dual basis.
/// The dual norm is the Euclidean norm of the coordinates.
class Functional {
 public:
  explicit Functional(Vector coords);

  Index dim() const noexcept { return coords_.size(); }
  const Vector& coords() const noexcept { return coords_; }
  double norm() const { return coords_.norm(); }
  /// Evaluates the functional at x.
  double operator()(const Vector& x) const;

 private:
  Vector coords_;
};

/// The coset x + N, held as a representative and the subspace it is taken
/// modulo. No canonical representative is chosen.
class CosetVector {
 public:
  CosetVector(Vector representative, std::shared_ptr<const SubspaceBasis> nullspace);

  const Vector& representative() const noexcept { return representative_; }
  const SubspaceBasis& nullspace() const noexcept { return *nullspace_; }
  const std::shared_ptr<const SubspaceBasis>& nullspacePtr() const noexcept { return nullspace_; }

 private:
  Vector representative_;
  std::shared_ptr<const SubspaceBasis> nullspace_;
};

/// Numerical rank data from one SVD of A.
struct FundamentalSubspaces {
  std::size_t rank = 0;
  double sigmaMax = 0.0;
  Vector singularValues;
  SubspaceBasis image;      // first `rank` left singular vectors
  SubspaceBasis nullspace;  // trailing right singular vectors
  SubspaceBasis coimage;    // leading right singular vectors (row space)
  SubspaceBasis cokernel;   // trailing left singular vectors
};

FundamentalSubspaces fundamentalSubspaces(const Operator& a, double tol = kDefaultTol);

/// Largest singular value; 0 for the zero operator.
double operatorNorm(const Operator& a);
/// All singular values, descending.
Vector singularValues(const Operator& a);

SubspaceBasis nullspaceBasis(const Operator& a, double tol = kDefaultTol);
SubspaceBasis imageBasis(const Operator& a, double tol = kDefaultTol);
Operator orthoProjector(const SubspaceBasis& basis);

/// Number of singular values strictly above tol * sigma_max.
std::size_t rank(const Operator& a, double tol = kDefaultTol);

/// Minimum-norm minimizer of ||Ax - b|| via the SVD pseudoinverse.
Vector minNormLeastSquares(const Operator& a, const Vector& b, double tol = kDefaultTol);

/// Orthonormal basis of the orthogonal complement (full Householder QR).
SubspaceBasis orthogonalComplement(const SubspaceBasis& basis);

/// Largest principal angle in radians, computed from its sine so small
/// angles keep full relative accuracy. Subspaces of different dimension
/// are at angle pi/2; two empty subspaces are at angle 0.
double largestPrincipalAngle(const SubspaceBasis& a, const SubspaceBasis& b);

/// ||P_N - P_M||_max; 0 when the two bases span the same subspace.
double projectorDistance(const SubspaceBasis& a, const SubspaceBasis& b);

}  // namespace riesz
