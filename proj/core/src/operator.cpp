#include "riesz/operator.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace riesz {

namespace {

void requireFinite(const auto& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

void requireTol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidInput("tolerance must be positive and finite");
  }
}

// Jacobi is more accurate on small matrices; divide-and-conquer scales.
constexpr Index kJacobiLimit = 200;

struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
};

Svd fullSvd(const Matrix& m) {
  constexpr unsigned kFlags = Eigen::ComputeFullU | Eigen::ComputeFullV;
  if (std::max(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<Matrix> svd(m, kFlags);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
  }
  Eigen::BDCSVD<Matrix> svd(m, kFlags);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Vector valuesOnly(const Matrix& m) {
  if (m.size() == 0) {
    return Vector();
  }
  if (std::max(m.rows(), m.cols()) <= kJacobiLimit) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues();
  }
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

std::size_t countAbove(const Vector& sigma, double tol) {
  if (sigma.size() == 0 || sigma(0) == 0.0) {
    return 0;
  }
  const double cut = tol * sigma(0);
  std::size_t r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) {
      ++r;
    }
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Index rows, Index cols) {
  if (rows < 1 || cols < 1) {
    throw InvalidInput("operator dimensions must be positive");
  }
  entries_ = RowMatrix::Zero(rows, cols);
}

Operator::Operator(RowMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw InvalidInput("operator dimensions must be positive");
  }
  requireFinite(entries_, "operator");
}

Operator::Operator(const Matrix& entries) : Operator(RowMatrix(entries)) {}

Operator Operator::fromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  RowMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) {
      throw InvalidInput("ragged operator rows");
    }
    Index j = 0;
    for (double x : row) {
      m(i, j++) = x;
    }
    ++i;
  }
  return Operator(std::move(m));
}

Operator Operator::identity(Index n) {
  if (n < 1) {
    throw InvalidInput("identity dimension must be positive");
  }
  return Operator(RowMatrix(RowMatrix::Identity(n, n)));
}

Operator Operator::transpose() const { return Operator(RowMatrix(entries_.transpose())); }

Vector Operator::apply(const Vector& x) const {
  if (x.size() != cols()) {
    throw DimensionMismatch("operator apply: vector has dimension " + std::to_string(x.size()) +
                            ", expected " + std::to_string(cols()));
  }
  return entries_ * x;
}

Vector Operator::applyTranspose(const Vector& y) const {
  if (y.size() != rows()) {
    throw DimensionMismatch("operator transpose apply: vector has dimension " +
                            std::to_string(y.size()) + ", expected " + std::to_string(rows()));
  }
  return entries_.transpose() * y;
}

// ---------------------------------------------------------------------------
// SubspaceBasis

SubspaceBasis::SubspaceBasis(Index ambientDim, Matrix vectors, double tolUsed)
    : ambientDim_(ambientDim), vectors_(std::move(vectors)), tolUsed_(tolUsed) {
  if (ambientDim_ < 1) {
    throw InvalidInput("subspace ambient dimension must be positive");
  }
  if (vectors_.cols() == 0) {
    vectors_.resize(ambientDim_, 0);
  }
  if (vectors_.rows() != ambientDim_) {
    throw DimensionMismatch("subspace vectors do not match the ambient dimension");
  }
  if (vectors_.cols() > ambientDim_) {
    throw InvalidInput("more basis vectors than the ambient dimension");
  }
  requireFinite(vectors_, "subspace basis");
  if (vectors_.cols() > 0) {
    const Matrix gram = vectors_.transpose() * vectors_;
    const double defect =
        (gram - Matrix::Identity(vectors_.cols(), vectors_.cols())).cwiseAbs().maxCoeff();
    if (defect > kOrthonormalityTol) {
      throw InvalidInput("subspace basis is not orthonormal");
    }
  }
}

SubspaceBasis SubspaceBasis::empty(Index ambientDim, double tolUsed) {
  return SubspaceBasis(ambientDim, Matrix(ambientDim, 0), tolUsed);
}

SubspaceBasis SubspaceBasis::full(Index ambientDim, double tolUsed) {
  return SubspaceBasis(ambientDim, Matrix::Identity(ambientDim, ambientDim), tolUsed);
}

SubspaceBasis SubspaceBasis::spanOf(const Matrix& columns, double tol) {
  if (columns.cols() == 0) {
    return empty(columns.rows(), tol);
  }
  return imageBasis(Operator(columns), tol);
}

Vector SubspaceBasis::project(const Vector& x) const {
  if (x.size() != ambientDim_) {
    throw DimensionMismatch("projection: vector does not match the ambient dimension");
  }
  if (vectors_.cols() == 0) {
    return Vector::Zero(ambientDim_);
  }
  return vectors_ * (vectors_.transpose() * x);
}

double SubspaceBasis::distance(const Vector& x) const { return (x - project(x)).norm(); }

// ---------------------------------------------------------------------------
// Functional and CosetVector

Functional::Functional(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) {
    throw InvalidInput("functional dimension must be positive");
  }
  requireFinite(coords_, "functional");
}

double Functional::operator()(const Vector& x) const {
  if (x.size() != coords_.size()) {
    throw DimensionMismatch("functional evaluated on a vector of the wrong dimension");
  }
  return coords_.dot(x);
}

CosetVector::CosetVector(Vector representative, std::shared_ptr<const SubspaceBasis> nullspace)
    : representative_(std::move(representative)), nullspace_(std::move(nullspace)) {
  if (!nullspace_) {
    throw InvalidInput("coset requires a nullspace basis");
  }
  if (representative_.size() != nullspace_->ambientDim()) {
    throw DimensionMismatch("coset representative does not match the nullspace ambient dimension");
  }
  requireFinite(representative_, "coset representative");
}

// ---------------------------------------------------------------------------
// Operations

FundamentalSubspaces fundamentalSubspaces(const Operator& a, double tol) {
  requireTol(tol);
  const Index m = a.rows();
  const Index n = a.cols();
  const Svd svd = fullSvd(Matrix(a.entries()));
  const std::size_t r = countAbove(svd.sigma, tol);
  const Index ri = static_cast<Index>(r);
  const double sigmaMax = svd.sigma.size() > 0 ? svd.sigma(0) : 0.0;
  if (r == 0) {
    // Zero-operator convention: full nullspace and cokernel, empty image.
    return {0,
            sigmaMax,
            svd.sigma,
            SubspaceBasis::empty(m, tol),
            SubspaceBasis::full(n, tol),
            SubspaceBasis::empty(n, tol),
            SubspaceBasis::full(m, tol)};
  }
  return {r,
          sigmaMax,
          svd.sigma,
          SubspaceBasis(m, svd.u.leftCols(ri), tol),
          SubspaceBasis(n, svd.v.rightCols(n - ri), tol),
          SubspaceBasis(n, svd.v.leftCols(ri), tol),
          SubspaceBasis(m, svd.u.rightCols(m - ri), tol)};
}

double operatorNorm(const Operator& a) {
  const Vector sigma = valuesOnly(Matrix(a.entries()));
  return sigma.size() > 0 ? sigma(0) : 0.0;
}

Vector singularValues(const Operator& a) { return valuesOnly(Matrix(a.entries())); }

SubspaceBasis nullspaceBasis(const Operator& a, double tol) {
  return fundamentalSubspaces(a, tol).nullspace;
}

SubspaceBasis imageBasis(const Operator& a, double tol) {
  return fundamentalSubspaces(a, tol).image;
}

Operator orthoProjector(const SubspaceBasis& basis) {
  const Matrix& q = basis.vectors();
  if (q.cols() == 0) {
    return Operator(basis.ambientDim(), basis.ambientDim());
  }
  return Operator(Matrix(q * q.transpose()));
}

std::size_t rank(const Operator& a, double tol) {
  requireTol(tol);
  return countAbove(singularValues(a), tol);
}

Vector minNormLeastSquares(const Operator& a, const Vector& b, double tol) {
  requireTol(tol);
  if (b.size() != a.rows()) {
    throw DimensionMismatch("least squares: right-hand side has dimension " +
                            std::to_string(b.size()) + ", expected " + std::to_string(a.rows()));
  }
  requireFinite(b, "right-hand side");
  const Matrix m(a.entries());
  Matrix u;
  Vector sigma;
  Matrix v;
  constexpr unsigned kThin = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (std::max(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<Matrix> svd(m, kThin);
    u = svd.matrixU();
    sigma = svd.singularValues();
    v = svd.matrixV();
  } else {
    Eigen::BDCSVD<Matrix> svd(m, kThin);
    u = svd.matrixU();
    sigma = svd.singularValues();
    v = svd.matrixV();
  }
  const Index r = static_cast<Index>(countAbove(sigma, tol));
  Vector x = Vector::Zero(a.cols());
  if (r == 0) {
    return x;
  }
  const Vector coef = (u.leftCols(r).transpose() * b).cwiseQuotient(sigma.head(r));
  x = v.leftCols(r) * coef;
  return x;
}

SubspaceBasis orthogonalComplement(const SubspaceBasis& basis) {
  const Index d = basis.ambientDim();
  const Index k = basis.count();
  if (k == 0) {
    return SubspaceBasis::full(d, basis.tolUsed());
  }
  if (k == d) {
    return SubspaceBasis::empty(d, basis.tolUsed());
  }
  Eigen::HouseholderQR<Matrix> qr(basis.vectors());
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return SubspaceBasis(d, q.rightCols(d - k), basis.tolUsed());
}

double largestPrincipalAngle(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambientDim() != b.ambientDim()) {
    throw DimensionMismatch("principal angle between subspaces of different ambient spaces");
  }
  if (a.count() != b.count()) {
    return std::numbers::pi / 2.0;
  }
  if (a.count() == 0) {
    return 0.0;
  }
  const Matrix& qa = a.vectors();
  const Matrix& qb = b.vectors();
  const Matrix off = qa - qb * (qb.transpose() * qa);
  const Vector s = valuesOnly(off);
  const double sine = std::min(1.0, s.size() > 0 ? s(0) : 0.0);
  return std::asin(sine);
}

double projectorDistance(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambientDim() != b.ambientDim()) {
    throw DimensionMismatch("projector distance between different ambient spaces");
  }
  const Matrix pa = orthoProjector(a).entries();
  const Matrix pb = orthoProjector(b).entries();
  return (pa - pb).cwiseAbs().maxCoeff();
}

}  // namespace riesz
