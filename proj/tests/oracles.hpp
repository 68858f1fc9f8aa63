#pragma once

// Independent reference computations for the tests. Nothing here touches an
// SVD or QR: ranks and nullspaces come from Gaussian elimination, norms from
// power iteration or the 2x2 characteristic polynomial, orthonormal bases
// from modified Gram-Schmidt.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Reduced row echelon form with partial pivoting. Entries with magnitude
/// at most `tol` (relative to the largest entry) count as zero.
struct Rref {
  Matrix r;
  std::vector<int> pivots;
};

inline Rref rref(Matrix a, double tol = 1e-10) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const double scale = std::max(1e-300, a.cwiseAbs().maxCoeff());
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int best = row;
    for (int i = row + 1; i < m; ++i) {
      if (std::abs(a(i, col)) > std::abs(a(best, col))) {
        best = i;
      }
    }
    if (std::abs(a(best, col)) <= tol * scale) {
      for (int i = row; i < m; ++i) {
        a(i, col) = 0.0;
      }
      continue;
    }
    a.row(row).swap(a.row(best));
    a.row(row) /= a(row, col);
    for (int i = 0; i < m; ++i) {
      if (i != row) {
        a.row(i) -= a(i, col) * a.row(row);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {a, pivots};
}

inline int rank(const Matrix& a, double tol = 1e-10) {
  return static_cast<int>(rref(a, tol).pivots.size());
}

/// Nullspace spanning set from the free columns of the RREF.
inline Matrix nullspace(const Matrix& a, double tol = 1e-10) {
  const Rref e = rref(a, tol);
  const int n = static_cast<int>(a.cols());
  std::vector<int> freeCols;
  for (int j = 0; j < n; ++j) {
    if (std::find(e.pivots.begin(), e.pivots.end(), j) == e.pivots.end()) {
      freeCols.push_back(j);
    }
  }
  Matrix z = Matrix::Zero(n, static_cast<int>(freeCols.size()));
  for (std::size_t k = 0; k < freeCols.size(); ++k) {
    const int f = freeCols[k];
    z(f, static_cast<int>(k)) = 1.0;
    for (std::size_t p = 0; p < e.pivots.size(); ++p) {
      z(e.pivots[p], static_cast<int>(k)) = -e.r(static_cast<int>(p), f);
    }
  }
  return z;
}

/// Modified Gram-Schmidt; drops columns that become negligible.
inline Matrix gramSchmidt(const Matrix& a, double tol = 1e-12) {
  std::vector<Vector> out;
  for (int j = 0; j < a.cols(); ++j) {
    Vector v = a.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : out) {
        v -= q.dot(v) * q;
      }
    }
    const double norm = v.norm();
    if (norm > tol * std::max(1.0, Vector(a.col(j)).norm())) {
      out.push_back(v / norm);
    }
  }
  Matrix q(a.rows(), static_cast<int>(out.size()));
  for (std::size_t k = 0; k < out.size(); ++k) {
    q.col(static_cast<int>(k)) = out[k];
  }
  return q;
}

inline Matrix projector(const Matrix& q) {
  if (q.cols() == 0) {
    return Matrix::Zero(q.rows(), q.rows());
  }
  return q * q.transpose();
}

/// Largest singular value of a 2x2 matrix from the roots of the
/// characteristic polynomial of A^T A.
inline double norm2x2(const Matrix& a) {
  const Matrix g = a.transpose() * a;
  const double tr = g.trace();
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return std::sqrt(tr / 2.0 + disc);
}

/// Largest singular value by power iteration on A^T A.
inline double powerNorm(const Matrix& a, int iterations = 4000) {
  Vector x = Vector::Ones(a.cols());
  for (int j = 0; j < x.size(); ++j) {
    x(j) += 0.01 * static_cast<double>(j % 7);
  }
  x.normalize();
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector y = a.transpose() * (a * x);
    const double n = y.norm();
    if (n == 0.0) {
      return 0.0;
    }
    x = y / n;
    sigma = (a * x).norm();
  }
  return sigma;
}

/// Smallest nonzero singular value: power iteration on the inverse of
/// A A^T restricted to the complement of its nullspace (small dense cases).
inline double smallestNonzeroSingular(const Matrix& a, double tol = 1e-10) {
  const Matrix g = a * a.transpose();
  const Matrix z = gramSchmidt(nullspace(g, tol));
  const Matrix rangeBasis = gramSchmidt(Matrix(Matrix::Identity(g.rows(), g.rows()) - projector(z)));
  const Matrix restricted = rangeBasis.transpose() * g * rangeBasis;
  const Matrix inv = restricted.inverse();
  const double lambdaMaxInv = powerNorm(inv, 20000);
  return std::sqrt(1.0 / lambdaMaxInv);
}

}  // namespace oracle
