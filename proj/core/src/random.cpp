#include "riesz/random.hpp"

#include "riesz/errors.hpp"

#include <cmath>
#include <numbers>

namespace riesz {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t k : keys) {
    h = splitmix64(h ^ splitmix64(k));
  }
  return Rng(h);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (hasSpare_) {
    hasSpare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(theta);
  hasSpare_ = true;
  return radius * std::cos(theta);
}

std::int64_t Rng::uniformInt(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) {
    throw InvalidInput("uniformInt: empty range");
  }
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) {
    return static_cast<std::int64_t>(engine_());
  }
  // Rejection sampling keeps the distribution exact and portable.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return lo + static_cast<std::int64_t>(x % span);
}

Vector Rng::gaussianVector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = gaussian();
  }
  return v;
}

Matrix Rng::gaussianMatrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  // Row-major fill order so the stream maps to entries the same way the
  // Operator stores them.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = gaussian();
    }
  }
  return m;
}

Vector Rng::unitVector(Index n) {
  Vector v = gaussianVector(n);
  double norm = v.norm();
  while (norm == 0.0) {
    v = gaussianVector(n);
    norm = v.norm();
  }
  return v / norm;
}

SubspaceBasis Rng::randomSubspace(Index n, Index k) {
  if (k < 0 || k > n) {
    throw InvalidInput("randomSubspace: dimension out of range");
  }
  if (k == 0) {
    return SubspaceBasis::empty(n);
  }
  const Matrix g = gaussianMatrix(n, k);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  return SubspaceBasis(n, q, kDefaultTol);
}

}  // namespace riesz
