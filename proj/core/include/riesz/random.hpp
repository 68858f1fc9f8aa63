#pragma once

// Portable, seedable randomness for reproducible verification runs.
//
// Stream semantics: Rng wraps std::mt19937_64, whose output sequence is
// fixed by the C++ standard. uniform() takes the top 53 bits of one draw
// and maps them to [0, 1). gaussian() uses the Box-Muller transform on two
// uniforms, returns the cosine variate and caches the sine variate for the
// next call. Independent streams are derived with splitmix64, so a stream
// depends only on (seed, key...) and never on scheduling order.

#include "riesz/operator.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace riesz {

/// One splitmix64 step; also used to mix stream keys.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream keyed by (seed, keys...), independent of every other key tuple.
  static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

  std::uint64_t next() { return engine_(); }
  double uniform();
  double gaussian();
  /// Uniform integer in [lo, hi].
  std::int64_t uniformInt(std::int64_t lo, std::int64_t hi);

  Vector gaussianVector(Index n);
  Matrix gaussianMatrix(Index rows, Index cols);
  /// Random unit vector (uniform on the sphere).
  Vector unitVector(Index n);
  /// Random orthonormal basis of a k-dimensional subspace of R^n.
  SubspaceBasis randomSubspace(Index n, Index k);

 private:
  std::mt19937_64 engine_;
  bool hasSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace riesz
