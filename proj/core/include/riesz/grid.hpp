#pragma once

// MAC (marker-and-cell) discretization of the box [0,lx] x [0,ly] x [0,lz]:
// scalars at cell centers, vector components on the faces normal to them.
// All arrays are row-major with x fastest.

#include "riesz/operator.hpp"

#include <array>

namespace riesz {

enum class Axis { X = 0, Y = 1, Z = 2 };

class Grid {
 public:
  /// Throws InvalidGrid for non-positive counts or lengths, or a single cell.
  Grid(Index nx, Index ny, Index nz, double lx = 1.0, double ly = 1.0, double lz = 1.0);

  /// nx x 1 x 1 grid of length lx.
  static Grid line(Index nx, double lx = 1.0) { return Grid(nx, 1, 1, lx); }

  Index nx() const noexcept { return n_[0]; }
  Index ny() const noexcept { return n_[1]; }
  Index nz() const noexcept { return n_[2]; }
  double lx() const noexcept { return l_[0]; }
  double ly() const noexcept { return l_[1]; }
  double lz() const noexcept { return l_[2]; }
  Index cells(Axis a) const noexcept { return n_[static_cast<int>(a)]; }
  double length(Axis a) const noexcept { return l_[static_cast<int>(a)]; }
  double spacing(Axis a) const noexcept { return l_[static_cast<int>(a)] / static_cast<double>(n_[static_cast<int>(a)]); }
  double hx() const noexcept { return spacing(Axis::X); }
  double hy() const noexcept { return spacing(Axis::Y); }
  double hz() const noexcept { return spacing(Axis::Z); }

  Index cellCount() const noexcept { return n_[0] * n_[1] * n_[2]; }
  double cellVolume() const noexcept { return hx() * hy() * hz(); }
  /// Number of axes with more than one cell.
  int dimensionality() const noexcept;

  Index cellIndex(Index i, Index j, Index k) const noexcept { return i + n_[0] * (j + n_[1] * k); }
  /// Per-axis face array shape: one extra entry along the face normal.
  std::array<Index, 3> faceShape(Axis a) const noexcept;
  /// All faces normal to `a`, boundary faces included.
  Index faceCount(Axis a) const noexcept;
  Index faceIndex(Axis a, Index i, Index j, Index k) const noexcept;
  /// Faces normal to `a` strictly inside the box.
  Index interiorFaceCount(Axis a) const noexcept;
  Index interiorFaceCount() const noexcept;

  /// Cell-center coordinate along `a` for cell index i.
  double center(Axis a, Index i) const noexcept { return (static_cast<double>(i) + 0.5) * spacing(a); }
  /// Face coordinate along `a` for face index i (0 and n are walls).
  double face(Axis a, Index i) const noexcept { return static_cast<double>(i) * spacing(a); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::array<Index, 3> n_;
  std::array<double, 3> l_;
};

/// Cell-centered scalar field.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);  // zero
  ScalarField(Grid grid, Vector values);

  const Grid& grid() const noexcept { return grid_; }
  const Vector& values() const noexcept { return values_; }
  double operator()(Index i, Index j, Index k) const { return values_(grid_.cellIndex(i, j, k)); }
  /// Volume-weighted integral of the field.
  double integral() const { return grid_.cellVolume() * values_.sum(); }
  /// Discrete L2 norm sqrt(cellVolume * sum p^2).
  double l2Norm() const;

 private:
  Grid grid_;
  Vector values_;
};

/// Face-staggered vector field: u on x-faces, v on y-faces, w on z-faces,
/// boundary faces included.
class VectorField {
 public:
  explicit VectorField(Grid grid);  // zero
  VectorField(Grid grid, Vector u, Vector v, Vector w);

  const Grid& grid() const noexcept { return grid_; }
  const Vector& component(Axis a) const noexcept { return c_[static_cast<int>(a)]; }
  Vector& component(Axis a) noexcept { return c_[static_cast<int>(a)]; }
  const Vector& u() const noexcept { return c_[0]; }
  const Vector& v() const noexcept { return c_[1]; }
  const Vector& w() const noexcept { return c_[2]; }
  double& at(Axis a, Index i, Index j, Index k) { return c_[static_cast<int>(a)](grid_.faceIndex(a, i, j, k)); }
  double at(Axis a, Index i, Index j, Index k) const { return c_[static_cast<int>(a)](grid_.faceIndex(a, i, j, k)); }

  /// Largest |value| on a boundary face.
  double maxBoundaryMagnitude() const;
  /// True when every boundary face is exactly 0 (a velocity field).
  bool isBorderNull() const { return maxBoundaryMagnitude() == 0.0; }

 private:
  Grid grid_;
  std::array<Vector, 3> c_;
};

}  // namespace riesz
