#include "riesz/grid.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace riesz {

namespace {

constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

}  // namespace

Grid::Grid(Index nx, Index ny, Index nz, double lx, double ly, double lz)
    : n_{nx, ny, nz}, l_{lx, ly, lz} {
  for (int a = 0; a < 3; ++a) {
    if (n_[a] < 1) {
      throw InvalidGrid("cell counts must be positive");
    }
    if (!(l_[a] > 0.0) || !std::isfinite(l_[a])) {
      throw InvalidGrid("domain lengths must be positive and finite");
    }
  }
  if (cellCount() < 2) {
    throw InvalidGrid("grid needs at least two cells");
  }
}

int Grid::dimensionality() const noexcept {
  return static_cast<int>(std::count_if(n_.begin(), n_.end(), [](Index n) { return n > 1; }));
}

std::array<Index, 3> Grid::faceShape(Axis a) const noexcept {
  std::array<Index, 3> s = n_;
  s[static_cast<int>(a)] += 1;
  return s;
}

Index Grid::faceCount(Axis a) const noexcept {
  const auto s = faceShape(a);
  return s[0] * s[1] * s[2];
}

Index Grid::faceIndex(Axis a, Index i, Index j, Index k) const noexcept {
  const auto s = faceShape(a);
  return i + s[0] * (j + s[1] * k);
}

Index Grid::interiorFaceCount(Axis a) const noexcept {
  std::array<Index, 3> s = n_;
  s[static_cast<int>(a)] -= 1;
  return s[0] * s[1] * s[2];
}

Index Grid::interiorFaceCount() const noexcept {
  return interiorFaceCount(Axis::X) + interiorFaceCount(Axis::Y) + interiorFaceCount(Axis::Z);
}

ScalarField::ScalarField(Grid grid) : grid_(grid), values_(Vector::Zero(grid.cellCount())) {}

ScalarField::ScalarField(Grid grid, Vector values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cellCount()) {
    throw DimensionMismatch("scalar field has " + std::to_string(values_.size()) +
                            " values, grid has " + std::to_string(grid_.cellCount()) + " cells");
  }
  if (!values_.allFinite()) {
    throw InvalidInput("scalar field has non-finite values");
  }
}

double ScalarField::l2Norm() const { return std::sqrt(grid_.cellVolume()) * values_.norm(); }

VectorField::VectorField(Grid grid)
    : grid_(grid),
      c_{Vector::Zero(grid.faceCount(Axis::X)), Vector::Zero(grid.faceCount(Axis::Y)),
         Vector::Zero(grid.faceCount(Axis::Z))} {}

VectorField::VectorField(Grid grid, Vector u, Vector v, Vector w)
    : grid_(grid), c_{std::move(u), std::move(v), std::move(w)} {
  for (Axis a : kAxes) {
    const Vector& c = c_[static_cast<int>(a)];
    if (c.size() != grid_.faceCount(a)) {
      throw DimensionMismatch("vector field component has " + std::to_string(c.size()) +
                              " values, expected " + std::to_string(grid_.faceCount(a)));
    }
    if (!c.allFinite()) {
      throw InvalidInput("vector field has non-finite values");
    }
  }
}

double VectorField::maxBoundaryMagnitude() const {
  double worst = 0.0;
  for (Axis a : kAxes) {
    const auto s = grid_.faceShape(a);
    const int ax = static_cast<int>(a);
    const Index last = s[ax] - 1;
    for (Index k = 0; k < s[2]; ++k) {
      for (Index j = 0; j < s[1]; ++j) {
        for (Index i = 0; i < s[0]; ++i) {
          const std::array<Index, 3> idx{i, j, k};
          if (idx[ax] == 0 || idx[ax] == last) {
            worst = std::max(worst, std::abs(at(a, i, j, k)));
          }
        }
      }
    }
  }
  return worst;
}

}  // namespace riesz
