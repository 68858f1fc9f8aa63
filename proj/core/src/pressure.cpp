#include "riesz/pressure.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace riesz {

namespace {

constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

struct FoldedSolve {
  Vector pressure;         // folded coordinates
  Vector gradient;         // D^T pressure
  double incompatibility;  // ||f - D^T p||
  double compatibleNorm;
  SolvePath path;
  Index iterations;
};

SolvePath resolve(const DivergenceSystem& sys, SolvePath path) {
  if (path == SolvePath::Automatic) {
    return sys.hasDense() ? SolvePath::Dense : SolvePath::ConjugateGradient;
  }
  if (path == SolvePath::Dense && !sys.hasDense()) {
    throw InvalidInput("dense solve requested above the dense cell limit");
  }
  return path;
}

FoldedSolve solveDense(const DivergenceSystem& sys, const Vector& f) {
  const IsoContext& iso = sys.iso();
  const Vector fn = iso.nullspaceProjector().apply(f);
  const Vector fc = f - fn;
  Vector p = invertIsoTilde(iso, Functional(fc));
  Vector grad = applyIsoTilde(iso, p).coords();
  return {std::move(p), std::move(grad), fn.norm(), fc.norm(), SolvePath::Dense, 0};
}

// CG on D D^T p = D f restricted to the zero-mean subspace.
FoldedSolve solveCg(const DivergenceSystem& sys, const Vector& f) {
  const Vector& e = sys.constantDirection();
  const auto deflate = [&e](Vector& x) { x -= e * e.dot(x); };

  Vector b = sys.divergence(f);
  deflate(b);
  const double bnorm = b.norm();
  Vector x = Vector::Zero(sys.cellCount());
  Index it = 0;
  if (bnorm > 0.0) {
    const SolverOptions& opt = sys.options();
    const Index maxIt = opt.cgIterationsPerCell * sys.cellCount();
    Vector r = b;
    Vector d = r;
    double rr = r.squaredNorm();
    while (it < maxIt && std::sqrt(rr) > opt.cgRelativeTolerance * bnorm) {
      Vector ad = sys.divergence(sys.divergenceTranspose(d));
      deflate(ad);
      const double alpha = rr / d.dot(ad);
      x += alpha * d;
      r -= alpha * ad;
      deflate(x);
      deflate(r);
      const double rrNext = r.squaredNorm();
      d = r + (rrNext / rr) * d;
      rr = rrNext;
      ++it;
    }
  }
  Vector grad = sys.divergenceTranspose(x);
  const double incompat = (f - grad).norm();
  const double compat = grad.norm();
  return {std::move(x), std::move(grad), incompat, compat, SolvePath::ConjugateGradient, it};
}

FoldedSolve solveFolded(const DivergenceSystem& sys, const Vector& f, SolvePath path) {
  if (!f.allFinite()) {
    throw InvalidInput("force field has non-finite values");
  }
  return resolve(sys, path) == SolvePath::Dense ? solveDense(sys, f) : solveCg(sys, f);
}

}  // namespace

std::string_view toString(SolvePath path) noexcept {
  switch (path) {
    case SolvePath::Automatic:
      return "automatic";
    case SolvePath::Dense:
      return "dense";
    case SolvePath::ConjugateGradient:
      return "cg";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// DivergenceSystem

DivergenceSystem::DivergenceSystem(Grid grid, SolverOptions options)
    : grid_(grid),
      options_(options),
      cellScale_(std::sqrt(grid.cellVolume())),
      // Each interior face owns the dual cell straddling it, whose volume
      // equals the cell volume on a uniform grid.
      faceScale_(std::sqrt(grid.cellVolume())) {
  faces_.reserve(static_cast<std::size_t>(grid_.interiorFaceCount()));
  for (Axis a : kAxes) {
    const int ax = static_cast<int>(a);
    const double h = grid_.spacing(a);
    const auto shape = grid_.faceShape(a);
    for (Index k = 0; k < shape[2]; ++k) {
      for (Index j = 0; j < shape[1]; ++j) {
        for (Index i = 0; i < shape[0]; ++i) {
          std::array<Index, 3> idx{i, j, k};
          if (idx[ax] == 0 || idx[ax] == shape[ax] - 1) {
            continue;
          }
          std::array<Index, 3> lo = idx;
          lo[ax] -= 1;
          const Index lower = grid_.cellIndex(lo[0], lo[1], lo[2]);
          const Index upper = grid_.cellIndex(idx[0], idx[1], idx[2]);
          const double coef = cellScale_ / (h * faceScale_);
          faces_.push_back({a, grid_.faceIndex(a, i, j, k), lower, upper, coef, -coef});
        }
      }
    }
  }
  constant_ = Vector::Constant(grid_.cellCount(), 1.0 / std::sqrt(double(grid_.cellCount())));

  if (grid_.cellCount() <= options_.denseCellLimit) {
    op_ = std::make_shared<const Operator>(assembleDivergence(grid_));
    iso_ = std::make_shared<const IsoContext>(*op_, options_.tol);
  }
}

const Operator& DivergenceSystem::op() const {
  if (!op_) {
    throw InvalidInput("dense divergence matrix is not assembled above the dense cell limit");
  }
  return *op_;
}

const IsoContext& DivergenceSystem::iso() const {
  if (!iso_) {
    throw InvalidInput("isomorphism context is not built above the dense cell limit");
  }
  return *iso_;
}

Vector DivergenceSystem::divergence(const Vector& velocity) const {
  if (velocity.size() != velocityDim()) {
    throw DimensionMismatch("divergence: velocity has the wrong number of coordinates");
  }
  Vector out = Vector::Zero(cellCount());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& face = faces_[f];
    const double x = velocity(static_cast<Index>(f));
    out(face.lower) += face.lowerCoef * x;
    out(face.upper) += face.upperCoef * x;
  }
  return out;
}

Vector DivergenceSystem::divergenceTranspose(const Vector& scalar) const {
  if (scalar.size() != cellCount()) {
    throw DimensionMismatch("divergence transpose: scalar has the wrong number of coordinates");
  }
  Vector out(velocityDim());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& face = faces_[f];
    out(static_cast<Index>(f)) = face.lowerCoef * scalar(face.lower) + face.upperCoef * scalar(face.upper);
  }
  return out;
}

Vector DivergenceSystem::velocityCoords(const VectorField& field) const {
  if (!(field.grid() == grid_)) {
    throw DimensionMismatch("vector field lives on a different grid");
  }
  Vector out(velocityDim());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    out(static_cast<Index>(f)) = faceScale_ * field.component(faces_[f].axis)(faces_[f].faceIndex);
  }
  return out;
}

VectorField DivergenceSystem::velocityField(const Vector& coords) const {
  if (coords.size() != velocityDim()) {
    throw DimensionMismatch("velocity coordinates have the wrong length");
  }
  VectorField field(grid_);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    field.component(faces_[f].axis)(faces_[f].faceIndex) = coords(static_cast<Index>(f)) / faceScale_;
  }
  return field;
}

Vector DivergenceSystem::scalarCoords(const ScalarField& field) const {
  if (!(field.grid() == grid_)) {
    throw DimensionMismatch("scalar field lives on a different grid");
  }
  return cellScale_ * field.values();
}

ScalarField DivergenceSystem::scalarField(const Vector& coords) const {
  return ScalarField(grid_, coords / cellScale_);
}

// ---------------------------------------------------------------------------
// Operations

Operator assembleDivergence(const Grid& grid) {
  // Reuse the stencil of a matrix-free system; the dense limit of 0 keeps
  // the constructor from recursing into this function.
  SolverOptions noDense;
  noDense.denseCellLimit = 0;
  const DivergenceSystem sys(grid, noDense);
  Matrix d = Matrix::Zero(sys.cellCount(), sys.velocityDim());
  Vector unit = Vector::Zero(sys.velocityDim());
  for (Index f = 0; f < sys.velocityDim(); ++f) {
    unit(f) = 1.0;
    d.col(f) = sys.divergence(unit);
    unit(f) = 0.0;
  }
  if (d.cols() == 0) {
    throw InvalidGrid("grid has no interior faces");
  }
  return Operator(d);
}

DivergenceSystem buildDivergence(const Grid& grid, SolverOptions options) {
  return DivergenceSystem(grid, options);
}

ScalarField applyDivergence(const DivergenceSystem& sys, const VectorField& v) {
  return sys.scalarField(sys.divergence(sys.velocityCoords(v)));
}

VectorField discreteGradient(const Grid& grid, const ScalarField& q) {
  if (!(q.grid() == grid)) {
    throw DimensionMismatch("scalar field lives on a different grid");
  }
  VectorField g(grid);
  for (Axis a : kAxes) {
    const int ax = static_cast<int>(a);
    const double h = grid.spacing(a);
    const auto shape = grid.faceShape(a);
    for (Index k = 0; k < shape[2]; ++k) {
      for (Index j = 0; j < shape[1]; ++j) {
        for (Index i = 0; i < shape[0]; ++i) {
          std::array<Index, 3> idx{i, j, k};
          if (idx[ax] == 0 || idx[ax] == shape[ax] - 1) {
            continue;
          }
          std::array<Index, 3> lo = idx;
          lo[ax] -= 1;
          g.at(a, i, j, k) = (q(idx[0], idx[1], idx[2]) - q(lo[0], lo[1], lo[2])) / h;
        }
      }
    }
  }
  return g;
}

ImageReport checkImageIsZeroMean(const DivergenceSystem& sys, Rng& rng, std::size_t samples) {
  const IsoContext& iso = sys.iso();
  ImageReport report;
  const double volume = sys.grid().cellVolume();
  for (std::size_t s = 0; s < samples; ++s) {
    const VectorField v = sys.velocityField(rng.gaussianVector(sys.velocityDim()));
    const double norm = sys.velocityCoords(v).norm();
    if (norm == 0.0) {
      continue;
    }
    const double weighted = volume * applyDivergence(sys, v).values().sum();
    report.maxWeightedSumRatio = std::max(report.maxWeightedSumRatio, std::abs(weighted) / norm);
    ++report.samples;
  }
  report.rank = iso.rank();
  report.expectedRank = static_cast<std::size_t>(sys.cellCount() - 1);
  const SubspaceBasis constants(sys.cellCount(), sys.constantDirection(), iso.tol());
  report.angle = largestPrincipalAngle(iso.image(), orthogonalComplement(constants));
  return report;
}

Functional gradientFunctional(const DivergenceSystem& sys, const VectorField& g) {
  return Functional(sys.velocityCoords(g));
}

Membership checkHelmholtzMembership(const DivergenceSystem& sys, const VectorField& g) {
  const Functional f = gradientFunctional(sys, g);
  if (sys.hasDense()) {
    return conullspaceContains(sys.iso(), f);
  }
  const FoldedSolve s = solveCg(sys, f.coords());
  return {s.incompatibility <= sys.options().tol * std::max(f.norm(), 1.0), s.incompatibility};
}

PressureSolution recoverPressure(const DivergenceSystem& sys, const VectorField& g,
                                 SolvePath path) {
  const Vector f = gradientFunctional(sys, g).coords();
  FoldedSolve s = solveFolded(sys, f, path);
  ScalarField p = sys.scalarField(s.pressure);
  const double mean = p.integral() / (sys.grid().cellVolume() * double(sys.cellCount()));
  return {std::move(p), s.incompatibility, s.compatibleNorm, mean, g.maxBoundaryMagnitude(),
          s.path, s.iterations};
}

HelmholtzParts helmholtzSplit(const DivergenceSystem& sys, const VectorField& f, SolvePath path) {
  const Vector coords = sys.velocityCoords(f);
  const FoldedSolve s = solveFolded(sys, coords, path);
  return {sys.velocityField(s.gradient), sys.velocityField(coords - s.gradient)};
}

double continuityConstant(const DivergenceSystem& sys) {
  if (sys.hasDense()) {
    const double sigma = sys.iso().smallestRetainedSingularValue();
    if (sys.iso().rank() == 0 || sigma == 0.0) {
      throw InvalidInput("continuity constant of a rank-zero system");
    }
    return 1.0 / sigma;
  }
  return 1.0 / std::sqrt(neumannSpectralGap(sys.grid()));
}

double neumannSpectralGap(const Grid& grid) {
  double gap = 0.0;
  bool any = false;
  for (Axis a : kAxes) {
    const Index n = grid.cells(a);
    if (n < 2) {
      continue;
    }
    const double h = grid.spacing(a);
    const double s = std::sin(std::numbers::pi / (2.0 * double(n)));
    const double lambda = 4.0 / (h * h) * s * s;
    gap = any ? std::min(gap, lambda) : lambda;
    any = true;
  }
  return gap;
}

std::string_view toString(MmsCase c) noexcept {
  switch (c) {
    case MmsCase::CosX:
      return "cosX";
    case MmsCase::CosXCosY:
      return "cosXcosY";
    case MmsCase::CosXCosYCosZ:
      return "cosXcosYcosZ";
  }
  return "unknown";
}

std::optional<MmsCase> parseMmsCase(std::string_view name) noexcept {
  for (MmsCase c : {MmsCase::CosX, MmsCase::CosXCosY, MmsCase::CosXCosYCosZ}) {
    if (name == toString(c)) {
      return c;
    }
  }
  return std::nullopt;
}

int axisCount(MmsCase c) noexcept {
  switch (c) {
    case MmsCase::CosX:
      return 1;
    case MmsCase::CosXCosY:
      return 2;
    case MmsCase::CosXCosYCosZ:
      return 3;
  }
  return 0;
}

Manufactured manufactured(const Grid& grid, MmsCase c) {
  const int used = axisCount(c);
  for (int a = 0; a < used; ++a) {
    if (grid.cells(kAxes[a]) < 2) {
      throw InvalidInput("manufactured case " + std::string(toString(c)) +
                         " needs at least two cells along every axis it uses");
    }
  }
  const double pi = std::numbers::pi;
  // Factor along axis a at coordinate x: cos(pi x / l), or 1 if unused.
  const auto factor = [&](int a, double x) {
    return a < used ? std::cos(pi * x / grid.length(kAxes[a])) : 1.0;
  };

  Vector p(grid.cellCount());
  for (Index k = 0; k < grid.nz(); ++k) {
    for (Index j = 0; j < grid.ny(); ++j) {
      for (Index i = 0; i < grid.nx(); ++i) {
        p(grid.cellIndex(i, j, k)) = factor(0, grid.center(Axis::X, i)) *
                                     factor(1, grid.center(Axis::Y, j)) *
                                     factor(2, grid.center(Axis::Z, k));
      }
    }
  }
  p.array() -= p.mean();

  VectorField g(grid);
  for (int a = 0; a < used; ++a) {
    const Axis axis = kAxes[a];
    const double l = grid.length(axis);
    const auto shape = grid.faceShape(axis);
    for (Index k = 0; k < shape[2]; ++k) {
      for (Index j = 0; j < shape[1]; ++j) {
        for (Index i = 0; i < shape[0]; ++i) {
          const std::array<Index, 3> idx{i, j, k};
          double value = 1.0;
          for (int b = 0; b < 3; ++b) {
            if (b == a) {
              const double x = grid.face(axis, idx[b]);
              value *= (pi / l) * std::sin(pi * x / l);
            } else {
              value *= factor(b, grid.center(kAxes[b], idx[b]));
            }
          }
          g.at(axis, i, j, k) = value;
        }
      }
    }
  }
  return {ScalarField(grid, std::move(p)), std::move(g)};
}

}  // namespace riesz
