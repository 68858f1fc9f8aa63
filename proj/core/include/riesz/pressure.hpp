#pragma once

// Discrete pressure equation  { -grad p = G,  integral of p = 0 }  on a MAC
// grid, solved through the inverse of the image-to-conullspace map of the
// divergence operator.
//
// Coordinates are "folded": every cell value is scaled by sqrt(cellVolume)
// and every interior-face value by sqrt(faceVolume), so Euclidean inner
// products of coordinates are the discrete L2 inner products and the plain
// matrix transpose of the divergence is its Hilbert adjoint. Boundary faces
// are not coordinates at all: velocities vanish there by construction.

#include "riesz/grid.hpp"
#include "riesz/iso.hpp"
#include "riesz/operator.hpp"
#include "riesz/random.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace riesz {

struct SolverOptions {
  double tol = kDefaultTol;
  /// Grids with at most this many cells get a dense operator and SVD-backed
  /// isomorphism context; larger grids are solved matrix-free with CG.
  Index denseCellLimit = 1000;
  double cgRelativeTolerance = 1e-10;
  Index cgIterationsPerCell = 10;
};

enum class SolvePath { Automatic, Dense, ConjugateGradient };

std::string_view toString(SolvePath path) noexcept;

/// Divergence operator on the interior-face velocity coordinates of a grid,
/// plus (for small grids) its dense matrix and isomorphism context.
class DivergenceSystem {
 public:
  explicit DivergenceSystem(Grid grid, SolverOptions options = {});

  const Grid& grid() const noexcept { return grid_; }
  const SolverOptions& options() const noexcept { return options_; }
  Index cellCount() const noexcept { return grid_.cellCount(); }
  Index velocityDim() const noexcept { return static_cast<Index>(faces_.size()); }

  bool hasDense() const noexcept { return iso_ != nullptr; }
  /// Dense folded-coordinate matrix. Throws if the grid is above the limit.
  const Operator& op() const;
  const IsoContext& iso() const;

  /// D v in folded coordinates (matrix-free).
  Vector divergence(const Vector& velocity) const;
  /// D^T p in folded coordinates (matrix-free); equals -grad p.
  Vector divergenceTranspose(const Vector& scalar) const;

  Vector velocityCoords(const VectorField& field) const;
  /// Field with the given interior coordinates and zero boundary faces.
  VectorField velocityField(const Vector& coords) const;
  Vector scalarCoords(const ScalarField& field) const;
  ScalarField scalarField(const Vector& coords) const;

  /// Unit vector spanning N(D^T): the folded image of the constant field.
  const Vector& constantDirection() const noexcept { return constant_; }

 private:
  struct Face {
    Axis axis;
    Index faceIndex;  // index into the full face array of `axis`
    Index lower;      // cell on the low side
    Index upper;      // cell on the high side
    double lowerCoef; // D(lower, face) in folded coordinates
    double upperCoef; // D(upper, face) in folded coordinates
  };

  Grid grid_;
  SolverOptions options_;
  double cellScale_;
  double faceScale_;
  std::vector<Face> faces_;
  Vector constant_;
  std::shared_ptr<const Operator> op_;
  std::shared_ptr<const IsoContext> iso_;
};

/// Dense folded-coordinate divergence matrix (cells x interior faces).
Operator assembleDivergence(const Grid& grid);

DivergenceSystem buildDivergence(const Grid& grid, SolverOptions options = {});

/// Cell-centered divergence sum_axes (face_out - face_in) / h, using the
/// interior faces of V only.
ScalarField applyDivergence(const DivergenceSystem& sys, const VectorField& v);

/// (q_upper - q_lower) / h on interior faces, zero on boundary faces.
VectorField discreteGradient(const Grid& grid, const ScalarField& q);

struct ImageReport {
  /// max over samples of |sum_cells cellVolume * (DV)| / ||V||_L2.
  double maxWeightedSumRatio = 0.0;
  std::size_t rank = 0;
  std::size_t expectedRank = 0;
  /// Largest principal angle between Im(D) and the zero-mean subspace.
  double angle = 0.0;
  std::size_t samples = 0;
};

/// Checks Im(D) = zero-mean fields: divergence theorem on random border-null
/// velocities, rank, and subspace angle. Requires a dense system.
ImageReport checkImageIsZeroMean(const DivergenceSystem& sys, Rng& rng, std::size_t samples = 8);

/// G* = (G|.) on velocity coordinates. Boundary faces of G do not enter.
Functional gradientFunctional(const DivergenceSystem& sys, const VectorField& g);

/// Whether G is a discrete gradient; residual is the L2 norm of its
/// divergence-free component.
Membership checkHelmholtzMembership(const DivergenceSystem& sys, const VectorField& g);

struct PressureSolution {
  ScalarField pressure;
  /// L2 norm of the divergence-free part of G that was discarded.
  double incompatibility = 0.0;
  /// L2 norm of the compatible part of G.
  double compatibleNorm = 0.0;
  /// Volume-weighted mean of the pressure.
  double weightedMean = 0.0;
  /// Largest |G| on a boundary face (ignored by the solve).
  double boundaryMagnitude = 0.0;
  SolvePath path = SolvePath::Dense;
  Index iterations = 0;
};

/// Unique zero-mean p with <p, DV> = <G, V> for every border-null V, after
/// projecting G onto the discrete gradients.
PressureSolution recoverPressure(const DivergenceSystem& sys, const VectorField& g,
                                 SolvePath path = SolvePath::Automatic);

struct HelmholtzParts {
  VectorField gradient;    // in Im(D^T)
  VectorField solenoidal;  // in N(D)
};

/// Orthogonal split of the interior-face part of F.
HelmholtzParts helmholtzSplit(const DivergenceSystem& sys, const VectorField& f,
                              SolvePath path = SolvePath::Automatic);

/// 1 / sigma_min^+(D^T): best C with ||p|| <= C ||G_compatible||.
double continuityConstant(const DivergenceSystem& sys);

/// Smallest nonzero eigenvalue of D D^T from the closed-form spectrum of
/// the cell-centered Neumann Laplacian on the box.
double neumannSpectralGap(const Grid& grid);

enum class MmsCase { CosX, CosXCosY, CosXCosYCosZ };

std::string_view toString(MmsCase c) noexcept;
/// Accepts "cosX", "cosXcosY", "cosXcosYcosZ".
std::optional<MmsCase> parseMmsCase(std::string_view name) noexcept;
int axisCount(MmsCase c) noexcept;

struct Manufactured {
  ScalarField pressure;  // product of cosines at cell centers, mean removed
  VectorField force;     // -grad of the analytic pressure at face centers
};

/// Throws InvalidInput when an axis used by the case has a single cell.
Manufactured manufactured(const Grid& grid, MmsCase c);

}  // namespace riesz
