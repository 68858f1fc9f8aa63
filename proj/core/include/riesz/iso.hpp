#pragma once

// The image-to-conullspace isomorphism  h -> (h|A.)  from Im(A) onto
// N^perp(A), the coset map  x + N(A) -> Ax  from X/N(A) onto Im(A), and
// their norms. Coordinates are Euclidean on both X and H, so the duality
// map H -> H* is the identity matrix and functionals on X are vectors of
// length cols(A).

#include "riesz/operator.hpp"

#include <cstddef>
#include <memory>
#include <span>

namespace riesz {

/// Everything the isomorphisms need about one operator A. All bases and
/// projectors are computed eagerly; the context is immutable afterwards.
///
/// N(A) and Im(A) come from an SVD of A. Im(A^tr) and N(A^tr) come from a
/// separate SVD of A^tr so that the duality identities compare two
/// independent computations.
class IsoContext {
 public:
  explicit IsoContext(Operator a, double tol = kDefaultTol);

  const Operator& op() const noexcept { return a_; }
  const Operator& transposeOp() const noexcept { return at_; }
  double tol() const noexcept { return tol_; }
  Index domainDim() const noexcept { return a_.cols(); }
  Index codomainDim() const noexcept { return a_.rows(); }

  std::size_t rank() const noexcept { return rank_; }
  std::size_t transposeRank() const noexcept { return transposeRank_; }
  /// ||A||, the largest singular value.
  double norm() const noexcept { return norm_; }
  /// Smallest singular value kept by the rank threshold; 0 if rank is 0.
  double smallestRetainedSingularValue() const noexcept { return sigmaMinRetained_; }
  const Vector& singularValues() const noexcept { return sigma_; }

  const SubspaceBasis& nullspace() const noexcept { return *nullspace_; }
  const std::shared_ptr<const SubspaceBasis>& nullspacePtr() const noexcept { return nullspace_; }
  const SubspaceBasis& image() const noexcept { return image_; }
  const SubspaceBasis& transposeImage() const noexcept { return transposeImage_; }
  const SubspaceBasis& transposeNullspace() const noexcept { return transposeNullspace_; }
  /// Orthonormal basis of N(A)^perp in X, built by completing N(A).
  const SubspaceBasis& nullspaceComplement() const noexcept { return nullspaceComplement_; }

  const Operator& imageProjector() const noexcept { return imageProjector_; }
  const Operator& nullspaceProjector() const noexcept { return nullspaceProjector_; }

  /// The coset x + N(A).
  CosetVector coset(Vector x) const;

  /// Least-squares solve of A^tr h0 = f by column-pivoted Householder QR
  /// with the context's rank threshold. Not minimum-norm in general.
  Vector solveTransposeLeastSquares(const Vector& f) const;

 private:
  Operator a_;
  Operator at_;
  double tol_;
  std::size_t rank_;
  std::size_t transposeRank_;
  double norm_;
  double sigmaMinRetained_;
  Vector sigma_;
  std::shared_ptr<const SubspaceBasis> nullspace_;
  SubspaceBasis image_;
  SubspaceBasis transposeImage_;
  SubspaceBasis transposeNullspace_;
  SubspaceBasis nullspaceComplement_;
  Operator imageProjector_;
  Operator nullspaceProjector_;
  Eigen::ColPivHouseholderQR<Matrix> transposeQr_;
};

struct Membership {
  bool contained = false;
  double residual = 0.0;
};

/// h -> (h|A.), returned as the coordinates A^tr h.
/// Throws NotInImage if dist(h, Im A) > tol * ||h||.
Functional applyIsoTilde(const IsoContext& ctx, const Vector& h);

/// Preimage of f under applyIsoTilde, built the constructive way: a
/// least-squares solution h0 of A^tr h0 = f, then its orthogonal projection
/// onto Im(A). Throws NotInConullspace when f has a component along N(A).
Vector invertIsoTilde(const IsoContext& ctx, const Functional& f);

/// Same preimage through the SVD pseudoinverse of A^tr. Its minimum-norm
/// solution already lies in Im(A); used to cross-check invertIsoTilde.
Vector invertIsoTildeMinNorm(const IsoContext& ctx, const Functional& f);

/// f in N^perp(A) iff ||P_N(A) f|| <= tol * max(||f||, 1).
Membership conullspaceContains(const IsoContext& ctx, const Functional& f);

/// Norm of h -> A^tr h restricted to Im(A), computed on the image basis.
double isoTildeNorm(const IsoContext& ctx);

/// Quotient norm of x + N(A): ||(I - P_N) x||.
double cosetNorm(const IsoContext& ctx, const Vector& x);

/// x + N(A) -> Ax. Throws if the coset is taken modulo another subspace.
Vector applyCosetMap(const IsoContext& ctx, const CosetVector& c);

/// x + N(A) -> (Ax|A), the composite of both isomorphisms.
Functional applyComposite(const IsoContext& ctx, const CosetVector& c);

/// Norm of the coset map: sup ||Ax|| over cosets of unit quotient norm,
/// realized exactly on N(A)^perp.
double cosetMapNorm(const IsoContext& ctx);

/// Norm of the composite x + N(A) -> A^tr A x with the quotient norm on
/// the domain.
double compositeNorm(const IsoContext& ctx);

struct FredholmReport {
  std::size_t rankA = 0;
  std::size_t rankAt = 0;
  /// Largest principal angle between Im(A) and the annihilator of N(A^tr).
  double angleImageVsCokernelPerp = 0.0;
  /// Largest principal angle between Im(A^tr) and N(A)^perp.
  double angleTransposeImageVsNullspacePerp = 0.0;
  /// max over the image basis of ||applyIsoTilde(b) - (A^tr J) b||.
  double jFactorizationResidual = 0.0;
};

FredholmReport fredholmReport(const IsoContext& ctx);

struct ProjectorCaseReport {
  double symmetryResidual = 0.0;     // max |A - A^T|
  double idempotencyResidual = 0.0;  // max |A^2 - A|
  double nullspaceDistance = 0.0;    // projector distance between N(A) and N
  double compositeResidual = 0.0;    // max ||composite(x + N) - Ax|| / max(||x||, 1)
  std::size_t samples = 0;
};

/// Builds A = I - P_N and checks that the composite map coincides with
/// x + N -> Ax on every sample.
ProjectorCaseReport projectorSpecialCase(const SubspaceBasis& n, std::span<const Vector> samples,
                                         double tol = kDefaultTol);

}  // namespace riesz
