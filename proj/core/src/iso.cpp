#include "riesz/iso.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>

namespace riesz {

namespace {

double largestSingularValue(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  return operatorNorm(Operator(m));
}

}  // namespace

IsoContext::IsoContext(Operator a, double tol)
    : a_(std::move(a)),
      at_(a_.transpose()),
      tol_(tol),
      rank_(0),
      transposeRank_(0),
      norm_(0.0),
      sigmaMinRetained_(0.0),
      image_(SubspaceBasis::empty(a_.rows())),
      transposeImage_(SubspaceBasis::empty(a_.cols())),
      transposeNullspace_(SubspaceBasis::empty(a_.rows())),
      nullspaceComplement_(SubspaceBasis::empty(a_.cols())),
      imageProjector_(a_.rows(), a_.rows()),
      nullspaceProjector_(a_.cols(), a_.cols()) {
  FundamentalSubspaces direct = fundamentalSubspaces(a_, tol_);
  FundamentalSubspaces dual = fundamentalSubspaces(at_, tol_);

  rank_ = direct.rank;
  transposeRank_ = dual.rank;
  norm_ = direct.sigmaMax;
  sigma_ = direct.singularValues;
  sigmaMinRetained_ = rank_ == 0 ? 0.0 : sigma_(static_cast<Index>(rank_) - 1);

  nullspace_ = std::make_shared<const SubspaceBasis>(std::move(direct.nullspace));
  image_ = std::move(direct.image);
  transposeImage_ = std::move(dual.image);
  transposeNullspace_ = std::move(dual.nullspace);
  nullspaceComplement_ = orthogonalComplement(*nullspace_);

  imageProjector_ = orthoProjector(image_);
  nullspaceProjector_ = orthoProjector(*nullspace_);

  transposeQr_.setThreshold(tol_);
  transposeQr_.compute(Matrix(at_.entries()));
}

CosetVector IsoContext::coset(Vector x) const { return CosetVector(std::move(x), nullspace_); }

Vector IsoContext::solveTransposeLeastSquares(const Vector& f) const {
  if (f.size() != a_.cols()) {
    throw DimensionMismatch("transpose least squares: right-hand side has the wrong dimension");
  }
  if (rank_ == 0) {
    return Vector::Zero(a_.rows());
  }
  return transposeQr_.solve(f);
}

Functional applyIsoTilde(const IsoContext& ctx, const Vector& h) {
  if (h.size() != ctx.codomainDim()) {
    throw DimensionMismatch("applyIsoTilde: vector does not live in the codomain");
  }
  if (!h.allFinite()) {
    throw InvalidInput("applyIsoTilde: non-finite vector");
  }
  const double dist = ctx.image().distance(h);
  const double threshold = ctx.tol() * h.norm();
  if (dist > threshold) {
    throw NotInImage(dist, threshold);
  }
  return Functional(ctx.transposeOp().apply(h));
}

Membership conullspaceContains(const IsoContext& ctx, const Functional& f) {
  if (f.dim() != ctx.domainDim()) {
    throw DimensionMismatch("conullspaceContains: functional has the wrong dimension");
  }
  const double residual = ctx.nullspace().project(f.coords()).norm();
  return {residual <= ctx.tol() * std::max(f.norm(), 1.0), residual};
}

Vector invertIsoTilde(const IsoContext& ctx, const Functional& f) {
  const Membership m = conullspaceContains(ctx, f);
  if (!m.contained) {
    throw NotInConullspace(m.residual, ctx.tol() * std::max(f.norm(), 1.0));
  }
  // phi = (h0|.) with A^tr phi = f; then drop the Im(A)^perp part of h0.
  const Vector h0 = ctx.solveTransposeLeastSquares(f.coords());
  return ctx.imageProjector().apply(h0);
}

Vector invertIsoTildeMinNorm(const IsoContext& ctx, const Functional& f) {
  const Membership m = conullspaceContains(ctx, f);
  if (!m.contained) {
    throw NotInConullspace(m.residual, ctx.tol() * std::max(f.norm(), 1.0));
  }
  return minNormLeastSquares(ctx.transposeOp(), f.coords(), ctx.tol());
}

double isoTildeNorm(const IsoContext& ctx) {
  const SubspaceBasis& image = ctx.image();
  if (image.isEmpty()) {
    return 0.0;
  }
  const Matrix injected = Matrix(ctx.imageProjector().entries()) * image.vectors();
  return largestSingularValue(Matrix(ctx.transposeOp().entries()) * injected);
}

double cosetNorm(const IsoContext& ctx, const Vector& x) {
  if (x.size() != ctx.domainDim()) {
    throw DimensionMismatch("cosetNorm: vector does not live in the domain");
  }
  return (x - ctx.nullspace().project(x)).norm();
}

Vector applyCosetMap(const IsoContext& ctx, const CosetVector& c) {
  if (c.nullspacePtr() != ctx.nullspacePtr()) {
    if (c.nullspace().ambientDim() != ctx.domainDim() ||
        c.nullspace().count() != ctx.nullspace().count() ||
        projectorDistance(c.nullspace(), ctx.nullspace()) > ctx.tol()) {
      throw InvalidInput("coset is not taken modulo the nullspace of this operator");
    }
  }
  return ctx.op().apply(c.representative());
}

Functional applyComposite(const IsoContext& ctx, const CosetVector& c) {
  return applyIsoTilde(ctx, applyCosetMap(ctx, c));
}

double cosetMapNorm(const IsoContext& ctx) {
  const SubspaceBasis& perp = ctx.nullspaceComplement();
  if (perp.isEmpty()) {
    return 0.0;
  }
  return largestSingularValue(Matrix(ctx.op().entries()) * perp.vectors());
}

double compositeNorm(const IsoContext& ctx) {
  const SubspaceBasis& perp = ctx.nullspaceComplement();
  if (perp.isEmpty()) {
    return 0.0;
  }
  const Matrix a(ctx.op().entries());
  return largestSingularValue(a.transpose() * (a * perp.vectors()));
}

FredholmReport fredholmReport(const IsoContext& ctx) {
  FredholmReport report;
  report.rankA = ctx.rank();
  report.rankAt = ctx.transposeRank();
  report.angleImageVsCokernelPerp =
      largestPrincipalAngle(ctx.image(), orthogonalComplement(ctx.transposeNullspace()));
  report.angleTransposeImageVsNullspacePerp =
      largestPrincipalAngle(ctx.transposeImage(), orthogonalComplement(ctx.nullspace()));

  // Duality map H -> H*, identity under the standard-basis identification.
  const Operator j = Operator::identity(ctx.codomainDim());
  const Matrix atj = Matrix(ctx.transposeOp().entries()) * Matrix(j.entries());
  for (Index i = 0; i < ctx.image().count(); ++i) {
    const Vector b = ctx.image().vector(i);
    const double r = (applyIsoTilde(ctx, b).coords() - atj * b).norm();
    report.jFactorizationResidual = std::max(report.jFactorizationResidual, r);
  }
  return report;
}

ProjectorCaseReport projectorSpecialCase(const SubspaceBasis& n, std::span<const Vector> samples,
                                         double tol) {
  // I - P_N, assembled as the projector onto N^perp: when N is the whole
  // space this is exactly zero rather than rounding noise that a relative
  // rank threshold would read as full rank.
  const Matrix a = orthoProjector(orthogonalComplement(n)).entries();

  ProjectorCaseReport report;
  report.symmetryResidual = (a - a.transpose()).cwiseAbs().maxCoeff();
  report.idempotencyResidual = (a * a - a).cwiseAbs().maxCoeff();

  const IsoContext ctx{Operator(a), tol};
  report.nullspaceDistance = projectorDistance(ctx.nullspace(), n);
  for (const Vector& x : samples) {
    const Functional composite = applyComposite(ctx, ctx.coset(x));
    const double r = (composite.coords() - ctx.op().apply(x)).norm() / std::max(x.norm(), 1.0);
    report.compositeResidual = std::max(report.compositeResidual, r);
    ++report.samples;
  }
  return report;
}

}  // namespace riesz
