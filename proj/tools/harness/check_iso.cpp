#include "check_iso.hpp"

#include "riesz/errors.hpp"
#include "riesz/iso.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace riesz::harness {

namespace {

constexpr std::size_t kDrawsPerCheck = 4;
constexpr std::size_t kProjectorSamples = 3;
// Singular values of the near-rank-deficient case, relative to the largest.
constexpr double kNearDeficientRatio = 1e-8;
constexpr Index kNearDeficientCount = 3;

// Checks whose error is bounded by cond(A) * eps; on near-rank-deficient
// operators (cond ~ 1e8) they are reported as diagnostics only.
const std::set<std::string> kConditioningLimited{
    "roundtrip_image_rel", "roundtrip_conullspace_rel", "inverse_paths_agree_rel"};

struct CheckDef {
  const char* name;
  double threshold;
};

// Fixed record order in the report.
constexpr CheckDef kChecks[] = {
    {"iso_tilde_norm_rel", thresholds::kIsoNorm},
    {"coset_map_norm_rel", thresholds::kCosetMapNorm},
    {"composite_norm_rel", thresholds::kCompositeNorm},
    {"norm_transpose_rel", thresholds::kNormTranspose},
    {"roundtrip_image_rel", thresholds::kRoundtrip},
    {"roundtrip_conullspace_rel", thresholds::kRoundtrip},
    {"inverse_paths_agree_rel", thresholds::kInversePaths},
    {"rank_transpose_mismatch", 0.0},
    {"nullity_plus_rank_mismatch", 0.0},
    {"expected_rank_mismatch", 0.0},
    {"angle_transpose_image_vs_nullspace_perp", thresholds::kPrincipalAngle},
    {"angle_image_vs_cokernel_perp", thresholds::kPrincipalAngle},
    {"j_factorization_residual", thresholds::kJFactorization},
    {"injectivity_deficit", thresholds::kInjectivity},
    {"eq2_chain_violation", thresholds::kEq2Slack},
    {"linearity_rel", thresholds::kLinearity},
    {"representative_independence", thresholds::kRepresentative},
    {"quotient_norm_infimum_violation", thresholds::kQuotientNorm},
    {"riesz_identity_residual", 0.0},
    {"zero_operator_conventions", 0.0},
    {"projector_case_residual", thresholds::kProjectorCase},
    {"projector_case_structure", thresholds::kProjectorStructure},
};

double relErr(const Vector& got, const Vector& want) {
  const double denom = want.norm();
  const double diff = (got - want).norm();
  return denom > 0.0 ? diff / denom : diff;
}

double relDiff(double got, double want) {
  return want > 0.0 ? std::abs(got - want) / want : std::abs(got);
}

struct CasePlan {
  std::size_t dimIndex;
  CaseKind kind;
  std::size_t trial;
  Index rows;
  Index cols;
};

Matrix nearRankDeficient(Index rows, Index cols, Rng& rng) {
  const Index k = std::min(rows, cols);
  const Matrix u = rng.randomSubspace(rows, k).vectors();
  const Matrix v = rng.randomSubspace(cols, k).vectors();
  Vector sigma(k);
  for (Index i = 0; i < k; ++i) {
    const double base = 1.0 + rng.uniform();
    sigma(i) = i < k - kNearDeficientCount ? base : kNearDeficientRatio * base;
  }
  return u * sigma.asDiagonal() * v.transpose();
}

struct Built {
  Operator op;
  std::optional<std::size_t> expectedRank;
};

Built buildCase(const CasePlan& plan, Rng& rng) {
  const Index r = plan.rows;
  const Index c = plan.cols;
  const Index k = std::min(r, c);
  switch (plan.kind) {
    case CaseKind::Gaussian:
      return {Operator(rng.gaussianMatrix(r, c)), std::nullopt};
    case CaseKind::Zero:
      return {Operator::zero(r, c), 0};
    case CaseKind::Identity:
      return {Operator::identity(c), static_cast<std::size_t>(c)};
    case CaseKind::IdentityPadded:
      return {Operator(Matrix(Matrix::Identity(r, c))), static_cast<std::size_t>(k)};
    case CaseKind::DuplicatedColumns: {
      const Index distinct = (c + 1) / 2;
      Matrix m(r, c);
      m.leftCols(distinct) = rng.gaussianMatrix(r, distinct);
      for (Index j = distinct; j < c; ++j) {
        m.col(j) = m.col(j - distinct);
      }
      return {Operator(m), static_cast<std::size_t>(std::min(r, distinct))};
    }
    case CaseKind::NearRankDeficient:
      // The small singular values sit above the rank threshold and must be kept.
      return {Operator(nearRankDeficient(r, c, rng)), static_cast<std::size_t>(k)};
  }
  throw InvalidInput("unknown case kind");
}

std::vector<CasePlan> planCases(const RunConfig& cfg) {
  std::vector<CasePlan> plans;
  for (std::size_t d = 0; d < cfg.dims.size(); ++d) {
    const auto [r, c] = cfg.dims[d];
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      plans.push_back({d, CaseKind::Gaussian, t, r, c});
    }
    plans.push_back({d, CaseKind::Zero, 0, r, c});
    plans.push_back({d, CaseKind::Identity, 0, c, c});
    plans.push_back({d, CaseKind::IdentityPadded, 0, r, c});
    if (c >= 2) {
      plans.push_back({d, CaseKind::DuplicatedColumns, 0, r, c});
    }
    if (std::min(r, c) > kNearDeficientCount) {
      plans.push_back({d, CaseKind::NearRankDeficient, 0, r, c});
    }
  }
  return plans;
}

CaseResult runCase(const CasePlan& plan, const RunConfig& cfg) {
  Rng rng = Rng::stream(cfg.seed, {plan.dimIndex, static_cast<std::uint64_t>(plan.kind), plan.trial});
  Built built = buildCase(plan, rng);
  CaseResult result = evaluateOperator(built.op, plan.kind, built.expectedRank, cfg.tol, rng);
  result.rows = plan.rows;
  result.cols = plan.cols;
  return result;
}

}  // namespace

std::string caseName(CaseKind kind) {
  switch (kind) {
    case CaseKind::Gaussian:
      return "gaussian";
    case CaseKind::Zero:
      return "zero";
    case CaseKind::Identity:
      return "identity";
    case CaseKind::IdentityPadded:
      return "identity_padded";
    case CaseKind::DuplicatedColumns:
      return "duplicated_columns";
    case CaseKind::NearRankDeficient:
      return "near_rank_deficient";
  }
  return "unknown";
}

void validate(const RunConfig& cfg) {
  if (cfg.trials < 1) {
    throw InvalidInput("trials must be at least 1");
  }
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
    throw InvalidInput("tol must be positive");
  }
  if (cfg.dims.empty()) {
    throw InvalidInput("at least one dimension pair is required");
  }
  for (const auto& [r, c] : cfg.dims) {
    if (r < 1 || c < 1) {
      throw InvalidInput("dimensions must be positive");
    }
  }
}

std::vector<std::pair<Index, Index>> parseDims(const std::string& text) {
  std::vector<std::pair<Index, Index>> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find_first_of("xX");
    if (x == std::string::npos) {
      throw InvalidInput("dimension pair '" + item + "' is not of the form RxC");
    }
    try {
      std::size_t used = 0;
      const long long r = std::stoll(item.substr(0, x), &used);
      if (used != x) {
        throw InvalidInput("");
      }
      const std::string tail = item.substr(x + 1);
      const long long c = std::stoll(tail, &used);
      if (used != tail.size()) {
        throw InvalidInput("");
      }
      dims.emplace_back(static_cast<Index>(r), static_cast<Index>(c));
    } catch (const std::exception&) {
      throw InvalidInput("dimension pair '" + item + "' is not of the form RxC");
    }
  }
  if (dims.empty()) {
    throw InvalidInput("no dimension pairs given");
  }
  return dims;
}

CaseResult evaluateOperator(const Operator& a, CaseKind kind,
                            std::optional<std::size_t> expectedRank, double tol, Rng& rng) {
  CaseResult res;
  res.kind = kind;
  res.rows = a.rows();
  res.cols = a.cols();
  auto& out = res.metrics;

  const IsoContext ctx(a, tol);
  const double normA = operatorNorm(a);
  const double isoNorm = isoTildeNorm(ctx);

  out.emplace_back("iso_tilde_norm_rel", relDiff(isoNorm, normA));
  out.emplace_back("coset_map_norm_rel", relDiff(cosetMapNorm(ctx), normA));
  out.emplace_back("composite_norm_rel", relDiff(compositeNorm(ctx), normA * normA));
  out.emplace_back("norm_transpose_rel", relDiff(operatorNorm(a.transpose()), normA));

  const Index r = ctx.image().count();
  const Index nullDim = ctx.nullspace().count();
  const auto imageDraw = [&] {
    return r == 0 ? Vector(Vector::Zero(a.rows())) : Vector(ctx.image().vectors() * rng.gaussianVector(r));
  };

  double rtImage = 0.0;
  double rtConull = 0.0;
  double agree = 0.0;
  for (std::size_t i = 0; i < kDrawsPerCheck; ++i) {
    const Vector h = imageDraw();
    rtImage = std::max(rtImage, relErr(invertIsoTilde(ctx, applyIsoTilde(ctx, h)), h));

    const Index rt = ctx.transposeImage().count();
    const Vector f = rt == 0 ? Vector(Vector::Zero(a.cols()))
                             : Vector(ctx.transposeImage().vectors() * rng.gaussianVector(rt));
    const Vector viaConstruction = invertIsoTilde(ctx, Functional(f));
    const Vector viaOracle = invertIsoTildeMinNorm(ctx, Functional(f));
    rtConull = std::max(rtConull, relErr(applyIsoTilde(ctx, viaConstruction).coords(), f));
    agree = std::max(agree, relErr(viaConstruction, viaOracle));
  }
  out.emplace_back("roundtrip_image_rel", rtImage);
  out.emplace_back("roundtrip_conullspace_rel", rtConull);
  out.emplace_back("inverse_paths_agree_rel", agree);

  const std::size_t rankA = rank(a, tol);
  const std::size_t rankAt = rank(a.transpose(), tol);
  out.emplace_back("rank_transpose_mismatch", std::abs(double(rankA) - double(rankAt)));
  out.emplace_back("nullity_plus_rank_mismatch",
                   std::abs(double(nullDim) + double(rankA) - double(a.cols())));
  if (expectedRank) {
    out.emplace_back("expected_rank_mismatch", std::abs(double(rankA) - double(*expectedRank)));
  }

  const FredholmReport fr = fredholmReport(ctx);
  out.emplace_back("angle_transpose_image_vs_nullspace_perp", fr.angleTransposeImageVsNullspacePerp);
  out.emplace_back("angle_image_vs_cokernel_perp", fr.angleImageVsCokernelPerp);
  out.emplace_back("j_factorization_residual", fr.jFactorizationResidual);

  if (r > 0) {
    double deficit = 0.0;
    for (std::size_t i = 0; i < kDrawsPerCheck; ++i) {
      const Vector h = ctx.image().vectors() * rng.unitVector(r);
      const double ratio = applyIsoTilde(ctx, h).norm() / ctx.smallestRetainedSingularValue();
      deficit = std::max(deficit, 1.0 - ratio);
    }
    out.emplace_back("injectivity_deficit", std::max(0.0, deficit));
  }

  {
    double violation = 0.0;
    const double scale = normA * normA;
    for (std::size_t i = 0; i < kDrawsPerCheck; ++i) {
      const double ap = a.apply(rng.unitVector(a.cols())).norm();
      const double slack = ap * ap - isoNorm * ap;
      violation = std::max(violation, scale > 0.0 ? slack / scale : std::abs(slack));
    }
    out.emplace_back("eq2_chain_violation", std::max(0.0, violation));
  }

  {
    double lin = 0.0;
    for (std::size_t i = 0; i < kDrawsPerCheck; ++i) {
      const Vector h1 = imageDraw();
      const Vector h2 = imageDraw();
      const double alpha = rng.gaussian();
      const double beta = rng.gaussian();
      const Vector a1 = applyIsoTilde(ctx, h1).coords();
      const Vector a2 = applyIsoTilde(ctx, h2).coords();
      const Vector combined = applyIsoTilde(ctx, alpha * h1 + beta * h2).coords();
      const double denom = std::abs(alpha) * a1.norm() + std::abs(beta) * a2.norm();
      const double diff = (combined - (alpha * a1 + beta * a2)).norm();
      lin = std::max(lin, denom > 0.0 ? diff / denom : diff);
    }
    out.emplace_back("linearity_rel", lin);
  }

  if (nullDim > 0) {
    double rep = 0.0;
    double quot = 0.0;
    for (std::size_t i = 0; i < kDrawsPerCheck; ++i) {
      const Vector x = rng.gaussianVector(a.cols());
      const Vector n = ctx.nullspace().vectors() * rng.gaussianVector(nullDim);
      const Vector base = applyCosetMap(ctx, ctx.coset(x));
      const Vector shifted = applyCosetMap(ctx, ctx.coset(x + n));
      const double denom = normA * n.norm();
      if (denom > 0.0) {
        rep = std::max(rep, (shifted - base).norm() / denom);
      }
      quot = std::max(quot, (cosetNorm(ctx, x) - (x + n).norm()) / x.norm());
    }
    out.emplace_back("representative_independence", rep);
    out.emplace_back("quotient_norm_infimum_violation", std::max(0.0, quot));
  }

  if (kind == CaseKind::Identity) {
    double worst = 0.0;
    for (std::size_t i = 0; i < kDrawsPerCheck; ++i) {
      const Vector h = rng.gaussianVector(a.rows());
      worst = std::max(worst, (applyIsoTilde(ctx, h).coords() - h).cwiseAbs().maxCoeff());
      worst = std::max(worst, (invertIsoTilde(ctx, Functional(h)) - h).cwiseAbs().maxCoeff());
    }
    out.emplace_back("riesz_identity_residual", worst);
  }

  if (kind == CaseKind::Zero) {
    const bool ok = ctx.rank() == 0 && ctx.image().isEmpty() &&
                    ctx.nullspace().count() == a.cols() && normA == 0.0 && isoNorm == 0.0 &&
                    compositeNorm(ctx) == 0.0 && cosetMapNorm(ctx) == 0.0;
    out.emplace_back("zero_operator_conventions", ok ? 0.0 : 1.0);
  }

  if (kind == CaseKind::Gaussian) {
    const Index d = a.cols();
    const Index k = static_cast<Index>(rng.uniformInt(0, d));
    const SubspaceBasis n = rng.randomSubspace(d, k);
    std::vector<Vector> samples;
    for (std::size_t i = 0; i < kProjectorSamples; ++i) {
      samples.push_back(rng.gaussianVector(d));
    }
    const ProjectorCaseReport pr = projectorSpecialCase(n, samples, tol);
    out.emplace_back("projector_case_residual", pr.compositeResidual);
    out.emplace_back("projector_case_structure",
                     std::max({pr.symmetryResidual, pr.idempotencyResidual, pr.nullspaceDistance}));
  }
  return res;
}

Report runCheckIso(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  const std::vector<CasePlan> plans = planCases(cfg);
  std::vector<CaseResult> results(plans.size());

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(plans.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < plans.size(); ++i) {
      results[i] = runCase(plans[i], cfg);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < plans.size(); i = next++) {
            results[i] = runCase(plans[i], cfg);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

  Report report("check-iso");
  for (const CheckDef& def : kChecks) {
    report.record(def.name, def.threshold);
  }
  nlohmann::json perKind = nlohmann::json::object();
  for (const CaseResult& res : results) {
    const std::string kind = caseName(res.kind);
    perKind[kind] = perKind.value(kind, 0) + 1;
    for (const auto& [name, value] : res.metrics) {
      if (res.kind == CaseKind::NearRankDeficient && kConditioningLimited.contains(name)) {
        const double threshold = report.record(name, 0.0).threshold;
        report.record(kind + "/" + name, threshold, Comparison::AtMost, false).observe(value);
      } else {
        report.record(name, 0.0).observe(value);
      }
    }
  }

  nlohmann::json dims = nlohmann::json::array();
  for (const auto& [r, c] : cfg.dims) {
    dims.push_back({r, c});
  }
  report.config() = {{"seed", cfg.seed}, {"trials", cfg.trials}, {"dims", dims}, {"tol", cfg.tol}};
  report.data() = {{"cases", results.size()}, {"casesByKind", perKind}};
  report.setElapsed(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

}  // namespace riesz::harness
