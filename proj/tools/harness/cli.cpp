#include "cli.hpp"

#include "check_iso.hpp"
#include "mms.hpp"
#include "report.hpp"

#include "riesz/errors.hpp"
#include "riesz/field_io.hpp"
#include "riesz/pressure.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace riesz::harness {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void printSummary(const Report& report, std::ostream& out) {
  for (const CheckRecord& r : report.records()) {
    out << (r.pass() ? "PASS " : (r.gating ? "FAIL " : "info ")) << r.name << "  worst "
        << sci(r.worstResidual) << (r.comparison == Comparison::AtMost ? " <= " : " >= ")
        << sci(r.threshold) << "  (" << r.evaluations << " evaluations)\n";
  }
  out << (report.pass() ? "overall: PASS" : "overall: FAIL") << '\n';
}

int finish(const Report& report, const std::string& reportPath, std::ostream& out) {
  if (reportPath.empty()) {
    out << report.dump();
  } else {
    writeReport(report, reportPath);
    printSummary(report, out);
  }
  return report.pass() ? kExitPass : kExitCheckFailed;
}

struct PressureArgs {
  std::string input;
  std::string output;
  std::vector<Index> grid;
  std::vector<double> lengths;
  Index denseCellLimit = SolverOptions{}.denseCellLimit;
};

int runPressure(const PressureArgs& args, std::ostream& out, std::ostream& err) {
  FieldData data = readFieldFile(args.input);
  const VectorField* force = std::get_if<VectorField>(&data);
  if (force == nullptr) {
    err << "error: " << args.input << " holds a scalar field; a vector field is required\n";
    return kExitUsage;
  }
  const Grid& g = force->grid();
  if (!args.grid.empty() &&
      (args.grid[0] != g.nx() || args.grid[1] != g.ny() || args.grid[2] != g.nz())) {
    err << "error: --grid " << args.grid[0] << ',' << args.grid[1] << ',' << args.grid[2]
        << " does not match the file grid " << g.nx() << ',' << g.ny() << ',' << g.nz() << '\n';
    return kExitUsage;
  }
  if (!args.lengths.empty() &&
      (args.lengths[0] != g.lx() || args.lengths[1] != g.ly() || args.lengths[2] != g.lz())) {
    err << "error: --len does not match the file domain lengths\n";
    return kExitUsage;
  }
  if (force->maxBoundaryMagnitude() > 0.0) {
    err << "warning: nonzero boundary-face values (max " << sci(force->maxBoundaryMagnitude())
        << ") are ignored; velocities vanish on the border\n";
  }

  SolverOptions opts;
  opts.denseCellLimit = args.denseCellLimit;
  const DivergenceSystem sys(g, opts);
  const PressureSolution sol = recoverPressure(sys, *force);
  writeFieldFile(args.output, sol.pressure);

  out << "path: " << toString(sol.path) << '\n';
  out << "incompatibility residual: " << sci(sol.incompatibility) << '\n';
  out << "continuity constant: " << sci(continuityConstant(sys)) << '\n';
  out << "weighted mean: " << sci(sol.weightedMean) << '\n';
  return kExitPass;
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Image-to-conullspace isomorphism checks and discrete pressure recovery", "riesz"};
  app.require_subcommand(1);

  RunConfig iso;
  std::string dimsText = "20x30";
  bool isoSingle = false;
  CLI::App* checkIso = app.add_subcommand("check-iso", "Randomized verification of the norm, duality and roundtrip identities");
  checkIso->add_option("--seed", iso.seed, "RNG seed")->capture_default_str();
  checkIso->add_option("--trials", iso.trials, "Gaussian trials per dimension pair")->capture_default_str();
  checkIso->add_option("--dims", dimsText, "Dimension pairs RxC[,RxC...]")->capture_default_str();
  checkIso->add_option("--tol", iso.tol, "Relative rank threshold")->capture_default_str();
  checkIso->add_option("--report", iso.reportPath, "Write the JSON report here (default: stdout)");
  checkIso->add_flag("--single-thread", isoSingle, "Evaluate trials on one thread");

  PressureArgs pressure;
  CLI::App* pressureCmd = app.add_subcommand("pressure", "Recover zero-mean pressure from a force field file");
  pressureCmd->add_option("--input", pressure.input, "Vector field file")->required();
  pressureCmd->add_option("--output", pressure.output, "Scalar field file to write")->required();
  pressureCmd->add_option("--grid", pressure.grid, "Expected NX,NY,NZ")->delimiter(',')->expected(3);
  pressureCmd->add_option("--len", pressure.lengths, "Expected LX,LY,LZ")->delimiter(',')->expected(3);
  pressureCmd->add_option("--dense-limit", pressure.denseCellLimit, "Largest cell count solved densely")->capture_default_str();

  MmsConfig mms;
  std::string caseText = "cosX";
  std::vector<Index> nList{8, 16, 32};
  std::vector<double> mmsLengths;
  std::string mmsReport;
  bool mmsSingle = false;
  CLI::App* mmsCmd = app.add_subcommand("mms", "Manufactured-solution convergence of the pressure recovery");
  mmsCmd->add_option("--case", caseText, "cosX | cosXcosY | cosXcosYcosZ")->capture_default_str();
  mmsCmd->add_option("--n", nList, "Resolutions, strictly increasing")->delimiter(',');
  mmsCmd->add_option("--len", mmsLengths, "LX,LY,LZ")->delimiter(',')->expected(3);
  mmsCmd->add_option("--report", mmsReport, "Write the JSON report here (default: stdout)");
  mmsCmd->add_flag("--single-thread", mmsSingle, "Accepted for symmetry; mms is single-threaded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (checkIso->parsed()) {
      iso.dims = parseDims(dimsText);
      iso.threads = isoSingle ? 1 : 0;
      return finish(runCheckIso(iso), iso.reportPath, out);
    }
    if (pressureCmd->parsed()) {
      return runPressure(pressure, out, err);
    }
    if (mmsCmd->parsed()) {
      const std::optional<MmsCase> c = parseMmsCase(caseText);
      if (!c) {
        err << "error: unknown --case '" << caseText << "'\n";
        return kExitUsage;
      }
      mms.mmsCase = *c;
      mms.nList = nList;
      if (!mmsLengths.empty()) {
        mms.lengths = {mmsLengths[0], mmsLengths[1], mmsLengths[2]};
      }
      return finish(runMms(mms), mmsReport, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace riesz::harness
