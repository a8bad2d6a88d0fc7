#include "cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qconvex/bounds.h"
#include "qconvex/errors.h"
#include "qconvex/estimates.h"
#include "qconvex/io.h"
#include "qconvex/lipschitz.h"
#include "qconvex/report.h"
#include "qconvex/verify.h"

namespace qconvex::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<double> epsilon;
  int directions = 0;  // 0: per-dimension default
  int samples = -1;    // -1: per-command default
  int grid_density = 0;
  int refine_steps = 80;
  std::uint64_t seed = 42;
  std::optional<double> tol_cluster;
  std::optional<double> tol_null;
  std::optional<double> tol_audit;
  std::string estimator = "best";
  std::string out;
  std::string format;
};

void AddCommonOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input,-i", cfg.input, "instance JSON file")->required();
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--tol-cluster", cfg.tol_cluster,
                  "relative eigenvalue clustering tolerance");
  cmd->add_option("--tol-null", cfg.tol_null,
                  "relative threshold for a vanishing bottom projection");
  cmd->add_option("--tol-audit", cfg.tol_audit, "relative audit slack");
  cmd->add_option("--out,-o", cfg.out, "write the report to this file");
  cmd->add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void AddSearchOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--grid-density", cfg.grid_density,
                  "dual-sphere grid size (0 = default)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--refine-steps", cfg.refine_steps,
                  "local refinement iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void AddEpsilonOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--epsilon,-e", cfg.epsilon, "ball radius")->required();
  cmd->add_option("--directions", cfg.directions,
                  "number of dual directions (0 = default)");
}

Tolerances MakeTolerances(const RunConfig& cfg) {
  Tolerances tol;
  if (cfg.tol_cluster) tol.cluster_rel = *cfg.tol_cluster;
  if (cfg.tol_null) tol.null_projection = *cfg.tol_null;
  if (cfg.tol_audit) tol.audit_rel = *cfg.tol_audit;
  if (!(tol.cluster_rel >= 0.0) || !(tol.null_projection >= 0.0) ||
      !(tol.audit_rel >= 0.0)) {
    throw InvalidInput("tolerances must be non-negative");
  }
  return tol;
}

std::string Execute(const RunConfig& cfg) {
  RunInfo info;
  info.command = cfg.command;
  info.seed = cfg.seed;
  info.tolerances = MakeTolerances(cfg);
  const Tolerances& tol = info.tolerances;

  const bool csv = cfg.format == "csv";
  if (csv && cfg.command != "boundary") {
    throw InvalidInput("--format csv is only available for 'boundary'");
  }

  const QuadraticMap map = LoadInstance(cfg.input, tol, &info.warnings);

  SearchOptions search;
  search.grid_density = cfg.grid_density;
  search.refine_steps = cfg.refine_steps;
  search.seed = cfg.seed;

  nlohmann::json report;
  if (cfg.command == "bounds") {
    report = BoundsReportJson(ComputeBounds(map, search, tol), info);
  } else if (cfg.command == "ijnr") {
    report = IjnrReportJson(ComputeBounds(map, search, tol), info);
  } else if (cfg.command == "lipschitz") {
    const int samples = cfg.samples < 0 ? 10000 : cfg.samples;
    report = LipschitzReportJson(
        ComputeLipschitz(map, samples, cfg.seed, tol), info);
  } else if (cfg.command == "estimates") {
    const LipschitzEstimator estimator =
        ParseLipschitzEstimator(cfg.estimator);
    report = EstimateReportJson(
        ComputeEstimates(map, search, estimator, tol), info);
  } else if (cfg.command == "boundary") {
    const int directions =
        cfg.directions > 0 ? cfg.directions : DefaultDirections(map.m());
    const BoundarySample sample =
        SampleBoundary(map, *cfg.epsilon, directions, tol, cfg.seed);
    if (csv || cfg.format.empty()) {
      std::ostringstream text;
      WriteBoundaryCsv(sample, map.field, text);
      return text.str();
    }
    report = BoundarySampleJson(sample, info);
  } else if (cfg.command == "verify") {
    const int directions =
        cfg.directions > 0 ? cfg.directions : DefaultDirections(map.m());
    const int samples = cfg.samples < 0 ? 2000 : cfg.samples;
    report = AuditReportJson(
        ConvexityAudit(map, *cfg.epsilon, directions, samples, cfg.seed, tol),
        info);
  }
  return report.dump(2) + "\n";
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Convexity certificates for images of small balls under "
               "quadratic maps",
               kToolName};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CLI::App* bounds = app.add_subcommand("bounds", "radius bounds eps_max, eps_tilde_max");
  CLI::App* ijnr = app.add_subcommand("ijnr", "joint numerical range condition");
  CLI::App* lipschitz = app.add_subcommand("lipschitz", "Lipschitz-constant estimates");
  CLI::App* estimates = app.add_subcommand("estimates", "conservative radius estimates");
  CLI::App* boundary = app.add_subcommand("boundary", "sample the image boundary");
  CLI::App* verify = app.add_subcommand("verify", "audit convexity at a radius");

  for (CLI::App* cmd : {bounds, ijnr, lipschitz, estimates, boundary, verify}) {
    AddCommonOptions(cmd, cfg);
  }
  for (CLI::App* cmd : {bounds, ijnr, estimates}) AddSearchOptions(cmd, cfg);
  estimates->add_option("--estimator", cfg.estimator,
                        "Lipschitz estimator: polyak, new, trace, nov, best")
      ->capture_default_str();
  lipschitz->add_option("--samples", cfg.samples,
                        "sphere samples for the lower bound (default 10000)");
  AddEpsilonOptions(boundary, cfg);
  AddEpsilonOptions(verify, cfg);
  verify->add_option("--samples", cfg.samples,
                     "image samples (default 2000)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kInvalidInput;
  }
  for (CLI::App* cmd : app.get_subcommands()) cfg.command = cmd->get_name();

  try {
    const std::string text = Execute(cfg);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw InvalidInput("cannot open output file '" + cfg.out + "'");
      file << text;
      if (!file) throw NumericalFailure("failed writing '" + cfg.out + "'");
    }
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const OriginNotRegular& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace qconvex::cli
