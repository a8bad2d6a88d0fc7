#include "qconvex/report.h"

namespace qconvex {
namespace {

using nlohmann::json;

json OptionalVector(const std::optional<Eigen::VectorXd>& v) {
  return v ? ToJson(*v) : json(nullptr);
}

json ComplexVectorJson(const Eigen::VectorXcd& x) {
  json out = json::array();
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x(k).imag() == 0.0) {
      out.push_back(x(k).real());
    } else {
      out.push_back(json::array({x(k).real(), x(k).imag()}));
    }
  }
  return out;
}

json DirectionList(const std::vector<Eigen::VectorXd>& dirs) {
  json out = json::array();
  for (const Eigen::VectorXd& c : dirs) out.push_back(ToJson(c));
  return out;
}

}  // namespace

json ReportHeader(const RunInfo& info) {
  return json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", info.command},
              {"seed", info.seed},
              {"tolerances", ToJson(info.tolerances)},
              {"warnings", info.warnings}};
}

json ToJson(ExtendedReal value) {
  if (value.is_infinite()) return "inf";
  return value.value();
}

json ToJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json ToJson(const SearchMeta& meta) {
  return json{{"method", meta.method},
              {"grid_points", meta.grid_points},
              {"refine_steps", meta.refine_steps},
              {"refine_seeds", meta.refine_seeds},
              {"seed", meta.seed},
              {"evaluations", meta.evaluations},
              {"skipped", meta.skipped}};
}

json ToJson(const Tolerances& tol) {
  return json{{"cluster_rel", tol.cluster_rel},
              {"null_projection", tol.null_projection},
              {"verdict", tol.verdict},
              {"audit_rel", tol.audit_rel},
              {"psd", tol.psd},
              {"sym_rel", tol.sym_rel}};
}

json BoundsReportJson(const BoundsReport& report, const RunInfo& info) {
  json out = ReportHeader(info);
  out["eps_max_sq"] = ToJson(report.eps_max.value_sq);
  out["eps_max"] = ToJson(report.eps_max.value_sq.Sqrt());
  out["argmin_c"] = OptionalVector(report.eps_max.argmin);
  out["eps_max_verdict"] = report.eps_max.verdict;
  out["eps_tilde_max_sq"] = ToJson(report.eps_tilde_max.value_sq);
  out["eps_tilde_max"] = ToJson(report.eps_tilde_max.value_sq.Sqrt());
  out["argmin_c_tilde"] = OptionalVector(report.eps_tilde_max.argmin);
  out["eps_tilde_max_verdict"] = report.eps_tilde_max.verdict;
  out["ijnr_value"] = ToJson(report.ijnr.value);
  out["ijnr_verdict"] = IjnrVerdictName(report.ijnr.verdict);
  out["origin_regular"] = report.origin_regular;
  out["gram_min_eigenvalue"] = report.gram_min_eigenvalue;
  out["search"] = ToJson(report.search);
  out["notes"] = report.notes;
  return out;
}

json IjnrReportJson(const BoundsReport& report, const RunInfo& info) {
  json out = ReportHeader(info);
  out["ijnr_value"] = ToJson(report.ijnr.value);
  out["argmin_c"] = OptionalVector(report.ijnr.argmin);
  out["verdict"] = IjnrVerdictName(report.ijnr.verdict);
  out["search"] = ToJson(report.search);
  out["notes"] = report.notes;
  return out;
}

json LipschitzReportJson(const LipschitzReport& report, const RunInfo& info) {
  json out = ReportHeader(info);
  out["L_polyak"] = report.polyak;
  out["L_new"] = report.new_estimate;
  out["L_trace"] = report.trace;
  out["L_nov"] = report.nov.value;
  json candidates = json::array();
  for (const NovCandidate& c : report.nov.candidates) {
    candidates.push_back(json{{"lambda", c.lambda},
                              {"F", c.value},
                              {"eigen_branch", c.eigen_branch}});
  }
  out["nov_candidates"] = std::move(candidates);
  out["L_lower"] = report.lower.value;
  out["lower_argmax_x"] = ComplexVectorJson(report.lower.x);
  out["samples"] = report.samples;
  out["sample_seed"] = report.seed;
  return out;
}

json EstimateReportJson(const EstimateReport& report, const RunInfo& info) {
  json out = ReportHeader(info);
  out["origin_regular"] = report.origin_regular;
  out["nu_sq"] = report.nu_sq;
  out["estimator"] = LipschitzEstimatorName(report.estimator);
  out["lipschitz"] = report.lipschitz;
  out["eps_polyak_sq"] = ToJson(report.eps_polyak_sq);
  out["eps_est_sq"] = ToJson(report.eps_est.value_sq);
  out["eps_est_argmin_c"] = ToJson(report.eps_est.argmin);
  out["eps_est_degenerate_direction"] = report.eps_est.degenerate_direction;
  out["search"] = ToJson(report.eps_est.search);
  if (report.preconditioned) {
    const PreconditionedEstimate& p = *report.preconditioned;
    json rows = json::array();
    for (Eigen::Index i = 0; i < p.preconditioner.rows(); ++i) {
      rows.push_back(ToJson(Eigen::VectorXd(p.preconditioner.row(i).transpose())));
    }
    out["eps_preconditioned_sq"] = ToJson(p.value_sq);
    out["preconditioner"] = std::move(rows);
    out["preconditioned_lipschitz"] = p.lipschitz;
  } else {
    out["eps_preconditioned_sq"] = nullptr;
  }
  return out;
}

json AuditReportJson(const AuditReport& report, const RunInfo& info) {
  json out = ReportHeader(info);
  out["eps"] = report.eps;
  out["directions"] = report.directions;
  out["samples"] = report.samples;
  out["tau_audit"] = report.tau_audit;
  out["property2_ok"] = report.property2.ok;
  out["property2_violations"] = DirectionList(report.property2.violations);
  out["property2_marginal"] = DirectionList(report.property2.marginal);
  out["convexity_ok"] = report.convexity_ok;
  out["support_violations"] = report.support_violations;
  out["max_support_violation"] = report.max_support_violation;
  out["hull_checked"] = report.hull_checked;
  out["hull_violations"] = report.hull_violations;
  out["max_hull_violation"] = report.max_hull_violation;
  out["curvature_checked"] = report.curvature_checked;
  out["curvature_violations"] = report.curvature_violations;
  out["min_turn"] = report.min_turn;
  json list = json::array();
  for (const AuditViolation& v : report.violations) {
    list.push_back(json{{"kind", v.kind}, {"index", v.index}, {"amount", v.amount}});
  }
  out["violations"] = std::move(list);
  return out;
}

json BoundarySampleJson(const BoundarySample& sample, const RunInfo& info) {
  json out = ReportHeader(info);
  out["eps"] = sample.eps;
  out["directions"] = sample.entries.size();
  json rows = json::array();
  for (const BoundaryEntry& e : sample.entries) {
    rows.push_back(json{{"c", ToJson(e.c)},
                        {"x", ComplexVectorJson(e.x)},
                        {"y", ToJson(e.y)},
                        {"lambda", e.lambda},
                        {"hard_case", e.hard_case},
                        {"unique", e.unique},
                        {"support_value", e.support_value}});
  }
  out["entries"] = std::move(rows);
  return out;
}

}  // namespace qconvex
