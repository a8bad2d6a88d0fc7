#ifndef QCONVEX_REPORT_H_
#define QCONVEX_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qconvex/bounds.h"
#include "qconvex/estimates.h"
#include "qconvex/extended_real.h"
#include "qconvex/lipschitz.h"
#include "qconvex/tolerances.h"
#include "qconvex/verify.h"

namespace qconvex {

inline constexpr const char* kToolName = "qconvex";
inline constexpr const char* kToolVersion = "1.0.0";

// Context stamped into every report.
struct RunInfo {
  std::string command;
  std::uint64_t seed = 42;
  Tolerances tolerances;
  std::vector<std::string> warnings;
};

// Finite values become numbers, +inf the string "inf".
nlohmann::json ToJson(ExtendedReal value);
nlohmann::json ToJson(const Eigen::VectorXd& v);
nlohmann::json ToJson(const SearchMeta& meta);
nlohmann::json ToJson(const Tolerances& tol);

// Tool name, version, command, seed, tolerances and input warnings.
nlohmann::json ReportHeader(const RunInfo& info);

nlohmann::json BoundsReportJson(const BoundsReport& report,
                                const RunInfo& info);
nlohmann::json IjnrReportJson(const BoundsReport& report, const RunInfo& info);
nlohmann::json LipschitzReportJson(const LipschitzReport& report,
                                   const RunInfo& info);
nlohmann::json EstimateReportJson(const EstimateReport& report,
                                  const RunInfo& info);
nlohmann::json AuditReportJson(const AuditReport& report, const RunInfo& info);
nlohmann::json BoundarySampleJson(const BoundarySample& sample,
                                  const RunInfo& info);

}  // namespace qconvex

#endif  // QCONVEX_REPORT_H_
