#ifndef QCONVEX_BOUNDS_H_
#define QCONVEX_BOUNDS_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qconvex/extended_real.h"
#include "qconvex/model.h"
#include "qconvex/sphere_search.h"
#include "qconvex/tolerances.h"

namespace qconvex {

// Squared radius bound together with the dual direction attaining it.
struct RadiusBound {
  ExtendedReal value_sq;
  std::optional<Eigen::VectorXd> argmin;
  // "exact-enumeration" (m = 1), "grid-refined" (m = 2),
  // "heuristic-upper-bound" (m >= 3), "origin-not-regular", or
  // "empty-dual-set" when no sampled direction qualifies.
  std::string verdict;
};

enum class IjnrVerdict {
  kStronglyConvexSmooth,
  kStrictlyConvexBoundary,
  kEmptyShellBoundary,
  kInconclusive,
};

const char* IjnrVerdictName(IjnrVerdict verdict);

// Sufficient condition for convexity of the image of the unit sphere.
// `value` is min_c of the lambda_min-shifted pseudo-resolvent norm (not
// squared).
struct IjnrResult {
  ExtendedReal value;
  std::optional<Eigen::VectorXd> argmin;
  IjnrVerdict verdict = IjnrVerdict::kInconclusive;
};

// value > 1 with n > m (2n > m complex): strongly convex and smooth.
// value >= 1 with n = m (2n = m): empty shell. value = 1 within `band`:
// strictly convex. Anything else is inconclusive, the condition being only
// sufficient.
IjnrVerdict ClassifyIjnr(ExtendedReal value, int n, int m, Field field,
                         double band);

struct BoundsReport {
  RadiusBound eps_max;        // shift min(lambda_min, 0), whole dual sphere
  RadiusBound eps_tilde_max;  // shift lambda_min, directions with lambda_min <= 0
  IjnrResult ijnr;
  bool origin_regular = true;
  double gram_min_eigenvalue = 0.0;
  SearchMeta search;
  std::vector<std::string> notes;
};

// Runs one shared dual-sphere search and reduces it three ways. Sharing the
// pool of evaluated directions guarantees eps_max <= eps_tilde_max on every
// instance: the two objectives coincide on the restricted set and the
// lambda_m shift never exceeds the lambda_min shift.
//
// For m >= 3 the minimum is a heuristic upper bound on the true minimum; the
// search metadata records how it was obtained.
BoundsReport ComputeBounds(const QuadraticMap& map,
                           const SearchOptions& options = {},
                           const Tolerances& tol = {});

RadiusBound EpsMax(const QuadraticMap& map, const SearchOptions& options = {},
                   const Tolerances& tol = {});
RadiusBound EpsTildeMax(const QuadraticMap& map,
                        const SearchOptions& options = {},
                        const Tolerances& tol = {});
IjnrResult IjnrCheck(const QuadraticMap& map,
                     const SearchOptions& options = {},
                     const Tolerances& tol = {});

// Smallest eigenvalue of the Gram matrix and whether it is nonzero relative
// to its trace.
bool IsOriginRegular(const QuadraticMap& map, const Tolerances& tol,
                     double* gram_min_eigenvalue = nullptr,
                     Eigen::VectorXd* null_direction = nullptr);

}  // namespace qconvex

#endif  // QCONVEX_BOUNDS_H_
