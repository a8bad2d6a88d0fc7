#ifndef QCONVEX_VERIFY_H_
#define QCONVEX_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qconvex/model.h"
#include "qconvex/tolerances.h"

namespace qconvex {

// Support point of the image of the sphere |x| = eps in direction c.
struct BoundaryEntry {
  Eigen::VectorXd c;
  Eigen::VectorXcd x;
  Eigen::VectorXd y;
  double lambda = 0.0;  // multiplier lambda*(eps^2)
  bool hard_case = false;
  bool unique = true;
  double support_value = 0.0;  // min over the sphere of c.f
  double cluster_tol = 0.0;
};

struct BoundarySample {
  double eps = 0.0;
  std::vector<BoundaryEntry> entries;
};

// Default direction counts: 2 for m = 1, 360 for m = 2, 512 for m >= 3.
int DefaultDirections(int m);

// Directions follow DualDirections(m, directions, seed): both signs for
// m = 1, equally spaced angles for m = 2 (so the entries trace the boundary
// counter-clockwise), Halton sampling for m >= 3.
// Throws InvalidInput when eps <= 0 or directions < 2 (m = 1) / < 8.
BoundarySample SampleBoundary(const QuadraticMap& map, double eps,
                              int directions, const Tolerances& tol = {},
                              std::uint64_t seed = 42);

// The outer layer of f(B_eps) in direction c is the sphere |x| = eps iff
// lambda*(eps^2) < 0. Directions with lambda* >= -cluster_tol violate the
// boundary-preimage property; those with |lambda*| <= cluster_tol are also
// listed as marginal.
struct Property2Report {
  bool ok = true;
  std::vector<Eigen::VectorXd> violations;
  std::vector<Eigen::VectorXd> marginal;
};

Property2Report CheckProperty2(const BoundarySample& sample);
Property2Report CheckProperty2(const QuadraticMap& map, double eps,
                               int directions, const Tolerances& tol = {});

// f(x) for x uniform in the ball |x| <= eps: Gaussian direction in R^d and
// radius eps U^{1/d}, d = n (real) or 2n (complex).
std::vector<Eigen::VectorXd> SampleImage(const QuadraticMap& map, double eps,
                                         int count, std::uint64_t seed);

struct AuditViolation {
  std::string kind;  // "support", "hull", "curvature"
  int index = 0;     // image sample or boundary entry
  double amount = 0.0;
};

struct AuditReport {
  double eps = 0.0;
  int directions = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double tau_audit = 0.0;

  Property2Report property2;

  long support_violations = 0;
  double max_support_violation = 0.0;
  bool hull_checked = false;  // m = 2 only
  long hull_violations = 0;
  double max_hull_violation = 0.0;
  bool curvature_checked = false;  // m = 2 only
  long curvature_violations = 0;
  double min_turn = 0.0;  // smallest normalised cross product on the curve

  bool convexity_ok = true;
  std::vector<AuditViolation> violations;  // first 100, in discovery order
};

// One-sided convexity audit of f(B_eps) against the boundary sample, i.e.
// the support points of the image of the sphere |x| = eps:
//  - support: every sampled image point and every boundary point y
//    satisfies c.y >= min_{|x| = eps} c.f(x) - tau_audit for all sampled c;
//    points of the ball falling below a sphere support line expose an outer
//    layer that does not come from the sphere;
//  - hull (m = 2): no sampled point lies beyond a chord of the boundary
//    polygon by more than the height of the triangle cut off by the two
//    adjacent support lines, plus tau_audit;
//  - curvature (m = 2): consecutive boundary points turn left.
// tau_audit = tol.audit_rel * max(1, largest |y| on the boundary).
AuditReport ConvexityAudit(const QuadraticMap& map, double eps, int directions,
                           int count, std::uint64_t seed,
                           const Tolerances& tol = {});

}  // namespace qconvex

#endif  // QCONVEX_VERIFY_H_
