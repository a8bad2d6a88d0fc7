#ifndef QCONVEX_LIPSCHITZ_H_
#define QCONVEX_LIPSCHITZ_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qconvex/model.h"
#include "qconvex/tolerances.h"

namespace qconvex {

// L(A) = max_{|x|=1} |(x* A_i x)_i| = max_{|c|=1} lambda_max(c.A). The
// estimators below are upper bounds; LipschitzLowerBound is a sampled lower
// bound used as an oracle.

// sqrt(sum_i ||A_i||^2), spectral norms.
double LipschitzPolyak(const QuadraticMap& map);
// lambda_max(sum_i A_i^2)^{1/2}.
double LipschitzNew(const QuadraticMap& map);
// lambda_max(T)^{1/2} with T_ij = Re Tr(A_i A_j).
double LipschitzTrace(const QuadraticMap& map);

// Member of the candidate set for the trace-corrected estimate.
struct NovCandidate {
  double lambda = 0.0;
  double value = 0.0;         // F(lambda)
  bool eigen_branch = false;  // lambda is an eigenvalue of M with no pole
};

struct NovResult {
  double value = 0.0;  // max over candidates of sqrt(F)
  Eigen::VectorXd a;   // a_i = Tr(A_i) / n
  Eigen::MatrixXd M;   // M_ij = Tr(A_i A_j) - n a_i a_j
  std::vector<NovCandidate> candidates;
};

// max_{|c|=1} (c.a + sqrt(c^T M c)), reduced to a one-dimensional problem:
// with M = sum_k mu_k e_k e_k^T and a_k = e_k . a,
//   F(lambda) = lambda (1 + sum_k a_k^2 / (lambda - mu_k)),
// maximised over the stationary points of F and over the eigenvalues mu_k
// whose pole is absent (a_k = 0 or mu_k = 0) and where F' >= 0.
// Throws NumericalFailure if M is not positive semidefinite.
NovResult LipschitzNov(const QuadraticMap& map, const Tolerances& tol = {});

// The same quantity as a trust-region maximisation: L_nov^2 =
// max_{|u|=1} |a + M^{1/2} u|^2, solved with the secular-equation kernel.
// Independent route used to cross-check LipschitzNov.
double LipschitzNovBySecular(const QuadraticMap& map,
                             const Tolerances& tol = {});

struct LowerBoundResult {
  double value = 0.0;
  Eigen::VectorXcd x;  // unit vector attaining `value`
};

// Sampled maximisation of |(x* A_i x)_i| over the unit sphere followed by
// projected-gradient ascent from the best samples. Every evaluated point is
// feasible, so the result never exceeds L(A).
LowerBoundResult LipschitzLowerBound(const QuadraticMap& map, int samples,
                                     std::uint64_t seed);

enum class LipschitzEstimator { kPolyak, kNew, kTrace, kNov, kBest };

const char* LipschitzEstimatorName(LipschitzEstimator estimator);
LipschitzEstimator ParseLipschitzEstimator(const std::string& name);

// Upper estimate selected by `estimator`; kBest is min(L_new, L_n, L_nov).
double UpperLipschitz(const QuadraticMap& map, LipschitzEstimator estimator,
                      const Tolerances& tol = {});

struct LipschitzReport {
  double polyak = 0.0;
  double new_estimate = 0.0;
  double trace = 0.0;
  NovResult nov;
  LowerBoundResult lower;
  int samples = 0;
  std::uint64_t seed = 0;
};

LipschitzReport ComputeLipschitz(const QuadraticMap& map, int samples,
                                 std::uint64_t seed,
                                 const Tolerances& tol = {});

}  // namespace qconvex

#endif  // QCONVEX_LIPSCHITZ_H_
