#ifndef QCONVEX_ESTIMATES_H_
#define QCONVEX_ESTIMATES_H_

#include <optional>
#include <string>

#include <Eigen/Core>

#include "qconvex/extended_real.h"
#include "qconvex/lipschitz.h"
#include "qconvex/model.h"
#include "qconvex/sphere_search.h"
#include "qconvex/tolerances.h"

namespace qconvex {

// Polyak-type radius: min_c |c.v|^2 / (4 max_c lambda_max(c.A)^2)
// = nu^2 / (4 L^2) with nu^2 = lambda_min(Gram) and L an upper estimate of
// the Lipschitz constant (a lower estimate would not be conservative).
// Zero when the Gram matrix is singular; +inf when L = 0.
ExtendedReal EpsPolyakSq(const QuadraticMap& map,
                         LipschitzEstimator estimator = LipschitzEstimator::kBest,
                         const Tolerances& tol = {});

struct EpsEstResult {
  ExtendedReal value_sq;
  Eigen::VectorXd argmin;
  // Set when some direction had c.v = 0 and c.A = 0, where the ratio is
  // undefined; value_sq is then 0.
  bool degenerate_direction = false;
  SearchMeta search;
};

// min over |c| = 1 of |c.v|^2 / (4 ||c.A||^2).
EpsEstResult EpsEstSq(const QuadraticMap& map,
                      const SearchOptions& options = {},
                      const Tolerances& tol = {});

struct PreconditionedEstimate {
  ExtendedReal value_sq;
  Eigen::MatrixXd preconditioner;  // Lambda = g^{-1/2}
  double lipschitz = 0.0;          // upper estimate of L(hat A)
  LipschitzEstimator estimator = LipschitzEstimator::kBest;
};

// 1 / (4 L(hat A)^2) with hat A_j = sum_i Lambda_ij A_i and Lambda the
// symmetric inverse square root of the Gram matrix, so that
// Lambda^T g Lambda = I. Throws OriginNotRegular when g is singular.
PreconditionedEstimate EpsEstPreconditionedSq(
    const QuadraticMap& map,
    LipschitzEstimator estimator = LipschitzEstimator::kBest,
    const Tolerances& tol = {});

struct EstimateReport {
  ExtendedReal eps_polyak_sq;
  EpsEstResult eps_est;
  std::optional<PreconditionedEstimate> preconditioned;
  double nu_sq = 0.0;
  bool origin_regular = true;
  LipschitzEstimator estimator = LipschitzEstimator::kBest;
  double lipschitz = 0.0;  // estimate used for eps_polyak_sq
};

EstimateReport ComputeEstimates(
    const QuadraticMap& map, const SearchOptions& options = {},
    LipschitzEstimator estimator = LipschitzEstimator::kBest,
    const Tolerances& tol = {});

}  // namespace qconvex

#endif  // QCONVEX_ESTIMATES_H_
