#include "qconvex/estimates.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qconvex/bounds.h"
#include "qconvex/errors.h"

namespace qconvex {

ExtendedReal EpsPolyakSq(const QuadraticMap& map,
                         LipschitzEstimator estimator, const Tolerances& tol) {
  double nu_sq = 0.0;
  if (!IsOriginRegular(map, tol, &nu_sq)) return ExtendedReal(0.0);
  const double lipschitz = UpperLipschitz(map, estimator, tol);
  if (lipschitz == 0.0) return ExtendedReal::Infinity();
  return ExtendedReal(nu_sq / (4.0 * lipschitz * lipschitz));
}

EpsEstResult EpsEstSq(const QuadraticMap& map, const SearchOptions& options,
                      const Tolerances& /*tol*/) {
  std::atomic<bool> degenerate{false};
  const double zero_tol = 1e-300;
  auto ratio = [&](const Eigen::VectorXd& c) {
    const HermitianEigen eig =
        DecomposeHermitian(CombineMatrices(map, c), map.field);
    const double norm = std::max(std::abs(eig.values(0)),
                                 std::abs(eig.values(eig.values.size() - 1)));
    const double lin = CombineVectors(map, c).squaredNorm();
    if (norm <= zero_tol) {
      if (lin <= zero_tol) {
        degenerate = true;
        return 0.0;
      }
      return std::numeric_limits<double>::infinity();
    }
    return lin / (4.0 * norm * norm);
  };
  EpsEstResult result;
  const SphereCandidate best =
      MinimizeOverSphere(ratio, map.m(), options, &result.search);
  result.argmin = best.c;
  result.degenerate_direction = degenerate.load();
  result.value_sq = result.degenerate_direction ? ExtendedReal(0.0)
                                                : ExtendedReal(best.value);
  return result;
}

PreconditionedEstimate EpsEstPreconditionedSq(const QuadraticMap& map,
                                              LipschitzEstimator estimator,
                                              const Tolerances& tol) {
  const Eigen::MatrixXd g = GramMatrix(map);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
  if (!(solver.eigenvalues()(0) > tol.psd * g.trace())) {
    throw OriginNotRegular(
        "Gram matrix of the linear terms is singular; origin not regular");
  }
  PreconditionedEstimate out;
  out.estimator = estimator;
  out.preconditioner = solver.eigenvectors() *
                       solver.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                       solver.eigenvectors().transpose();

  QuadraticMap mixed;
  mixed.field = map.field;
  const int m = map.m();
  for (int j = 0; j < m; ++j) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(map.n(), map.n());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(map.n());
    for (int i = 0; i < m; ++i) {
      a += out.preconditioner(i, j) * map.A[i];
      v += out.preconditioner(i, j) * map.v[i];
    }
    mixed.A.push_back(a);
    mixed.v.push_back(v);
  }
  out.lipschitz = UpperLipschitz(mixed, estimator, tol);
  out.value_sq = out.lipschitz == 0.0
                     ? ExtendedReal::Infinity()
                     : ExtendedReal(1.0 / (4.0 * out.lipschitz * out.lipschitz));
  return out;
}

EstimateReport ComputeEstimates(const QuadraticMap& map,
                                const SearchOptions& options,
                                LipschitzEstimator estimator,
                                const Tolerances& tol) {
  EstimateReport report;
  report.estimator = estimator;
  report.origin_regular = IsOriginRegular(map, tol, &report.nu_sq);
  report.lipschitz = UpperLipschitz(map, estimator, tol);
  report.eps_polyak_sq = EpsPolyakSq(map, estimator, tol);
  report.eps_est = EpsEstSq(map, options, tol);
  if (report.origin_regular) {
    report.preconditioned = EpsEstPreconditionedSq(map, estimator, tol);
  }
  return report;
}

}  // namespace qconvex
