#include "qconvex/spectral.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qconvex/errors.h"

namespace qconvex {

SpectralData ComputeSpectralData(const QuadraticMap& map,
                                 const Eigen::VectorXd& c,
                                 const Tolerances& tol) {
  if (c.size() != map.m()) {
    std::ostringstream os;
    os << "dual vector has length " << c.size() << ", expected " << map.m();
    throw InvalidInput(os.str());
  }
  if (std::abs(c.norm() - 1.0) > 1e-12) {
    throw InvalidInput("dual vector must have unit length");
  }

  SpectralData sd;
  sd.field = map.field;
  sd.direction = c;
  HermitianEigen eig = DecomposeHermitian(CombineMatrices(map, c), map.field);
  sd.eigenvalues = std::move(eig.values);
  sd.eigenvectors = std::move(eig.vectors);

  const Eigen::VectorXcd w = CombineVectors(map, c);
  sd.coefficients = sd.eigenvectors.adjoint() * w;
  sd.weights = sd.coefficients.cwiseAbs2();
  sd.linear_norm_sq = w.squaredNorm();

  const int n = sd.n();
  sd.spectral_radius = std::max(std::abs(sd.eigenvalues(0)),
                                std::abs(sd.eigenvalues(n - 1)));
  sd.cluster_tol = tol.cluster_rel * std::max(1.0, sd.spectral_radius);
  sd.bottom_multiplicity = 0;
  sd.bottom_projection_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    if (sd.eigenvalues(k) - sd.eigenvalues(0) > sd.cluster_tol) break;
    ++sd.bottom_multiplicity;
    sd.bottom_projection_sq += sd.weights(k);
  }
  return sd;
}

ExtendedReal PseudoResolventSq(const SpectralData& sd, ShiftMode mode,
                               const Tolerances& tol) {
  const double lmin = sd.lambda_min();
  const double shift =
      mode == ShiftMode::kLambdaMin ? lmin : std::min(lmin, 0.0);

  // Eigenvalues with lambda_k - s <= cluster_tol behave as zero modes.
  double null_weight = 0.0;
  double value = 0.0;
  bool shift_is_eigenvalue = false;
  for (int k = 0; k < sd.n(); ++k) {
    const double gap = sd.eigenvalues(k) - shift;
    if (gap <= sd.cluster_tol) {
      shift_is_eigenvalue = true;
      null_weight += sd.weights(k);
    } else {
      value += sd.weights(k) / (gap * gap);
    }
  }
  if (shift_is_eigenvalue &&
      null_weight > tol.null_projection * sd.linear_norm_sq) {
    return ExtendedReal::Infinity();
  }
  return ExtendedReal(value);
}

ExtendedReal PseudoResolventSq(const QuadraticMap& map,
                               const Eigen::VectorXd& c, ShiftMode mode,
                               const Tolerances& tol) {
  return PseudoResolventSq(ComputeSpectralData(map, c, tol), mode, tol);
}

}  // namespace qconvex
