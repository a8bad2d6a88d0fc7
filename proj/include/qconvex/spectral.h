#ifndef QCONVEX_SPECTRAL_H_
#define QCONVEX_SPECTRAL_H_

#include <complex>

#include <Eigen/Core>

#include "qconvex/extended_real.h"
#include "qconvex/model.h"
#include "qconvex/tolerances.h"

namespace qconvex {

// Eigen-decomposition of c.A together with the expansion
// c.v = sum_k alpha_k x_k in the eigenbasis.
struct SpectralData {
  Field field = Field::kReal;
  Eigen::VectorXd direction;           // c, unit length
  Eigen::VectorXd eigenvalues;         // ascending
  Eigen::MatrixXcd eigenvectors;       // x_k as columns
  Eigen::VectorXcd coefficients;       // alpha_k = x_k* (c.v)
  Eigen::VectorXd weights;             // |alpha_k|^2
  double linear_norm_sq = 0.0;         // |c.v|^2
  double spectral_radius = 0.0;
  double cluster_tol = 0.0;            // absolute width of the bottom cluster
  int bottom_multiplicity = 0;
  double bottom_projection_sq = 0.0;   // sum of weights over the bottom cluster

  int n() const { return static_cast<int>(eigenvalues.size()); }
  double lambda_min() const { return eigenvalues(0); }

  // True when the projection of c.v onto the bottom eigenspace counts as zero.
  bool BottomProjectionVanishes(const Tolerances& tol) const {
    return bottom_projection_sq <= tol.null_projection * linear_norm_sq;
  }
};

SpectralData ComputeSpectralData(const QuadraticMap& map,
                                 const Eigen::VectorXd& c,
                                 const Tolerances& tol = {});

enum class ShiftMode {
  kLambdaM,    // shift by min(lambda_min(c.A), 0)
  kLambdaMin,  // shift by lambda_min(c.A)
};

// lim_{eps -> 0+} |(c.A - s + eps)^{-1} c.v|^2 for the shift s selected by
// `mode`, evaluated from the eigen-expansion rather than by small-eps
// numerics. The value is +inf exactly when s sits on an eigenvalue cluster
// that c.v has a nonzero projection onto.
//
// Taking this limit per direction before minimising over c agrees with the
// lim-of-min definition of the radius bounds: for fixed c the eps-family is
// monotonically increasing as eps decreases, so min and lim commute on the
// compact dual sphere.
ExtendedReal PseudoResolventSq(const SpectralData& sd, ShiftMode mode,
                               const Tolerances& tol = {});
ExtendedReal PseudoResolventSq(const QuadraticMap& map,
                               const Eigen::VectorXd& c, ShiftMode mode,
                               const Tolerances& tol = {});

}  // namespace qconvex

#endif  // QCONVEX_SPECTRAL_H_
