#ifndef QCONVEX_SECULAR_H_
#define QCONVEX_SECULAR_H_

#include <Eigen/Core>

#include "qconvex/model.h"
#include "qconvex/spectral.h"
#include "qconvex/tolerances.h"

namespace qconvex {

// Minimiser of c.f(x) over the sphere |x|^2 = z.
struct SecularSolution {
  double lambda_star = 0.0;  // Lagrange multiplier, <= lambda_min(c.A)
  Eigen::VectorXcd x;        // minimiser
  bool hard_case = false;    // multiplier pinned at lambda_min
  bool unique = true;        // false when a free bottom-eigenspace component exists
  double support_value = 0.0;  // min over the sphere of c.f(x)
  int iterations = 0;
};

// Solves (c.A - lambda) x = c.v, |x|^2 = z with the smallest admissible
// multiplier. In the regular case lambda* < lambda_min is the unique root of
// sum_k |alpha_k|^2 / (lambda_k - lambda)^2 = z below the spectrum. In the
// hard case (c.v orthogonal to the bottom eigenspace and the remaining sum
// at lambda_min not exceeding z) lambda* = lambda_min and x picks up a
// component along the lowest-index bottom eigenvector, normalised so that
// its largest entry is real and positive.
//
// Throws InvalidInput when z <= 0.
SecularSolution SolveSecular(const SpectralData& sd, double z,
                             const Tolerances& tol = {});

// min_{|x|^2 = z} c.f(x) = z lambda* - sum_k |alpha_k|^2 / (lambda_k - lambda*).
double SupportValue(const SpectralData& sd, double z,
                    const Tolerances& tol = {});

struct SupportPoint {
  Eigen::VectorXcd x;
  Eigen::VectorXd y;  // f(x)
  SecularSolution solution;
};

// Point where the hyperplane with normal c supports the image of |x|^2 = z.
SupportPoint ComputeSupportPoint(const QuadraticMap& map,
                                 const Eigen::VectorXd& c, double z,
                                 const Tolerances& tol = {});

// min over the whole ball |x|^2 <= z_max of c.f(x). Equals the sphere value
// when lambda*(z_max) <= 0; otherwise c.A is positive definite and the
// minimiser is the interior point (c.A)^{-1} c.v.
struct BallSupport {
  double value = 0.0;
  double lambda = 0.0;     // multiplier of the active constraint, 0 if interior
  double radius_sq = 0.0;  // |x|^2 at the minimiser
  bool interior = false;
  Eigen::VectorXcd x;      // a minimiser
};
BallSupport MinimizeOverBall(const SpectralData& sd, double z_max,
                             const Tolerances& tol = {});

}  // namespace qconvex

#endif  // QCONVEX_SECULAR_H_
