#include "qconvex/secular.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qconvex/errors.h"

namespace qconvex {
namespace {

// q(lambda) = sum_k w_k / (lambda_k - lambda)^2 and its derivative.
struct SecularSum {
  double q = 0.0;
  double dq = 0.0;
};

SecularSum EvaluateSum(const SpectralData& sd, double lambda) {
  SecularSum s;
  for (int k = 0; k < sd.n(); ++k) {
    if (sd.weights(k) == 0.0) continue;
    const double gap = sd.eigenvalues(k) - lambda;
    const double inv = 1.0 / gap;
    const double term = sd.weights(k) * inv * inv;
    s.q += term;
    s.dq += 2.0 * term * inv;
  }
  return s;
}

// Largest-magnitude entry made real and positive.
Eigen::VectorXcd Canonical(const Eigen::VectorXcd& x) {
  Eigen::Index idx = 0;
  x.cwiseAbs().maxCoeff(&idx);
  const std::complex<double> pivot = x(idx);
  if (std::abs(pivot) == 0.0) return x;
  return x * (std::abs(pivot) / pivot);
}

// Smallest root of q(lambda) = z below lambda_min. Newton on the nearly
// linear 1/sqrt(q) - 1/sqrt(z), safeguarded by bisection.
double SolveRegular(const SpectralData& sd, double z, int* iterations) {
  const double lmin = sd.lambda_min();
  const double delta = sd.cluster_tol;
  double lo = lmin - std::sqrt(sd.linear_norm_sq / z) - 1.0;
  double hi = lmin - delta;
  // The root can sit closer to lambda_min than the cluster width when z is
  // very large; move hi towards the pole until q(hi) >= z.
  for (int i = 0; i < 64 && EvaluateSum(sd, hi).q < z; ++i) {
    const double next = lmin - (lmin - hi) * 0.5;
    if (next == hi) break;
    hi = next;
  }
  if (EvaluateSum(sd, hi).q < z) return hi;

  const double inv_sqrt_z = 1.0 / std::sqrt(z);
  double lambda = lo;
  int it = 0;
  for (; it < 200; ++it) {
    const SecularSum s = EvaluateSum(sd, lambda);
    const double phi = s.q - z;
    if (std::abs(phi) <= 1e-12 * std::max(1.0, z)) break;
    if (phi < 0.0) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    if (hi - lo <= 1e-14 * (1.0 + std::abs(lmin))) break;
    // h(lambda) = 1/sqrt(q) - 1/sqrt(z), h' = -q'/(2 q^{3/2}).
    double next = 0.5 * (lo + hi);
    if (s.q > 0.0 && s.dq > 0.0) {
      const double rq = 1.0 / std::sqrt(s.q);
      const double h = rq - inv_sqrt_z;
      const double dh = -0.5 * s.dq * rq * rq * rq;
      const double newton = lambda - h / dh;
      if (newton > lo && newton < hi) next = newton;
    }
    lambda = next;
  }
  *iterations = it;
  return lambda;
}

}  // namespace

SecularSolution SolveSecular(const SpectralData& sd, double z,
                             const Tolerances& tol) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw InvalidInput("sphere radius squared must be positive and finite");
  }
  const int n = sd.n();
  const int bottom = sd.bottom_multiplicity;
  const double lmin = sd.lambda_min();

  SecularSolution sol;
  sol.x = Eigen::VectorXcd::Zero(n);

  if (sd.linear_norm_sq == 0.0) {
    // Pure eigenvalue problem: any unit vector of the bottom eigenspace
    // scaled to sqrt(z) is a minimiser.
    sol.lambda_star = lmin;
    sol.x = std::sqrt(z) * Canonical(sd.eigenvectors.col(0));
    sol.hard_case = true;
    sol.unique = false;
    sol.support_value = z * lmin;
    return sol;
  }

  double tail = 0.0;  // sum over the complement of the bottom cluster at lmin
  for (int k = bottom; k < n; ++k) {
    const double gap = sd.eigenvalues(k) - lmin;
    tail += sd.weights(k) / (gap * gap);
  }

  if (sd.BottomProjectionVanishes(tol) && tail <= z) {
    sol.hard_case = true;
    sol.lambda_star = lmin;
    double value = z * lmin;
    for (int k = bottom; k < n; ++k) {
      const double gap = sd.eigenvalues(k) - lmin;
      sol.x += (sd.coefficients(k) / gap) * sd.eigenvectors.col(k);
      value -= sd.weights(k) / gap;
    }
    const double free_sq = z - tail;
    sol.x += std::sqrt(std::max(0.0, free_sq)) *
             Canonical(sd.eigenvectors.col(0));
    sol.unique = free_sq <= 1e-12 * std::max(1.0, z);
    sol.support_value = value;
    return sol;
  }

  const double lambda = SolveRegular(sd, z, &sol.iterations);
  sol.lambda_star = lambda;
  double value = z * lambda;
  for (int k = 0; k < n; ++k) {
    const double gap = sd.eigenvalues(k) - lambda;
    sol.x += (sd.coefficients(k) / gap) * sd.eigenvectors.col(k);
    value -= sd.weights(k) / gap;
  }
  sol.support_value = value;
  sol.unique = true;
  return sol;
}

double SupportValue(const SpectralData& sd, double z, const Tolerances& tol) {
  return SolveSecular(sd, z, tol).support_value;
}

SupportPoint ComputeSupportPoint(const QuadraticMap& map,
                                 const Eigen::VectorXd& c, double z,
                                 const Tolerances& tol) {
  const SpectralData sd = ComputeSpectralData(map, c, tol);
  SupportPoint out;
  out.solution = SolveSecular(sd, z, tol);
  out.x = out.solution.x;
  out.y = EvalMap(map, out.x);
  return out;
}

BallSupport MinimizeOverBall(const SpectralData& sd, double z_max,
                             const Tolerances& tol) {
  const SecularSolution sphere = SolveSecular(sd, z_max, tol);
  BallSupport out;
  if (sphere.lambda_star <= 0.0) {
    out.value = sphere.support_value;
    out.lambda = sphere.lambda_star;
    out.radius_sq = z_max;
    out.x = sphere.x;
    return out;
  }
  // lambda* > 0 forces lambda_min > 0: unconstrained minimiser inside.
  out.interior = true;
  out.lambda = 0.0;
  double value = 0.0;
  double radius_sq = 0.0;
  out.x = Eigen::VectorXcd::Zero(sd.n());
  for (int k = 0; k < sd.n(); ++k) {
    const double lk = sd.eigenvalues(k);
    value -= sd.weights(k) / lk;
    radius_sq += sd.weights(k) / (lk * lk);
    out.x += (sd.coefficients(k) / lk) * sd.eigenvectors.col(k);
  }
  out.value = value;
  out.radius_sq = radius_sq;
  return out;
}

}  // namespace qconvex
