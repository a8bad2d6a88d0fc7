#ifndef QCONVEX_SPHERE_SEARCH_H_
#define QCONVEX_SPHERE_SEARCH_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qconvex {

// Controls for minimisation over the unit sphere of dual vectors c in R^m.
struct SearchOptions {
  // Number of grid directions; 0 selects the default (720 for m = 2, 4096
  // for m >= 3). Ignored for m = 1, where both directions are enumerated.
  int grid_density = 0;
  // Iteration budget of each local refinement.
  int refine_steps = 80;
  // Number of grid minima that get refined.
  int refine_seeds = 8;
  std::uint64_t seed = 42;
};

struct SearchMeta {
  int grid_points = 0;
  int refine_steps = 0;
  int refine_seeds = 0;
  std::uint64_t seed = 0;
  long evaluations = 0;
  long skipped = 0;        // directions excluded by a membership test
  std::string method;      // "enumeration", "circle-grid", "halton-sampling"
};

int EffectiveGridDensity(int m, const SearchOptions& options);

// Typical angular distance between neighbouring grid directions.
double AngularSpacing(int m, int count);

// m = 1: {-1, +1}. m = 2: count equally spaced angles starting at angle 0.
// m >= 3: a randomly shifted Halton sequence mapped to the sphere by
// Box-Muller; the shift is drawn from `seed`.
std::vector<Eigen::VectorXd> DualDirections(int m, int count,
                                            std::uint64_t seed);

Eigen::VectorXd CircleDirection(double theta);

// Orthonormal basis (m x (m-1)) of the tangent space at unit vector c.
Eigen::MatrixXd TangentBasis(const Eigen::VectorXd& c);

// Objective values may be +inf; infinite values are treated as worst.
using SphereObjective = std::function<double(const Eigen::VectorXd&)>;

struct SphereCandidate {
  Eigen::VectorXd c;
  double value = 0.0;
};

// Ordering used by every reduction: smaller value wins; values within 1e-12
// (relative) tie and the lexicographically smaller direction wins.
bool PreferCandidate(const Eigen::VectorXd& a, double va,
                     const Eigen::VectorXd& b, double vb);

// Golden-section search for min of fn(theta) on [lo, hi].
double GoldenSectionMin(const std::function<double(double)>& fn, double lo,
                        double hi, int steps, double* arg);

// Nelder-Mead in R^dim starting from `start` with initial simplex edge
// `step`. Returns the best point found.
Eigen::VectorXd NelderMead(
    const std::function<double(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& start, double step, int iterations,
    double* best_value);

// Derivative-free local refinement on the sphere around c0: Nelder-Mead in
// the chart u -> normalize(c0 + T u), T = TangentBasis(c0).
SphereCandidate RefineOnSphere(const SphereObjective& fn,
                               const Eigen::VectorXd& c0, double radius,
                               int steps);

// Grid (or sampling) plus local refinement for a lower semicontinuous
// objective. Every evaluated direction takes part in the final reduction.
SphereCandidate MinimizeOverSphere(const SphereObjective& fn, int m,
                                   const SearchOptions& options,
                                   SearchMeta* meta);

}  // namespace qconvex

#endif  // QCONVEX_SPHERE_SEARCH_H_
