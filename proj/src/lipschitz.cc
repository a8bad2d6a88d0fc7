#include "qconvex/lipschitz.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qconvex/errors.h"
#include "qconvex/parallel.h"
#include "qconvex/rng.h"
#include "qconvex/secular.h"
#include "qconvex/spectral.h"

namespace qconvex {
namespace {

double SpectralNorm(const Eigen::MatrixXcd& a, Field field) {
  const HermitianEigen eig = DecomposeHermitian(a, field);
  return std::max(std::abs(eig.values(0)),
                  std::abs(eig.values(eig.values.size() - 1)));
}

Eigen::MatrixXd TraceGram(const QuadraticMap& map) {
  const int m = map.m();
  Eigen::MatrixXd t(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // Tr(A_i A_j) = sum_{kl} (A_i)_{kl} (A_j)_{lk}; real for Hermitian pairs.
      t(i, j) = t(j, i) =
          (map.A[i].cwiseProduct(map.A[j].transpose())).sum().real();
    }
  }
  return t;
}

// Pole or removable term of F: mu is an eigenvalue of M, a2 the summed
// squared projection of a onto its eigenspace.
struct NovGroup {
  double mu = 0.0;
  double a2 = 0.0;
  bool pole = false;
};

class NovFunction {
 public:
  explicit NovFunction(std::vector<NovGroup> groups)
      : groups_(std::move(groups)) {}

  double F(double lambda) const {
    double f = lambda;
    for (const auto& g : groups_) {
      if (g.pole) {
        f += g.a2 * lambda / (lambda - g.mu);
      } else if (g.mu == 0.0) {
        f += g.a2;
      }
    }
    return f;
  }

  double dF(double lambda) const {
    double d = 1.0;
    for (const auto& g : groups_) {
      if (!g.pole) continue;
      const double gap = lambda - g.mu;
      d -= g.mu * g.a2 / (gap * gap);
    }
    return d;
  }

  // Derivative of dF; strictly decreasing between consecutive poles.
  double d2F(double lambda) const {
    double d = 0.0;
    for (const auto& g : groups_) {
      if (!g.pole) continue;
      const double gap = lambda - g.mu;
      d += 2.0 * g.mu * g.a2 / (gap * gap * gap);
    }
    return d;
  }

  const std::vector<NovGroup>& groups() const { return groups_; }

 private:
  std::vector<NovGroup> groups_;
};

// Bisection for a sign change of fn on (lo, hi): fn(lo) has sign `lo_sign`.
template <class Fn>
double Bisect(Fn fn, double lo, double hi, bool lo_positive) {
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) {
      lo = hi = mid;
      break;
    }
    if ((fn(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd LinearCoefficients(const QuadraticMap& map) {
  Eigen::VectorXd a(map.m());
  for (int i = 0; i < map.m(); ++i) a(i) = map.A[i].trace().real() / map.n();
  return a;
}

Eigen::VectorXd YOf(const QuadraticMap& map, const Eigen::VectorXcd& x) {
  Eigen::VectorXd y(map.m());
  for (int i = 0; i < map.m(); ++i) y(i) = x.dot(map.A[i] * x).real();
  return y;
}

Eigen::VectorXcd RandomUnit(const QuadraticMap& map, Rng& rng) {
  const int n = map.n();
  Eigen::VectorXcd x(n);
  for (int k = 0; k < n; ++k) {
    const double re = rng.Normal();
    const double im = map.field == Field::kComplex ? rng.Normal() : 0.0;
    x(k) = {re, im};
  }
  const double norm = x.norm();
  if (norm == 0.0) x(0) = 1.0;
  return x / std::max(norm, 1e-300);
}

}  // namespace

double LipschitzPolyak(const QuadraticMap& map) {
  double sum = 0.0;
  for (const auto& a : map.A) {
    const double norm = SpectralNorm(a, map.field);
    sum += norm * norm;
  }
  return std::sqrt(sum);
}

double LipschitzNew(const QuadraticMap& map) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(map.n(), map.n());
  for (const auto& a : map.A) sum += a * a;
  sum = 0.5 * (sum + sum.adjoint());
  const HermitianEigen eig = DecomposeHermitian(sum, map.field);
  return std::sqrt(std::max(0.0, eig.values(eig.values.size() - 1)));
}

double LipschitzTrace(const QuadraticMap& map) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(TraceGram(map));
  return std::sqrt(std::max(0.0, solver.eigenvalues()(map.m() - 1)));
}

NovResult LipschitzNov(const QuadraticMap& map, const Tolerances& tol) {
  NovResult result;
  const int m = map.m();
  const int n = map.n();
  const Eigen::MatrixXd t = TraceGram(map);
  result.a = LinearCoefficients(map);
  result.M = t - n * result.a * result.a.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(result.M);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigen-decomposition of M did not converge");
  }
  const Eigen::VectorXd mu = solver.eigenvalues();
  const double scale = std::max(1.0, t.trace());
  if (mu(0) < -tol.psd * scale) {
    throw NumericalFailure("trace-corrected Gram matrix M is not PSD");
  }
  const Eigen::VectorXd proj = solver.eigenvectors().transpose() * result.a;
  const double merge_tol = 1e-12 * std::max(1.0, std::abs(mu(m - 1)));
  const double a2_tol = 1e-24 * std::max(1.0, result.a.squaredNorm());

  std::vector<NovGroup> groups;
  for (int k = 0; k < m; ++k) {
    const double value = std::max(0.0, mu(k));
    if (!groups.empty() && value - groups.back().mu <= merge_tol) {
      groups.back().a2 += proj(k) * proj(k);
    } else {
      groups.push_back({value, proj(k) * proj(k), false});
    }
  }
  for (auto& g : groups) {
    if (g.mu <= merge_tol) g.mu = 0.0;
    g.pole = g.mu > 0.0 && g.a2 > a2_tol;
  }
  const NovFunction fn(groups);

  std::vector<double> poles;
  for (const auto& g : groups) {
    if (g.pole) poles.push_back(g.mu);
  }

  auto add_stationary = [&](double lambda) {
    result.candidates.push_back({lambda, fn.F(lambda), false});
  };
  auto dF = [&](double l) { return fn.dF(l); };
  if (!poles.empty()) {
    // (-inf, first pole): dF falls monotonically from 1 to -inf.
    double step = 1.0;
    double lo = poles.front() - step;
    while (fn.dF(lo) <= 0.0 && step < 1e300) {
      step *= 2.0;
      lo = poles.front() - step;
    }
    add_stationary(Bisect(dF, lo, poles.front(), true));
    // (last pole, +inf): dF rises monotonically from -inf to 1.
    step = 1.0;
    double hi = poles.back() + step;
    while (fn.dF(hi) <= 0.0 && step < 1e300) {
      step *= 2.0;
      hi = poles.back() + step;
    }
    add_stationary(Bisect(dF, poles.back(), hi, false));
    // Between poles dF is concave: locate its peak, then up to two roots.
    for (std::size_t i = 0; i + 1 < poles.size(); ++i) {
      const double lo_pole = poles[i];
      const double hi_pole = poles[i + 1];
      const double peak = Bisect([&](double l) { return fn.d2F(l); }, lo_pole,
                                 hi_pole, true);
      const double top = fn.dF(peak);
      if (top > 0.0) {
        add_stationary(Bisect(dF, lo_pole, peak, false));
        add_stationary(Bisect(dF, peak, hi_pole, true));
      } else if (top == 0.0) {
        add_stationary(peak);
      }
    }
  }
  // Eigenvalues of M without a pole host a free component when F' >= 0
  // there. A tiny negative slack absorbs rounding at the tangency point.
  for (const auto& g : groups) {
    if (g.pole) continue;
    if (fn.dF(g.mu) >= -1e-12) {
      result.candidates.push_back({g.mu, fn.F(g.mu), true});
    }
  }
  if (result.candidates.empty()) {
    throw NumericalFailure("no admissible stationary point for L_nov");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : result.candidates) best = std::max(best, c.value);
  result.value = std::sqrt(std::max(0.0, best));
  return result;
}

double LipschitzNovBySecular(const QuadraticMap& map, const Tolerances& tol) {
  const int n = map.n();
  const Eigen::MatrixXd t = TraceGram(map);
  const Eigen::VectorXd a = LinearCoefficients(map);
  const Eigen::MatrixXd M = t - n * a * a.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  const Eigen::VectorXd mu = solver.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd root =
      solver.eigenvectors() * mu.cwiseSqrt().asDiagonal() *
      solver.eigenvectors().transpose();

  // min_{|u|=1} u^T (-M) u - 2 (M^{1/2} a)^T u as a one-component map.
  QuadraticMap aux;
  aux.field = Field::kReal;
  aux.A = {Eigen::MatrixXcd((-M).cast<std::complex<double>>())};
  aux.v = {Eigen::VectorXcd((root * a).cast<std::complex<double>>())};
  const SpectralData sd =
      ComputeSpectralData(aux, Eigen::VectorXd::Ones(1), tol);
  const double inner = SupportValue(sd, 1.0, tol);
  return std::sqrt(std::max(0.0, a.squaredNorm() - inner));
}

LowerBoundResult LipschitzLowerBound(const QuadraticMap& map, int samples,
                                     std::uint64_t seed) {
  samples = std::max(samples, 1);
  Rng rng(seed);
  std::vector<Eigen::VectorXcd> points(samples);
  for (auto& x : points) x = RandomUnit(map, rng);
  std::vector<double> values(samples);
  ParallelFor(samples,
              [&](int i) { values[i] = YOf(map, points[i]).norm(); });

  std::vector<int> order(samples);
  for (int i = 0; i < samples; ++i) order[i] = i;
  const int keep = std::min(samples, 8);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](int a, int b) {
                      return values[a] > values[b] ||
                             (values[a] == values[b] && a < b);
                    });

  LowerBoundResult best{values[order[0]], points[order[0]]};
  const double sigma = LipschitzPolyak(map) + 1e-300;
  for (int r = 0; r < keep; ++r) {
    Eigen::VectorXcd x = points[order[r]];
    double value = values[order[r]];
    // Projected gradient ascent: the gradient of |y(x)|^2 on the sphere is
    // proportional to (c.A) x with c = y/|y|; the step 1/sigma with
    // sigma >= ||c.A|| makes each step monotone.
    for (int it = 0; it < 200; ++it) {
      const Eigen::VectorXd y = YOf(map, x);
      const double norm = y.norm();
      if (norm == 0.0) break;
      const Eigen::MatrixXcd b = CombineMatrices(map, y / norm);
      const Eigen::VectorXcd next = (x + (b * x) / sigma).normalized();
      const double next_value = YOf(map, next).norm();
      if (next_value <= value * (1.0 + 1e-15)) break;
      x = next;
      value = next_value;
    }
    // Polish with exact maximisation over x for the current c.
    for (int it = 0; it < 50; ++it) {
      const Eigen::VectorXd y = YOf(map, x);
      const double norm = y.norm();
      if (norm == 0.0) break;
      const HermitianEigen eig =
          DecomposeHermitian(CombineMatrices(map, y / norm), map.field);
      const Eigen::VectorXcd next = eig.vectors.col(map.n() - 1);
      const double next_value = YOf(map, next).norm();
      if (next_value <= value * (1.0 + 1e-15)) break;
      x = next;
      value = next_value;
    }
    if (value > best.value) best = {value, x};
  }
  return best;
}

const char* LipschitzEstimatorName(LipschitzEstimator estimator) {
  switch (estimator) {
    case LipschitzEstimator::kPolyak:
      return "polyak";
    case LipschitzEstimator::kNew:
      return "new";
    case LipschitzEstimator::kTrace:
      return "trace";
    case LipschitzEstimator::kNov:
      return "nov";
    case LipschitzEstimator::kBest:
      return "best";
  }
  return "best";
}

LipschitzEstimator ParseLipschitzEstimator(const std::string& name) {
  for (auto e : {LipschitzEstimator::kPolyak, LipschitzEstimator::kNew,
                 LipschitzEstimator::kTrace, LipschitzEstimator::kNov,
                 LipschitzEstimator::kBest}) {
    if (name == LipschitzEstimatorName(e)) return e;
  }
  throw InvalidInput("unknown Lipschitz estimator '" + name + "'");
}

double UpperLipschitz(const QuadraticMap& map, LipschitzEstimator estimator,
                      const Tolerances& tol) {
  switch (estimator) {
    case LipschitzEstimator::kPolyak:
      return LipschitzPolyak(map);
    case LipschitzEstimator::kNew:
      return LipschitzNew(map);
    case LipschitzEstimator::kTrace:
      return LipschitzTrace(map);
    case LipschitzEstimator::kNov:
      return LipschitzNov(map, tol).value;
    case LipschitzEstimator::kBest:
      return std::min({LipschitzNew(map), LipschitzTrace(map),
                       LipschitzNov(map, tol).value});
  }
  return LipschitzNew(map);
}

LipschitzReport ComputeLipschitz(const QuadraticMap& map, int samples,
                                 std::uint64_t seed, const Tolerances& tol) {
  LipschitzReport report;
  report.polyak = LipschitzPolyak(map);
  report.new_estimate = LipschitzNew(map);
  report.trace = LipschitzTrace(map);
  report.nov = LipschitzNov(map, tol);
  report.lower = LipschitzLowerBound(map, samples, seed);
  report.samples = samples;
  report.seed = seed;
  return report;
}

}  // namespace qconvex
