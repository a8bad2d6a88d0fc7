#include "qconvex/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qconvex/errors.h"
#include "qconvex/parallel.h"
#include "qconvex/rng.h"
#include "qconvex/secular.h"
#include "qconvex/spectral.h"
#include "qconvex/sphere_search.h"

namespace qconvex {
namespace {

constexpr std::size_t kMaxListedViolations = 100;

void CheckDirections(int m, int directions) {
  const int minimum = m == 1 ? 2 : 8;
  if (directions < minimum) {
    throw InvalidInput("directions must be at least " +
                       std::to_string(minimum) + " for m = " +
                       std::to_string(m));
  }
}

void CheckEps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidInput("epsilon must be positive and finite");
  }
}

double Cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

void Record(AuditReport& report, const char* kind, int index, double amount) {
  if (report.violations.size() < kMaxListedViolations) {
    report.violations.push_back({kind, index, amount});
  }
}

}  // namespace

int DefaultDirections(int m) {
  if (m == 1) return 2;
  if (m == 2) return 360;
  return 512;
}

BoundarySample SampleBoundary(const QuadraticMap& map, double eps,
                              int directions, const Tolerances& tol,
                              std::uint64_t seed) {
  CheckEps(eps);
  const int m = map.m();
  CheckDirections(m, directions);
  if (m == 1) directions = 2;

  const std::vector<Eigen::VectorXd> dirs = DualDirections(m, directions, seed);
  BoundarySample sample;
  sample.eps = eps;
  sample.entries.resize(dirs.size());
  const double z = eps * eps;
  ParallelFor(static_cast<int>(dirs.size()), [&](int i) {
    const SpectralData sd = ComputeSpectralData(map, dirs[i], tol);
    const SecularSolution sol = SolveSecular(sd, z, tol);
    BoundaryEntry& e = sample.entries[i];
    e.c = dirs[i];
    e.x = sol.x;
    e.y = EvalMap(map, sol.x);
    e.lambda = sol.lambda_star;
    e.hard_case = sol.hard_case;
    e.unique = sol.unique;
    e.support_value = sol.support_value;
    e.cluster_tol = sd.cluster_tol;
  });
  return sample;
}

Property2Report CheckProperty2(const BoundarySample& sample) {
  Property2Report report;
  for (const BoundaryEntry& e : sample.entries) {
    if (e.lambda >= -e.cluster_tol) report.violations.push_back(e.c);
    if (std::abs(e.lambda) <= e.cluster_tol) report.marginal.push_back(e.c);
  }
  report.ok = report.violations.empty();
  return report;
}

Property2Report CheckProperty2(const QuadraticMap& map, double eps,
                               int directions, const Tolerances& tol) {
  return CheckProperty2(SampleBoundary(map, eps, directions, tol));
}

std::vector<Eigen::VectorXd> SampleImage(const QuadraticMap& map, double eps,
                                         int count, std::uint64_t seed) {
  CheckEps(eps);
  if (count < 0) throw InvalidInput("sample count must be non-negative");
  const int n = map.n();
  const int dim = map.real_dimension();
  Rng rng(seed);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  Eigen::VectorXd g(dim);
  for (int s = 0; s < count; ++s) {
    double norm = 0.0;
    do {
      for (int k = 0; k < dim; ++k) g(k) = rng.Normal();
      norm = g.norm();
    } while (norm == 0.0);
    const double r = eps * std::pow(rng.Uniform(), 1.0 / dim);
    Eigen::VectorXcd x(n);
    for (int k = 0; k < n; ++k) {
      const double im = map.field == Field::kComplex ? g(n + k) : 0.0;
      x(k) = std::complex<double>(g(k), im) * (r / norm);
    }
    out.push_back(EvalMap(map, x));
  }
  return out;
}

AuditReport ConvexityAudit(const QuadraticMap& map, double eps, int directions,
                           int count, std::uint64_t seed,
                           const Tolerances& tol) {
  const int m = map.m();
  const BoundarySample boundary =
      SampleBoundary(map, eps, directions, tol, seed);
  const int d = static_cast<int>(boundary.entries.size());

  AuditReport report;
  report.eps = eps;
  report.directions = d;
  report.samples = count;
  report.seed = seed;
  report.property2 = CheckProperty2(boundary);

  double scale = 1.0;
  for (const BoundaryEntry& e : boundary.entries) {
    scale = std::max(scale, e.y.cwiseAbs().maxCoeff());
  }
  const double tau = tol.audit_rel * scale;
  report.tau_audit = tau;

  // Points checked: image samples first, then sphere support points.
  std::vector<Eigen::VectorXd> points = SampleImage(map, eps, count, seed);
  for (const BoundaryEntry& e : boundary.entries) points.push_back(e.y);
  const int np = static_cast<int>(points.size());

  Eigen::MatrixXd C(d, m);
  Eigen::VectorXd s(d);
  for (int j = 0; j < d; ++j) {
    C.row(j) = boundary.entries[j].c.transpose();
    s(j) = boundary.entries[j].support_value;
  }
  for (int p = 0; p < np; ++p) {
    const double slack = ((C * points[p]) - s).minCoeff();
    if (slack < -tau) {
      ++report.support_violations;
      report.max_support_violation =
          std::max(report.max_support_violation, -slack);
      Record(report, "support", p, -slack);
    }
  }

  if (m == 2) {
    // Chords of the boundary polygon with the heights of the triangles cut
    // off by adjacent support lines.
    report.hull_checked = true;
    std::vector<Eigen::Vector2d> vertex(d), normal(d);
    std::vector<double> height(d);
    for (int j = 0; j < d; ++j) vertex[j] = boundary.entries[j].y;
    for (int j = 0; j < d; ++j) {
      const int k = (j + 1) % d;
      const Eigen::Vector2d cj = boundary.entries[j].c;
      const Eigen::Vector2d ck = boundary.entries[k].c;
      const Eigen::Vector2d edge = vertex[k] - vertex[j];
      if (edge.norm() > 1e-12 * scale) {
        normal[j] = Eigen::Vector2d(edge.y(), -edge.x()) / edge.norm();
      } else {
        normal[j] = -(cj + ck).normalized();
      }
      const double det = Cross(cj, ck);
      double h = 0.0;
      if (std::abs(det) > 1e-15) {
        const Eigen::Vector2d q((s(j) * ck.y() - s(k) * cj.y()) / det,
                                (cj.x() * s(k) - ck.x() * s(j)) / det);
        h = normal[j].dot(q - vertex[j]);
      }
      height[j] = std::max(0.0, h);
    }
    for (int p = 0; p < np; ++p) {
      const Eigen::Vector2d y = points[p];
      double worst = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < d; ++j) {
        worst = std::max(worst, normal[j].dot(y - vertex[j]) - height[j]);
      }
      if (worst > tau) {
        ++report.hull_violations;
        report.max_hull_violation = std::max(report.max_hull_violation, worst);
        Record(report, "hull", p, worst);
      }
    }

    report.curvature_checked = true;
    report.min_turn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
      const Eigen::Vector2d prev = boundary.entries[(j + d - 1) % d].y;
      const Eigen::Vector2d here = boundary.entries[j].y;
      const Eigen::Vector2d next = boundary.entries[(j + 1) % d].y;
      const Eigen::Vector2d d1 = here - prev;
      const Eigen::Vector2d d2 = next - here;
      const double cross = Cross(d1, d2);
      const double len = std::max(d1.norm(), d2.norm());
      if (d1.norm() > 0.0 && d2.norm() > 0.0) {
        report.min_turn =
            std::min(report.min_turn, cross / (d1.norm() * d2.norm()));
      }
      if (cross < -tau * len) {
        ++report.curvature_violations;
        Record(report, "curvature", j, -cross / std::max(len, 1e-300));
      }
    }
    if (!std::isfinite(report.min_turn)) report.min_turn = 0.0;
  }

  report.convexity_ok = report.support_violations == 0 &&
                        report.hull_violations == 0 &&
                        report.curvature_violations == 0;
  return report;
}

}  // namespace qconvex
