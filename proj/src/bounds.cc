#include "qconvex/bounds.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qconvex/parallel.h"
#include "qconvex/spectral.h"

namespace qconvex {

const char* IjnrVerdictName(IjnrVerdict verdict) {
  switch (verdict) {
    case IjnrVerdict::kStronglyConvexSmooth:
      return "strongly-convex-smooth";
    case IjnrVerdict::kStrictlyConvexBoundary:
      return "strictly-convex-boundary";
    case IjnrVerdict::kEmptyShellBoundary:
      return "empty-shell-boundary";
    case IjnrVerdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

IjnrVerdict ClassifyIjnr(ExtendedReal value, int n, int m, Field field,
                         double band) {
  const int dim = field == Field::kReal ? n : 2 * n;
  const double v = value.value();  // +inf compares correctly below
  if (dim == m && v >= 1.0 - band) return IjnrVerdict::kEmptyShellBoundary;
  if (v > 1.0 + band && dim > m) return IjnrVerdict::kStronglyConvexSmooth;
  if (std::abs(v - 1.0) <= band) return IjnrVerdict::kStrictlyConvexBoundary;
  return IjnrVerdict::kInconclusive;
}

bool IsOriginRegular(const QuadraticMap& map, const Tolerances& tol,
                     double* gram_min_eigenvalue,
                     Eigen::VectorXd* null_direction) {
  const Eigen::MatrixXd g = GramMatrix(map);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
  const double lmin = solver.eigenvalues()(0);
  if (gram_min_eigenvalue != nullptr) *gram_min_eigenvalue = lmin;
  if (null_direction != nullptr) {
    Eigen::VectorXd c = solver.eigenvectors().col(0);
    Eigen::Index idx = 0;
    c.cwiseAbs().maxCoeff(&idx);
    if (c(idx) < 0.0) c = -c;
    *null_direction = c;
  }
  return lmin > tol.psd * g.trace();
}

namespace {

// Everything the three reductions need about one dual direction.
struct DirectionEval {
  Eigen::VectorXd c;
  double lambda_min = 0.0;
  double value_lm = 0.0;    // lambda_m shift
  double value_lmin = 0.0;  // lambda_min shift
  bool in_dual_set = false;  // lambda_min(c.A) <= cluster tolerance
  bool simple_bottom = false;
  Eigen::VectorXcd bottom_vector;
  std::complex<double> bottom_coeff;
  double bottom_rel = 0.0;  // |P_bottom c.v|^2 / |c.v|^2
};

// One side of a bracket for the zero of the bottom-eigenvector projection.
// `x` is the bottom eigenvector with its sign aligned along the arc and `p`
// the projection of c.v onto it under that alignment.
struct ArcEnd {
  Eigen::VectorXd c;
  Eigen::VectorXcd x;
  double p = 0.0;
};

class DualSearch {
 public:
  DualSearch(const QuadraticMap& map, const SearchOptions& options,
             const Tolerances& tol)
      : map_(map), options_(options), tol_(tol) {}

  void Run();

  const std::vector<DirectionEval>& pool() const { return pool_; }
  SearchMeta meta() const { return meta_; }

 private:
  DirectionEval Evaluate(const Eigen::VectorXd& c) const;
  const DirectionEval& Record(const Eigen::VectorXd& c) {
    pool_.push_back(Evaluate(c));
    return pool_.back();
  }

  // Bisection between two aligned ends whose projections have opposite
  // signs. Returns the index in pool_ of the best-resolved point.
  std::optional<std::size_t> BisectArc(ArcEnd a, ArcEnd b);
  // Searches along the great circle through `base` in tangent direction
  // `d` for a sign change of the aligned projection within |t| <= reach.
  std::optional<std::size_t> SnapAlongArc(const Eigen::VectorXd& base,
                                          const Eigen::VectorXd& d,
                                          double reach);

  void SnapCircle(int grid_size);
  void RefineCircle(int grid_size);
  void SnapSphere(int grid_size);
  void RefineSphere(int grid_size);

  const QuadraticMap& map_;
  SearchOptions options_;
  Tolerances tol_;
  std::vector<DirectionEval> pool_;
  SearchMeta meta_;
};

DirectionEval DualSearch::Evaluate(const Eigen::VectorXd& c) const {
  const SpectralData sd = ComputeSpectralData(map_, c, tol_);
  DirectionEval e;
  e.c = c;
  e.lambda_min = sd.lambda_min();
  e.value_lm = PseudoResolventSq(sd, ShiftMode::kLambdaM, tol_).value();
  e.value_lmin = PseudoResolventSq(sd, ShiftMode::kLambdaMin, tol_).value();
  e.in_dual_set = sd.lambda_min() <= sd.cluster_tol;
  e.simple_bottom = sd.bottom_multiplicity == 1;
  e.bottom_vector = sd.eigenvectors.col(0);
  e.bottom_coeff = sd.coefficients(0);
  e.bottom_rel = sd.linear_norm_sq > 0.0
                     ? sd.bottom_projection_sq / sd.linear_norm_sq
                     : 0.0;
  return e;
}

std::optional<std::size_t> DualSearch::BisectArc(ArcEnd a, ArcEnd b) {
  std::optional<std::size_t> last;
  for (int it = 0; it < 80; ++it) {
    const Eigen::VectorXd mid = (a.c + b.c).normalized();
    if (mid == a.c || mid == b.c) break;
    const DirectionEval& e = Record(mid);
    last = pool_.size() - 1;
    if (!e.simple_bottom) break;
    const double sign = a.x.dot(e.bottom_vector).real() < 0.0 ? -1.0 : 1.0;
    const double p = sign * e.bottom_coeff.real();
    if (p == 0.0) break;
    if ((p < 0.0) == (a.p < 0.0)) {
      a = {mid, sign * e.bottom_vector, p};
    } else {
      b = {mid, sign * e.bottom_vector, p};
    }
  }
  // Both final ends are in the pool; report the one closer to the zero set.
  const ArcEnd& closer = std::abs(a.p) <= std::abs(b.p) ? a : b;
  for (std::size_t i = pool_.size(); i-- > 0;) {
    if (pool_[i].c == closer.c) return i;
  }
  return last;
}

std::optional<std::size_t> DualSearch::SnapAlongArc(
    const Eigen::VectorXd& base, const Eigen::VectorXd& d, double reach) {
  const DirectionEval e0 = Record(base);
  if (!e0.simple_bottom) return std::nullopt;
  constexpr int kSteps = 4;
  ArcEnd prev[2];
  for (auto& p : prev) p = {base, e0.bottom_vector, e0.bottom_coeff.real()};
  for (int i = 1; i <= kSteps; ++i) {
    for (int side = 0; side < 2; ++side) {
      const double t = (side == 0 ? 1.0 : -1.0) * reach * i / kSteps;
      const Eigen::VectorXd c =
          (std::cos(t) * base + std::sin(t) * d).normalized();
      const DirectionEval e = Record(c);
      if (!e.simple_bottom) continue;
      const double sign =
          prev[side].x.dot(e.bottom_vector).real() < 0.0 ? -1.0 : 1.0;
      ArcEnd next{c, sign * e.bottom_vector, sign * e.bottom_coeff.real()};
      if ((next.p < 0.0) != (prev[side].p < 0.0)) {
        return BisectArc(prev[side], next);
      }
      prev[side] = next;
    }
  }
  return std::nullopt;
}

void DualSearch::SnapCircle(int grid_size) {
  // Consecutive grid directions whose aligned bottom projections change sign
  // bracket an isolated direction where the pseudo-resolvent is finite.
  for (int j = 0; j < grid_size; ++j) {
    const DirectionEval& a = pool_[j];
    const DirectionEval& b = pool_[(j + 1) % grid_size];
    if (!a.simple_bottom || !b.simple_bottom) continue;
    const double sign = a.bottom_vector.dot(b.bottom_vector).real() < 0.0
                            ? -1.0
                            : 1.0;
    const double pa = a.bottom_coeff.real();
    const double pb = sign * b.bottom_coeff.real();
    if (pa == 0.0 || pb == 0.0 || (pa < 0.0) == (pb < 0.0)) continue;
    BisectArc({a.c, a.bottom_vector, pa}, {b.c, sign * b.bottom_vector, pb});
  }
}

void DualSearch::RefineCircle(int grid_size) {
  // Golden-section refinement of the lambda_m objective around its finite
  // grid minima (the region where c.A is positive definite).
  std::vector<int> minima;
  for (int j = 0; j < grid_size; ++j) {
    const double v = pool_[j].value_lm;
    if (!std::isfinite(v)) continue;
    if (v <= pool_[(j + grid_size - 1) % grid_size].value_lm &&
        v <= pool_[(j + 1) % grid_size].value_lm) {
      minima.push_back(j);
    }
  }
  std::stable_sort(minima.begin(), minima.end(), [&](int a, int b) {
    return pool_[a].value_lm < pool_[b].value_lm;
  });
  if (static_cast<int>(minima.size()) > options_.refine_seeds) {
    minima.resize(options_.refine_seeds);
  }
  const double h = 2.0 * std::numbers::pi / grid_size;
  for (int j : minima) {
    const double theta = h * j;
    double arg = theta;
    GoldenSectionMin(
        [&](double t) { return Record(CircleDirection(t)).value_lm; },
        theta - h, theta + h, options_.refine_steps, &arg);
  }
}

void DualSearch::SnapSphere(int grid_size) {
  const int m = map_.m();
  const double h = AngularSpacing(m, grid_size);
  std::vector<int> seeds;
  for (int i = 0; i < grid_size; ++i) {
    if (pool_[i].simple_bottom && pool_[i].bottom_rel > 0.0) seeds.push_back(i);
  }
  std::stable_sort(seeds.begin(), seeds.end(), [&](int a, int b) {
    return pool_[a].bottom_rel < pool_[b].bottom_rel;
  });
  if (static_cast<int>(seeds.size()) > options_.refine_seeds) {
    seeds.resize(options_.refine_seeds);
  }

  struct Snapped {
    std::size_t index;
    Eigen::VectorXd transversal;
  };
  std::vector<Snapped> snapped;
  for (int s : seeds) {
    const Eigen::VectorXd c0 = pool_[s].c;
    const Eigen::MatrixXd basis = TangentBasis(c0);
    for (int k = 0; k < basis.cols(); ++k) {
      const auto idx = SnapAlongArc(c0, basis.col(k), h);
      if (idx) snapped.push_back({*idx, basis.col(k)});
    }
  }

  // Walk the zero set: Nelder-Mead over the (m-2)-dimensional chart
  // orthogonal to the transversal, re-snapping along the transversal at
  // every trial point.
  auto refine = [&](auto value_of) {
    std::vector<std::size_t> order(snapped.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return value_of(pool_[snapped[a].index]) <
             value_of(pool_[snapped[b].index]);
    });
    const int budget = std::min<int>(std::max(1, options_.refine_seeds / 2),
                                     order.size());
    for (int k = 0; k < budget; ++k) {
      const Snapped& sn = snapped[order[k]];
      if (!std::isfinite(value_of(pool_[sn.index]))) break;
      const Eigen::VectorXd anchor = pool_[sn.index].c;
      Eigen::VectorXd d = sn.transversal - sn.transversal.dot(anchor) * anchor;
      d.normalize();
      Eigen::MatrixXd frame(m, 2);
      frame << anchor, d;
      Eigen::MatrixXd chart(m, m - 2);
      int col = 0;
      for (int i = 0; i < m && col < m - 2; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(m, i);
        e -= frame * (frame.transpose() * e);
        if (col > 0) e -= chart.leftCols(col) * (chart.leftCols(col).transpose() * e);
        if (e.norm() < 1e-6) continue;
        chart.col(col++) = e.normalized();
      }
      if (col < m - 2) continue;
      double best = 0.0;
      NelderMead(
          [&](const Eigen::VectorXd& u) {
            const Eigen::VectorXd base = (anchor + chart * u).normalized();
            Eigen::VectorXd dir = d - d.dot(base) * base;
            dir.normalize();
            const auto idx = SnapAlongArc(base, dir, 0.5 * h);
            return idx ? value_of(pool_[*idx])
                       : std::numeric_limits<double>::infinity();
          },
          Eigen::VectorXd::Zero(m - 2), h, options_.refine_steps, &best);
    }
  };
  refine([](const DirectionEval& e) { return e.value_lm; });
  refine([](const DirectionEval& e) { return e.value_lmin; });
}

void DualSearch::RefineSphere(int grid_size) {
  const int m = map_.m();
  const double h = AngularSpacing(m, grid_size);
  std::vector<int> order;
  for (int i = 0; i < grid_size; ++i) {
    if (std::isfinite(pool_[i].value_lm)) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return pool_[a].value_lm < pool_[b].value_lm;
  });
  if (static_cast<int>(order.size()) > options_.refine_seeds) {
    order.resize(options_.refine_seeds);
  }
  std::vector<Eigen::VectorXd> starts;
  for (int i : order) starts.push_back(pool_[i].c);
  for (const auto& c0 : starts) {
    RefineOnSphere([&](const Eigen::VectorXd& c) { return Record(c).value_lm; },
                   c0, h, options_.refine_steps);
  }
}

void DualSearch::Run() {
  const int m = map_.m();
  const int count = EffectiveGridDensity(m, options_);
  const std::vector<Eigen::VectorXd> grid =
      DualDirections(m, count, options_.seed);
  pool_.resize(grid.size());
  ParallelFor(static_cast<int>(grid.size()),
              [&](int i) { pool_[i] = Evaluate(grid[i]); });

  meta_.grid_points = static_cast<int>(grid.size());
  meta_.seed = options_.seed;
  meta_.refine_steps = m == 1 ? 0 : options_.refine_steps;
  meta_.refine_seeds = m == 1 ? 0 : options_.refine_seeds;
  meta_.method =
      m == 1 ? "enumeration" : (m == 2 ? "circle-grid" : "halton-sampling");

  const int grid_size = static_cast<int>(grid.size());
  const bool real = map_.field == Field::kReal;
  if (m == 2) {
    if (real) SnapCircle(grid_size);
    RefineCircle(grid_size);
  } else if (m >= 3) {
    if (real) SnapSphere(grid_size);
    RefineSphere(grid_size);
  }
  meta_.evaluations = static_cast<long>(pool_.size());
  meta_.skipped = 0;
  for (int i = 0; i < grid_size; ++i) {
    if (!pool_[i].in_dual_set) ++meta_.skipped;
  }
}

template <class Value, class Admit>
std::optional<std::size_t> ReducePool(const std::vector<DirectionEval>& pool,
                                      Value value_of, Admit admit) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!admit(pool[i])) continue;
    if (!best || PreferCandidate(pool[i].c, value_of(pool[i]), pool[*best].c,
                                 value_of(pool[*best]))) {
      best = i;
    }
  }
  return best;
}

std::string Certification(int m) {
  if (m == 1) return "exact-enumeration";
  if (m == 2) return "grid-refined";
  return "heuristic-upper-bound";
}

}  // namespace

BoundsReport ComputeBounds(const QuadraticMap& map,
                           const SearchOptions& options,
                           const Tolerances& tol) {
  BoundsReport report;
  DualSearch search(map, options, tol);
  search.Run();
  report.search = search.meta();
  const auto& pool = search.pool();
  const int m = map.m();

  auto all = [](const DirectionEval&) { return true; };
  auto in_set = [](const DirectionEval& e) { return e.in_dual_set; };
  auto lm = [](const DirectionEval& e) { return e.value_lm; };
  auto lmin = [](const DirectionEval& e) { return e.value_lmin; };

  const auto best_lm = ReducePool(pool, lm, all);
  report.eps_max.value_sq = ExtendedReal(pool[*best_lm].value_lm);
  report.eps_max.argmin = pool[*best_lm].c;
  report.eps_max.verdict = Certification(m);

  const auto best_tilde = ReducePool(pool, lmin, in_set);
  if (best_tilde) {
    report.eps_tilde_max.value_sq = ExtendedReal(pool[*best_tilde].value_lmin);
    report.eps_tilde_max.argmin = pool[*best_tilde].c;
    report.eps_tilde_max.verdict = Certification(m);
  } else {
    report.eps_tilde_max.value_sq = ExtendedReal::Infinity();
    report.eps_tilde_max.verdict = "empty-dual-set";
  }

  const auto best_ijnr = ReducePool(pool, lmin, all);
  report.ijnr.value = ExtendedReal(pool[*best_ijnr].value_lmin).Sqrt();
  report.ijnr.argmin = pool[*best_ijnr].c;
  report.ijnr.verdict =
      ClassifyIjnr(report.ijnr.value, map.n(), m, map.field, tol.verdict);

  Eigen::VectorXd null_direction;
  report.origin_regular = IsOriginRegular(map, tol, &report.gram_min_eigenvalue,
                                          &null_direction);
  if (!report.origin_regular) {
    for (RadiusBound* b : {&report.eps_max, &report.eps_tilde_max}) {
      b->value_sq = ExtendedReal(0.0);
      b->argmin = null_direction;
      b->verdict = "origin-not-regular";
    }
    report.notes.push_back(
        "linear terms have rank < m; x = 0 is not a regular point");
  }

  auto note_threshold = [&](const char* what, std::optional<std::size_t> idx,
                            bool finite) {
    if (!idx || !finite) return;
    const DirectionEval& e = pool[*idx];
    if (e.bottom_rel > 0.0 && e.bottom_rel <= tol.null_projection) {
      std::ostringstream os;
      os << what << ": bottom-eigenspace projection " << e.bottom_rel
         << " (relative) treated as zero by tau_null = " << tol.null_projection;
      report.notes.push_back(os.str());
    }
  };
  if (report.origin_regular) {
    note_threshold("eps_max", best_lm, report.eps_max.value_sq.is_finite());
    note_threshold("eps_tilde_max", best_tilde,
                   report.eps_tilde_max.value_sq.is_finite());
  }
  note_threshold("ijnr", best_ijnr, report.ijnr.value.is_finite());
  if (report.ijnr.verdict == IjnrVerdict::kEmptyShellBoundary) {
    report.notes.push_back(
        "empty-shell branch applies when n = m (2n = m for complex x)");
  }
  if (m >= 3) {
    report.notes.push_back(
        "dual-sphere minimum for m >= 3 is not certified; values are upper "
        "bounds on the true minimum");
  }
  return report;
}

RadiusBound EpsMax(const QuadraticMap& map, const SearchOptions& options,
                   const Tolerances& tol) {
  return ComputeBounds(map, options, tol).eps_max;
}

RadiusBound EpsTildeMax(const QuadraticMap& map, const SearchOptions& options,
                        const Tolerances& tol) {
  return ComputeBounds(map, options, tol).eps_tilde_max;
}

IjnrResult IjnrCheck(const QuadraticMap& map, const SearchOptions& options,
                     const Tolerances& tol) {
  return ComputeBounds(map, options, tol).ijnr;
}

}  // namespace qconvex
