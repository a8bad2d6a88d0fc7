#include "qconvex/sphere_search.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "qconvex/parallel.h"
#include "qconvex/rng.h"

namespace qconvex {
namespace {

std::vector<int> FirstPrimes(int count) {
  std::vector<int> primes;
  for (int p = 2; static_cast<int>(primes.size()) < count; ++p) {
    bool is_prime = true;
    for (int q : primes) {
      if (q * q > p) break;
      if (p % q == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(p);
  }
  return primes;
}

double RadicalInverse(long index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

double AngularSpacing(int m, int count) {
  if (m <= 1) return 1.0;
  if (m == 2) return 2.0 * std::numbers::pi / std::max(count, 1);
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * m) /
                      std::tgamma(0.5 * m);
  return std::pow(area / std::max(count, 1), 1.0 / (m - 1));
}

int EffectiveGridDensity(int m, const SearchOptions& options) {
  if (m == 1) return 2;
  if (options.grid_density > 0) return options.grid_density;
  return m == 2 ? 720 : 4096;
}

Eigen::VectorXd CircleDirection(double theta) {
  Eigen::VectorXd c(2);
  c << std::cos(theta), std::sin(theta);
  return c;
}

std::vector<Eigen::VectorXd> DualDirections(int m, int count,
                                            std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  if (m == 1) {
    out.push_back(Eigen::VectorXd::Constant(1, -1.0));
    out.push_back(Eigen::VectorXd::Constant(1, 1.0));
    return out;
  }
  if (m == 2) {
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
      out.push_back(CircleDirection(2.0 * std::numbers::pi * j / count));
    }
    return out;
  }
  const int dims = 2 * ((m + 1) / 2);
  const std::vector<int> primes = FirstPrimes(dims);
  Rng rng(seed);
  std::vector<double> shift(dims);
  for (double& s : shift) s = rng.Uniform();
  out.reserve(count);
  for (long i = 1; static_cast<long>(out.size()) < count; ++i) {
    Eigen::VectorXd g(dims);
    for (int d = 0; d < dims; d += 2) {
      double u1 = RadicalInverse(i, primes[d]) + shift[d];
      double u2 = RadicalInverse(i, primes[d + 1]) + shift[d + 1];
      u1 -= std::floor(u1);
      u2 -= std::floor(u2);
      const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
      g(d) = r * std::cos(2.0 * std::numbers::pi * u2);
      g(d + 1) = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    Eigen::VectorXd c = g.head(m);
    const double norm = c.norm();
    if (norm < 1e-8) continue;
    out.push_back(c / norm);
  }
  return out;
}

Eigen::MatrixXd TangentBasis(const Eigen::VectorXd& c) {
  const int m = static_cast<int>(c.size());
  Eigen::MatrixXd basis(m, m - 1);
  int col = 0;
  // Gram-Schmidt of the coordinate axes against c, skipping the axis most
  // aligned with c.
  Eigen::Index skip = 0;
  c.cwiseAbs().maxCoeff(&skip);
  for (int i = 0; i < m; ++i) {
    if (i == skip) continue;
    Eigen::VectorXd e = Eigen::VectorXd::Unit(m, i);
    e -= c.dot(e) * c;
    for (int j = 0; j < col; ++j) e -= basis.col(j).dot(e) * basis.col(j);
    basis.col(col++) = e.normalized();
  }
  return basis;
}

bool PreferCandidate(const Eigen::VectorXd& a, double va,
                     const Eigen::VectorXd& b, double vb) {
  const bool a_inf = std::isinf(va);
  const bool b_inf = std::isinf(vb);
  if (a_inf != b_inf) return b_inf;
  if (!a_inf) {
    const double tol = 1e-12 * std::max({1.0, std::abs(va), std::abs(vb)});
    if (va < vb - tol) return true;
    if (vb < va - tol) return false;
  }
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

double GoldenSectionMin(const std::function<double(double)>& fn, double lo,
                        double hi, int steps, double* arg) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  for (int i = 0; i < steps && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = fn(x1);
      if (f1 < best_f) {
        best_f = f1;
        best_x = x1;
      }
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = fn(x2);
      if (f2 < best_f) {
        best_f = f2;
        best_x = x2;
      }
    }
  }
  *arg = best_x;
  return best_f;
}

Eigen::VectorXd NelderMead(
    const std::function<double(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& start, double step, int iterations,
    double* best_value) {
  const int dim = static_cast<int>(start.size());
  std::vector<Eigen::VectorXd> simplex(dim + 1, start);
  std::vector<double> values(dim + 1);
  for (int i = 0; i < dim; ++i) simplex[i + 1](i) += step;
  for (int i = 0; i <= dim; ++i) values[i] = fn(simplex[i]);

  std::vector<int> order(dim + 1);
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[dim - 1 >= 0 ? dim - 1 : 0];

    double size = 0.0;
    for (int i = 0; i <= dim; ++i) {
      size = std::max(size, (simplex[i] - simplex[best]).cwiseAbs().maxCoeff());
    }
    if (size < 1e-14) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i <= dim; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= dim;

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double fr = fn(reflected);
    if (fr < values[best]) {
      const Eigen::VectorXd expanded =
          centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = fn(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const Eigen::VectorXd contracted =
        centroid + 0.5 * (simplex[worst] - centroid);
    const double fc = fn(contracted);
    if (fc < values[worst]) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (int i = 0; i <= dim; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = fn(simplex[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= dim; ++i) {
    if (values[i] < values[best]) best = i;
  }
  *best_value = values[best];
  return simplex[best];
}

SphereCandidate RefineOnSphere(const SphereObjective& fn,
                               const Eigen::VectorXd& c0, double radius,
                               int steps) {
  const Eigen::MatrixXd basis = TangentBasis(c0);
  auto chart = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return (c0 + basis * u).normalized();
  };
  double value = 0.0;
  const Eigen::VectorXd u = NelderMead(
      [&](const Eigen::VectorXd& p) { return fn(chart(p)); },
      Eigen::VectorXd::Zero(basis.cols()), radius, steps, &value);
  return {chart(u), value};
}

SphereCandidate MinimizeOverSphere(const SphereObjective& fn, int m,
                                   const SearchOptions& options,
                                   SearchMeta* meta) {
  std::atomic<long> evaluations{0};
  auto counted = [&](const Eigen::VectorXd& c) {
    ++evaluations;
    return fn(c);
  };

  const int count = EffectiveGridDensity(m, options);
  const std::vector<Eigen::VectorXd> grid =
      DualDirections(m, count, options.seed);
  std::vector<double> values(grid.size());
  ParallelFor(static_cast<int>(grid.size()),
              [&](int i) { values[i] = counted(grid[i]); });

  SphereCandidate best{grid[0], values[0]};
  auto offer = [&](const Eigen::VectorXd& c, double v) {
    if (PreferCandidate(c, v, best.c, best.value)) best = {c, v};
  };
  for (std::size_t i = 1; i < grid.size(); ++i) offer(grid[i], values[i]);

  if (meta != nullptr) {
    meta->grid_points = static_cast<int>(grid.size());
    meta->refine_steps = m == 1 ? 0 : options.refine_steps;
    meta->refine_seeds = m == 1 ? 0 : options.refine_seeds;
    meta->seed = options.seed;
    meta->method =
        m == 1 ? "enumeration" : (m == 2 ? "circle-grid" : "halton-sampling");
  }

  if (m == 2) {
    const int size = static_cast<int>(grid.size());
    std::vector<int> minima;
    for (int j = 0; j < size; ++j) {
      const double v = values[j];
      if (!std::isfinite(v)) continue;
      if (v <= values[(j + size - 1) % size] && v <= values[(j + 1) % size]) {
        minima.push_back(j);
      }
    }
    std::stable_sort(minima.begin(), minima.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    if (static_cast<int>(minima.size()) > options.refine_seeds) {
      minima.resize(options.refine_seeds);
    }
    const double h = 2.0 * std::numbers::pi / size;
    for (int j : minima) {
      const double theta = h * j;
      double arg = theta;
      const double v = GoldenSectionMin(
          [&](double t) { return counted(CircleDirection(t)); }, theta - h,
          theta + h, options.refine_steps, &arg);
      offer(CircleDirection(arg), v);
    }
  } else if (m >= 3) {
    std::vector<int> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    const double radius = AngularSpacing(m, count);
    for (int k = 0; k < std::min<int>(options.refine_seeds, order.size());
         ++k) {
      if (!std::isfinite(values[order[k]])) break;
      const SphereCandidate refined = RefineOnSphere(
          counted, grid[order[k]], radius, options.refine_steps);
      offer(refined.c, refined.value);
    }
  }
  if (meta != nullptr) meta->evaluations += evaluations.load();
  return best;
}

}  // namespace qconvex
