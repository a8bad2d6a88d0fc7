// Cross-module properties on seeded random instances.
#include <cmath>
#include <ostream>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qconvex/bounds.h"
#include "qconvex/estimates.h"
#include "qconvex/lipschitz.h"
#include "qconvex/secular.h"
#include "qconvex/spectral.h"
#include "qconvex/verify.h"

namespace qconvex {
namespace {

struct Case {
  std::uint64_t seed;
  Field field;
};

void PrintTo(const Case& c, std::ostream* os) {
  *os << FieldName(c.field) << " seed " << c.seed;
}

class RandomInstance : public ::testing::TestWithParam<Case> {
 protected:
  QuadraticMap Make(int n, int m) {
    std::mt19937_64 rng(GetParam().seed);
    return ValidateAndSymmetrize(oracle::RandomMap(rng, n, m, GetParam().field));
  }
};

TEST_P(RandomInstance, RadiusChain) {
  for (int m = 1; m <= 2; ++m) {
    const QuadraticMap map = Make(3, m);
    const BoundsReport b = ComputeBounds(map);
    const EstimateReport e = ComputeEstimates(map);
    const double est = e.eps_est.value_sq.value();
    const double polyak = e.eps_polyak_sq.value();
    EXPECT_LE(polyak, est * (1 + 1e-12) + 1e-15);
    if (b.eps_max.value_sq.is_finite()) {
      EXPECT_LE(est, b.eps_max.value_sq.value() + 1e-8);
    }
    EXPECT_LE(b.eps_max.value_sq, b.eps_tilde_max.value_sq);
    ASSERT_TRUE(e.preconditioned.has_value());
    EXPECT_GE(e.preconditioned->value_sq.value(), polyak - 1e-10);
  }
}

TEST_P(RandomInstance, LipschitzOrdering) {
  const QuadraticMap map = Make(4, 3);
  const double lower = LipschitzLowerBound(map, 2000, GetParam().seed).value;
  const double lp = LipschitzPolyak(map);
  const double ln = LipschitzNew(map);
  EXPECT_GE(lp, ln - 1e-10);
  for (double upper : {lp, ln, LipschitzTrace(map), LipschitzNov(map).value}) {
    EXPECT_GE(upper, lower - 1e-8);
  }
}

TEST_P(RandomInstance, SupportValueIsConvexInRadius) {
  const QuadraticMap map = Make(3, 2);
  std::mt19937_64 rng(GetParam().seed + 1);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd c = oracle::RandomUnit(rng, 2);
    const SpectralData sd = ComputeSpectralData(map, c);
    double prev_lambda = -INFINITY;
    std::vector<double> f;
    for (int k = 1; k <= 40; ++k) {
      const SecularSolution s = SolveSecular(sd, 0.05 * k);
      EXPECT_GE(s.lambda_star, prev_lambda - 1e-10);
      prev_lambda = s.lambda_star;
      f.push_back(s.support_value);
    }
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      EXPECT_GE(f[k - 1] + f[k + 1] - 2 * f[k], -1e-9);
    }
  }
}

TEST_P(RandomInstance, ImageConvexBelowRadius) {
  const QuadraticMap map = Make(3, 2);
  const ExtendedReal eps_max_sq = ComputeBounds(map).eps_max.value_sq;
  // Complex m = 2 instances generically have no finite radius bound.
  const double eps =
      eps_max_sq.is_finite() ? 0.95 * std::sqrt(eps_max_sq.value()) : 1.0;
  const BoundarySample s = SampleBoundary(map, eps, 360);
  EXPECT_TRUE(CheckProperty2(s).ok);
  for (const BoundaryEntry& e : s.entries) {
    EXPECT_NEAR(e.x.squaredNorm(), eps * eps, 1e-8);
  }
  const AuditReport r = ConvexityAudit(map, eps, 360, 1000, GetParam().seed);
  EXPECT_TRUE(r.convexity_ok);
  EXPECT_EQ(r.curvature_violations, 0);
}

TEST_P(RandomInstance, UnitaryInvarianceOfBounds) {
  const QuadraticMap map = Make(3, 2);
  std::mt19937_64 rng(GetParam().seed + 2);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      z(i, j) = GetParam().field == Field::kReal
                    ? std::complex<double>(g(rng), 0.0)
                    : std::complex<double>(g(rng), g(rng));
  const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
  QuadraticMap rotated = map;
  for (int i = 0; i < map.m(); ++i) {
    rotated.A[i] = u.adjoint() * map.A[i] * u;
    rotated.v[i] = u.adjoint() * map.v[i];
  }
  rotated = ValidateAndSymmetrize(rotated);
  const ExtendedReal a = ComputeBounds(map).eps_max.value_sq;
  const ExtendedReal b = ComputeBounds(rotated).eps_max.value_sq;
  ASSERT_EQ(a.is_finite(), b.is_finite());
  if (a.is_finite()) {
    EXPECT_NEAR(a.value(), b.value(), 1e-7 * std::max(1.0, a.value()));
  }
}

std::vector<Case> Cases() {
  std::vector<Case> cases;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    cases.push_back({seed, Field::kReal});
    cases.push_back({1000 + seed, Field::kComplex});
  }
  return cases;
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomInstance, ::testing::ValuesIn(Cases()),
                         [](const ::testing::TestParamInfo<Case>& info) {
                           return std::string(FieldName(info.param.field)) + "_" +
                                  std::to_string(info.param.seed);
                         });

}  // namespace
}  // namespace qconvex
