#include "qconvex/bounds.h"

#include <cstdlib>
#include <random>

#include <Eigen/QR>

#include <gtest/gtest.h>

#include "instances.h"
#include "oracles.h"

namespace qconvex {
namespace {

using instances::V;

void ExpectDirection(const std::optional<Eigen::VectorXd>& got,
                     const Eigen::VectorXd& want, double tol) {
  ASSERT_TRUE(got.has_value());
  ASSERT_EQ(got->size(), want.size());
  EXPECT_NEAR((*got - want).norm(), 0.0, tol);
}

TEST(Bounds, ScalarInstance) {
  const BoundsReport r = ComputeBounds(instances::Scalar());
  ASSERT_TRUE(r.eps_max.value_sq.is_finite());
  EXPECT_NEAR(r.eps_max.value_sq.value(), 1.0, 1e-12);
  ExpectDirection(r.eps_max.argmin, V({1}), 0.0);
  EXPECT_EQ(r.eps_max.verdict, "exact-enumeration");
  EXPECT_TRUE(r.eps_tilde_max.value_sq.is_infinite());
  EXPECT_TRUE(r.ijnr.value.is_infinite());
  EXPECT_EQ(r.ijnr.verdict, IjnrVerdict::kEmptyShellBoundary);
}

TEST(Bounds, ScaledScalarIsEmptyShell) {
  const BoundsReport r = ComputeBounds(instances::Scalar(1.0, 3.0));
  EXPECT_TRUE(r.ijnr.value.is_infinite());
  EXPECT_EQ(r.ijnr.verdict, IjnrVerdict::kEmptyShellBoundary);
  EXPECT_NEAR(r.eps_max.value_sq.value(), 9.0, 1e-12);
}

TEST(Bounds, HardCaseInstance) {
  const BoundsReport r = ComputeBounds(instances::HardCase());
  EXPECT_NEAR(r.eps_max.value_sq.value(), 0.25, 1e-12);
  ExpectDirection(r.eps_max.argmin, V({1}), 0.0);
  EXPECT_NEAR(r.eps_tilde_max.value_sq.value(), 0.25, 1e-12);
  EXPECT_NEAR(r.ijnr.value.value(), 0.5, 1e-12);
  EXPECT_EQ(r.ijnr.verdict, IjnrVerdict::kInconclusive);
}

TEST(Bounds, SpikeMinimumIsFound) {
  const BoundsReport r = ComputeBounds(instances::Spike());
  ASSERT_TRUE(r.eps_max.value_sq.is_finite());
  EXPECT_NEAR(r.eps_max.value_sq.value(), 0.25, 1e-6);
  ExpectDirection(r.eps_max.argmin, V({1, 0}), 1e-6);
  EXPECT_EQ(r.eps_max.verdict, "grid-refined");
  EXPECT_NEAR(r.eps_tilde_max.value_sq.value(), 0.25, 1e-6);

  double theta = 0.0;
  const double oracle_value =
      oracle::ThetaGridMin(instances::Spike(), ShiftMode::kLambdaM, 20000, &theta);
  EXPECT_NEAR(oracle_value, 0.25, 1e-6);
  EXPECT_NEAR(std::cos(theta), 1.0, 1e-6);
}

TEST(Bounds, SpikeMinimumInThreeDualDimensions) {
  const BoundsReport r = ComputeBounds(instances::Spike3());
  ASSERT_TRUE(r.eps_max.value_sq.is_finite());
  EXPECT_NEAR(r.eps_max.value_sq.value(), 0.25, 1e-6);
  ExpectDirection(r.eps_max.argmin, V({1, 0, 0}), 1e-4);
  EXPECT_EQ(r.eps_max.verdict, "heuristic-upper-bound");
  EXPECT_FALSE(r.notes.empty());
}

TEST(Bounds, LinearMapHasInfiniteRadius) {
  const QuadraticMap map = instances::Real(
      {Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)},
      {V({1, 0}), V({0, 1})});
  const BoundsReport r = ComputeBounds(map);
  EXPECT_TRUE(r.eps_max.value_sq.is_infinite());
  EXPECT_TRUE(r.origin_regular);
}

TEST(Bounds, ZeroLinearPartIsInconclusive) {
  const QuadraticMap map = instances::Real(
      {instances::Diag({1, -1}), instances::M2(0, 1, 1, 0)}, {V({0, 0}), V({0, 0})});
  const BoundsReport r = ComputeBounds(map);
  ASSERT_TRUE(r.ijnr.value.is_finite());
  EXPECT_EQ(r.ijnr.value.value(), 0.0);
  EXPECT_EQ(r.ijnr.verdict, IjnrVerdict::kInconclusive);
}

TEST(Bounds, RankDeficientLinearPart) {
  const QuadraticMap map = instances::Real(
      {instances::Diag({1, 2}), instances::M2(0, 1, 1, 0)}, {V({1, 1}), V({1, 1})});
  const BoundsReport r = ComputeBounds(map);
  EXPECT_FALSE(r.origin_regular);
  EXPECT_EQ(r.eps_max.value_sq.value(), 0.0);
  EXPECT_EQ(r.eps_max.verdict, "origin-not-regular");
  EXPECT_EQ(r.eps_tilde_max.value_sq.value(), 0.0);
  ASSERT_TRUE(r.eps_max.argmin.has_value());
  // The reported direction annihilates the linear part.
  const Eigen::VectorXd c = *r.eps_max.argmin;
  EXPECT_NEAR((c(0) * map.v[0] + c(1) * map.v[1]).norm(), 0.0, 1e-12);
}

TEST(Bounds, RestrictedSetWithOnlyDivergentDirections) {
  // A > 0: the restricted set is {-1}, where -v hits the bottom eigenvector.
  const BoundsReport r = ComputeBounds(instances::Real({instances::Diag({1, 2})}, {V({1, 1})}));
  EXPECT_TRUE(r.eps_tilde_max.value_sq.is_infinite());
}

TEST(IjnrClassification, Branches) {
  const double band = 1e-9;
  EXPECT_EQ(ClassifyIjnr(ExtendedReal(4.0), 3, 2, Field::kReal, band),
            IjnrVerdict::kStronglyConvexSmooth);
  EXPECT_EQ(ClassifyIjnr(ExtendedReal(1.0), 3, 2, Field::kReal, band),
            IjnrVerdict::kStrictlyConvexBoundary);
  EXPECT_EQ(ClassifyIjnr(ExtendedReal(2.0), 2, 2, Field::kReal, band),
            IjnrVerdict::kEmptyShellBoundary);
  EXPECT_EQ(ClassifyIjnr(ExtendedReal(2.0), 1, 2, Field::kComplex, band),
            IjnrVerdict::kEmptyShellBoundary);
  EXPECT_EQ(ClassifyIjnr(ExtendedReal(2.0), 2, 2, Field::kComplex, band),
            IjnrVerdict::kStronglyConvexSmooth);
  EXPECT_EQ(ClassifyIjnr(ExtendedReal(0.5), 3, 2, Field::kReal, band),
            IjnrVerdict::kInconclusive);
  EXPECT_EQ(ClassifyIjnr(ExtendedReal::Infinity(), 3, 2, Field::kReal, band),
            IjnrVerdict::kStronglyConvexSmooth);
}

// m = 2 random instances against the theta-grid oracle.
TEST(Bounds, MatchesThetaGridOracle) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, n, 2));
    SearchOptions options;
    options.grid_density = 1440;
    const BoundsReport r = ComputeBounds(map, options);

    const double want = oracle::ThetaGridMin(map, ShiftMode::kLambdaM, 20000);
    ASSERT_TRUE(std::isfinite(want));
    ASSERT_TRUE(r.eps_max.value_sq.is_finite());
    EXPECT_NEAR(r.eps_max.value_sq.value(), want, 1e-6 * std::max(1.0, want)) << trial;

    const double want_tilde =
        oracle::ThetaGridMin(map, ShiftMode::kLambdaMin, 20000, nullptr, true);
    if (std::isinf(want_tilde)) {
      EXPECT_TRUE(r.eps_tilde_max.value_sq.is_infinite());
    } else {
      EXPECT_NEAR(r.eps_tilde_max.value_sq.value(), want_tilde,
                  1e-6 * std::max(1.0, want_tilde)) << trial;
    }
    const double want_ijnr = oracle::ThetaGridMin(map, ShiftMode::kLambdaMin, 20000);
    if (std::isinf(want_ijnr)) {
      EXPECT_TRUE(r.ijnr.value.is_infinite());
    } else {
      EXPECT_NEAR(r.ijnr.value.value(), std::sqrt(want_ijnr), 1e-6) << trial;
    }
  }
}

TEST(Bounds, TildeBoundDominates) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 3;
    const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, 3, m));
    SearchOptions options;
    options.grid_density = m == 3 ? 512 : 360;
    const BoundsReport r = ComputeBounds(map, options);
    EXPECT_LE(r.eps_max.value_sq, r.eps_tilde_max.value_sq);
  }
}

TEST(Bounds, ScalingLaws) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, 3, 2));
    const double s = 2.0 + trial * 0.25;
    QuadraticMap sv = map, sa = map;
    for (int i = 0; i < 2; ++i) {
      sv.v[i] *= s;
      sa.A[i] *= s;
    }
    const double base = ComputeBounds(map).eps_max.value_sq.value();
    EXPECT_NEAR(ComputeBounds(sv).eps_max.value_sq.value(), s * s * base, 1e-9 * s * s * base);
    EXPECT_NEAR(ComputeBounds(sa).eps_max.value_sq.value(), base / (s * s), 1e-9 * base / (s * s));
  }
}

TEST(Bounds, BasisInvariance) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, 3, 2));
    const QuadraticMap g = ValidateAndSymmetrize(oracle::RandomMap(rng, 3, 1));
    const Eigen::MatrixXd U =
        Eigen::HouseholderQR<Eigen::MatrixXd>(g.A[0].real()).householderQ();
    QuadraticMap rotated = map;
    for (int i = 0; i < 2; ++i) {
      rotated.A[i] = (U.transpose() * map.A[i].real() * U).cast<std::complex<double>>();
      rotated.v[i] = (U.transpose() * map.v[i].real()).cast<std::complex<double>>();
    }
    rotated = ValidateAndSymmetrize(rotated);
    const double a = ComputeBounds(map).eps_max.value_sq.value();
    const double b = ComputeBounds(rotated).eps_max.value_sq.value();
    EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, a));
  }
}

TEST(Bounds, IndependentOfThreadCount) {
  std::mt19937_64 rng(79);
  const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, 4, 3));
  setenv("QCONVEX_THREADS", "1", 1);
  const BoundsReport a = ComputeBounds(map);
  setenv("QCONVEX_THREADS", "3", 1);
  const BoundsReport b = ComputeBounds(map);
  unsetenv("QCONVEX_THREADS");
  EXPECT_EQ(a.eps_max.value_sq.value(), b.eps_max.value_sq.value());
  EXPECT_EQ(*a.eps_max.argmin, *b.eps_max.argmin);
  EXPECT_EQ(a.search.evaluations, b.search.evaluations);
}

}  // namespace
}  // namespace qconvex
