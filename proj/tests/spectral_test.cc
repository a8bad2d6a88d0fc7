#include "qconvex/spectral.h"

#include <random>

#include <Eigen/QR>

#include <gtest/gtest.h>

#include "instances.h"
#include "oracles.h"
#include "qconvex/errors.h"

namespace qconvex {
namespace {

using instances::V;

TEST(SpectralData, ScalarInstance) {
  const SpectralData sd = ComputeSpectralData(instances::Scalar(), V({1}));
  ASSERT_EQ(sd.n(), 1);
  EXPECT_DOUBLE_EQ(sd.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(sd.weights(0), 1.0);
}

TEST(SpectralData, HardCaseDirections) {
  const QuadraticMap map = instances::HardCase();
  const SpectralData plus = ComputeSpectralData(map, V({1}));
  EXPECT_DOUBLE_EQ(plus.eigenvalues(0), -1.0);
  EXPECT_DOUBLE_EQ(plus.eigenvalues(1), 1.0);
  EXPECT_NEAR(plus.weights(0), 0.0, 1e-30);
  EXPECT_NEAR(plus.weights(1), 1.0, 1e-15);
  EXPECT_EQ(plus.bottom_multiplicity, 1);
  EXPECT_NEAR(plus.bottom_projection_sq, 0.0, 1e-30);

  const SpectralData minus = ComputeSpectralData(map, V({-1}));
  EXPECT_NEAR(minus.weights(0), 1.0, 1e-15);
  EXPECT_NEAR(minus.weights(1), 0.0, 1e-30);
  EXPECT_NEAR(minus.bottom_projection_sq, 1.0, 1e-15);
}

TEST(SpectralData, RejectsNonUnitDirection) {
  EXPECT_THROW(ComputeSpectralData(instances::Scalar(), V({2})), InvalidInput);
  EXPECT_THROW(ComputeSpectralData(instances::Spike(), V({1})), InvalidInput);
}

TEST(SpectralData, WeightsSumToNormAndEigenpairsMultiplyBack) {
  std::mt19937_64 rng(3);
  for (Field field : {Field::kReal, Field::kComplex}) {
    for (int trial = 0; trial < 30; ++trial) {
      const QuadraticMap map =
          ValidateAndSymmetrize(oracle::RandomMap(rng, 4, 3, field));
      const Eigen::VectorXd c = oracle::RandomUnit(rng, 3);
      const SpectralData sd = ComputeSpectralData(map, c);
      const Eigen::VectorXcd cv = oracle::CombinedVector(map, c);
      EXPECT_NEAR(sd.weights.sum(), cv.squaredNorm(),
                  1e-10 * cv.squaredNorm());
      const Eigen::MatrixXcd ca = oracle::Combination(map, c);
      for (int k = 0; k < sd.n(); ++k) {
        const Eigen::VectorXcd xk = sd.eigenvectors.col(k);
        EXPECT_NEAR((ca * xk - sd.eigenvalues(k) * xk).norm(), 0.0, 1e-12);
      }
    }
  }
}

TEST(PseudoResolvent, ScalarExamples) {
  const QuadraticMap map = instances::Scalar();
  EXPECT_DOUBLE_EQ(PseudoResolventSq(map, V({1}), ShiftMode::kLambdaM).value(), 1.0);
  EXPECT_TRUE(PseudoResolventSq(map, V({-1}), ShiftMode::kLambdaM).is_infinite());
  EXPECT_TRUE(PseudoResolventSq(map, V({1}), ShiftMode::kLambdaMin).is_infinite());
}

TEST(PseudoResolvent, HardCaseQuarter) {
  const QuadraticMap map = instances::HardCase();
  const ExtendedReal value = PseudoResolventSq(map, V({1}), ShiftMode::kLambdaM);
  ASSERT_TRUE(value.is_finite());
  EXPECT_NEAR(value.value(), 0.25, 1e-15);
  // Dense small-eps cross-check.
  EXPECT_NEAR(oracle::DirectResolventSq(map, V({1}), ShiftMode::kLambdaM, 1e-6),
              0.25, 1e-4);
}

TEST(PseudoResolvent, ZeroMatricesDiverge) {
  const QuadraticMap map = instances::Real(
      {Eigen::MatrixXd::Zero(2, 2)}, {V({1, 0})});
  EXPECT_TRUE(PseudoResolventSq(map, V({1}), ShiftMode::kLambdaM).is_infinite());
}

TEST(PseudoResolvent, ZeroVectorGivesZero) {
  const QuadraticMap map = instances::Real({instances::Diag({1, 2})}, {V({0, 0})});
  EXPECT_EQ(PseudoResolventSq(map, V({1}), ShiftMode::kLambdaM).value(), 0.0);
  EXPECT_EQ(PseudoResolventSq(map, V({-1}), ShiftMode::kLambdaMin).value(), 0.0);
}

// Finite limits agree with a pseudo-inverse computed by a rank-revealing
// factorisation; infinite ones correspond to c.v outside the range.
TEST(PseudoResolvent, MatchesPseudoInverseOracle) {
  std::mt19937_64 rng(5);
  int finite = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, n, 2));
    // A positive definite first component makes finite limits common.
    if (trial % 2 == 0) map.A[0] += 4.0 * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::VectorXd c = oracle::RandomUnit(rng, 2);
    for (ShiftMode mode : {ShiftMode::kLambdaM, ShiftMode::kLambdaMin}) {
      const ExtendedReal got = PseudoResolventSq(map, c, mode);
      const double want = oracle::PseudoInverseLimit(map, c, mode);
      if (std::isinf(want)) {
        EXPECT_TRUE(got.is_infinite());
      } else {
        ++finite;
        ASSERT_TRUE(got.is_finite());
        EXPECT_NEAR(got.value(), want, 1e-8 * std::max(1.0, want));
      }
    }
  }
  EXPECT_GT(finite, 30);
}

// The eps-regularised family grows as eps shrinks and stays below the limit.
TEST(PseudoResolvent, MonotoneEpsFamily) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const QuadraticMap map = ValidateAndSymmetrize(
        oracle::RandomMap(rng, 3, 2, trial % 2 ? Field::kComplex : Field::kReal));
    const Eigen::VectorXd c = oracle::RandomUnit(rng, 2);
    for (ShiftMode mode : {ShiftMode::kLambdaM, ShiftMode::kLambdaMin}) {
      const ExtendedReal limit = PseudoResolventSq(map, c, mode);
      double prev = 0.0;
      for (double eps : {1e-2, 1e-4, 1e-6}) {
        const double value = oracle::DirectResolventSq(map, c, mode, eps);
        EXPECT_GE(value, prev * (1.0 - 1e-9));
        if (limit.is_finite()) {
          EXPECT_LE(value, limit.value() * (1.0 + 1e-9));
        }
        prev = value;
      }
      if (limit.is_infinite()) {
        EXPECT_GT(prev, 1e6);
      }
    }
  }
}

TEST(PseudoResolvent, ScalingLaws) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, 3, 2));
    const Eigen::VectorXd c = oracle::RandomUnit(rng, 2);
    const double s = 0.5 + trial * 0.1;
    QuadraticMap sv = map;
    QuadraticMap sa = map;
    for (int i = 0; i < 2; ++i) {
      sv.v[i] *= s;
      sa.A[i] *= s;
    }
    for (ShiftMode mode : {ShiftMode::kLambdaM, ShiftMode::kLambdaMin}) {
      const ExtendedReal base = PseudoResolventSq(map, c, mode);
      const ExtendedReal bv = PseudoResolventSq(sv, c, mode);
      const ExtendedReal ba = PseudoResolventSq(sa, c, mode);
      if (base.is_infinite()) {
        EXPECT_TRUE(bv.is_infinite());
        EXPECT_TRUE(ba.is_infinite());
        continue;
      }
      EXPECT_NEAR(bv.value(), s * s * base.value(), 1e-9 * s * s * base.value());
      EXPECT_NEAR(ba.value(), base.value() / (s * s), 1e-9 * base.value() / (s * s));
    }
  }
}

TEST(PseudoResolvent, UnitaryBasisInvariance) {
  std::mt19937_64 rng(29);
  for (Field field : {Field::kReal, Field::kComplex}) {
    for (int trial = 0; trial < 30; ++trial) {
      const QuadraticMap map = ValidateAndSymmetrize(oracle::RandomMap(rng, 4, 2, field));
      const QuadraticMap g = ValidateAndSymmetrize(oracle::RandomMap(rng, 4, 1, field));
      Eigen::MatrixXcd U = Eigen::HouseholderQR<Eigen::MatrixXcd>(g.A[0]).householderQ();
      if (field == Field::kReal) U = U.real().cast<std::complex<double>>();
      QuadraticMap rotated = map;
      for (int i = 0; i < 2; ++i) {
        rotated.A[i] = U.adjoint() * map.A[i] * U;
        rotated.v[i] = U.adjoint() * map.v[i];
      }
      rotated = ValidateAndSymmetrize(rotated);
      const Eigen::VectorXd c = oracle::RandomUnit(rng, 2);
      for (ShiftMode mode : {ShiftMode::kLambdaM, ShiftMode::kLambdaMin}) {
        const ExtendedReal a = PseudoResolventSq(map, c, mode);
        const ExtendedReal b = PseudoResolventSq(rotated, c, mode);
        ASSERT_EQ(a.is_finite(), b.is_finite());
        if (a.is_finite()) {
          EXPECT_NEAR(a.value(), b.value(), 1e-9 * std::max(1.0, a.value()));
        }
      }
    }
  }
}

}  // namespace
}  // namespace qconvex
