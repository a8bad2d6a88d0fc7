// Named instances with hand-derived properties, shared by the test binaries.
#ifndef QCONVEX_TESTS_INSTANCES_H_
#define QCONVEX_TESTS_INSTANCES_H_

#include <vector>

#include <Eigen/Core>

#include "qconvex/model.h"

namespace instances {

using qconvex::QuadraticMap;

inline QuadraticMap Real(const std::vector<Eigen::MatrixXd>& A,
                         const std::vector<Eigen::VectorXd>& v) {
  QuadraticMap raw;
  raw.field = qconvex::Field::kReal;
  for (const auto& a : A) raw.A.push_back(a.cast<std::complex<double>>());
  for (const auto& x : v) raw.v.push_back(x.cast<std::complex<double>>());
  return qconvex::ValidateAndSymmetrize(raw);
}

inline Eigen::MatrixXd M2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Eigen::VectorXd V(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Eigen::MatrixXd Diag(std::initializer_list<double> xs) {
  return V(xs).asDiagonal();
}

// f(x) = x^2 - 2x.
inline QuadraticMap Scalar(double a = 1.0, double v = 1.0) {
  Eigen::MatrixXd A(1, 1);
  A << a;
  return Real({A}, {V({v})});
}

// A = diag(1, -1), v = (1, 0): the hard case at c = +1.
inline QuadraticMap HardCase() { return Real({Diag({1, -1})}, {V({1, 0})}); }

// A1 = diag(1, -1), A2 = offdiag(1), v orthonormal: the limit objective is
// finite only at c = (1, 0).
inline QuadraticMap Spike() {
  return Real({Diag({1, -1}), M2(0, 1, 1, 0)}, {V({1, 0}), V({0, 1})});
}

// m = 3 instance whose minimum 1/4 sits at c = (1, 0, 0), a direction where
// c.A is indefinite and the bottom projection vanishes.
inline QuadraticMap Spike3() {
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(3, 3);
  a2(1, 2) = a2(2, 1) = 1.0;
  return Real({Diag({1, -1, 0}), a2, Eigen::MatrixXd::Zero(3, 3)},
              {V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1})});
}

}  // namespace instances

#endif  // QCONVEX_TESTS_INSTANCES_H_
