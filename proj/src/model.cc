#include "qconvex/model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qconvex/errors.h"

namespace qconvex {

const char* FieldName(Field field) {
  return field == Field::kReal ? "real" : "complex";
}

namespace {

bool AllFinite(const Eigen::MatrixXcd& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

}  // namespace

QuadraticMap ValidateAndSymmetrize(QuadraticMap raw, const Tolerances& tol,
                                   std::vector<std::string>* warnings) {
  if (raw.v.empty()) throw InvalidInput("quadratic map needs m >= 1 components");
  if (raw.A.size() != raw.v.size()) {
    std::ostringstream os;
    os << "got " << raw.A.size() << " matrices but " << raw.v.size()
       << " vectors";
    throw InvalidInput(os.str());
  }
  const Eigen::Index n = raw.v.front().size();
  if (n < 1) throw InvalidInput("dimension n must be >= 1");

  for (std::size_t i = 0; i < raw.v.size(); ++i) {
    if (raw.v[i].size() != n) {
      std::ostringstream os;
      os << "v[" << i << "] has length " << raw.v[i].size() << ", expected "
         << n;
      throw InvalidInput(os.str());
    }
    if (raw.A[i].rows() != n || raw.A[i].cols() != n) {
      std::ostringstream os;
      os << "A[" << i << "] is " << raw.A[i].rows() << "x" << raw.A[i].cols()
         << ", expected " << n << "x" << n;
      throw InvalidInput(os.str());
    }
    if (!AllFinite(raw.A[i]) || !raw.v[i].real().allFinite() ||
        !raw.v[i].imag().allFinite()) {
      std::ostringstream os;
      os << "component " << i << " has a non-finite entry";
      throw InvalidInput(os.str());
    }
    if (raw.field == Field::kReal &&
        (raw.A[i].imag().cwiseAbs().maxCoeff() != 0.0 ||
         raw.v[i].imag().cwiseAbs().maxCoeff() != 0.0)) {
      std::ostringstream os;
      os << "component " << i << " has imaginary entries in a real instance";
      throw InvalidInput(os.str());
    }
  }

  for (std::size_t i = 0; i < raw.A.size(); ++i) {
    Eigen::MatrixXcd& a = raw.A[i];
    const double scale = a.cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd sym = 0.5 * (a + a.adjoint());
    const double asym = (a - sym).cwiseAbs().maxCoeff();
    if (warnings != nullptr && asym > tol.sym_rel * scale) {
      std::ostringstream os;
      os << "A[" << i << "] was not symmetric (asymmetric part " << asym
         << "); replaced by its symmetric part";
      warnings->push_back(os.str());
    }
    a = sym;
  }
  return raw;
}

Eigen::VectorXd EvalMap(const QuadraticMap& map, const Eigen::VectorXcd& x) {
  if (x.size() != map.n()) {
    std::ostringstream os;
    os << "point has length " << x.size() << ", expected " << map.n();
    throw InvalidInput(os.str());
  }
  Eigen::VectorXd y(map.m());
  for (int i = 0; i < map.m(); ++i) {
    const double quad = x.dot(map.A[i] * x).real();
    const double lin = map.v[i].dot(x).real();
    y(i) = quad - 2.0 * lin;
  }
  return y;
}

Eigen::VectorXd EvalMap(const QuadraticMap& map, const Eigen::VectorXd& x) {
  return EvalMap(map, Eigen::VectorXcd(x.cast<std::complex<double>>()));
}

Eigen::MatrixXd GramMatrix(const QuadraticMap& map) {
  const int m = map.m();
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      g(i, j) = g(j, i) = map.v[i].dot(map.v[j]).real();
    }
  }
  return g;
}

Eigen::MatrixXcd CombineMatrices(const QuadraticMap& map,
                                 const Eigen::VectorXd& c) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(map.n(), map.n());
  for (int i = 0; i < map.m(); ++i) {
    if (c(i) != 0.0) out += c(i) * map.A[i];
  }
  return out;
}

Eigen::VectorXcd CombineVectors(const QuadraticMap& map,
                                const Eigen::VectorXd& c) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(map.n());
  for (int i = 0; i < map.m(); ++i) {
    if (c(i) != 0.0) out += c(i) * map.v[i];
  }
  return out;
}

double EntryScale(const QuadraticMap& map) {
  double scale = 0.0;
  for (const auto& a : map.A) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  for (const auto& v : map.v) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  return scale;
}

HermitianEigen DecomposeHermitian(const Eigen::MatrixXcd& matrix,
                                  Field field) {
  HermitianEigen out;
  if (field == Field::kReal) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.real());
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("symmetric eigen-decomposition did not converge");
    }
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("hermitian eigen-decomposition did not converge");
    }
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

}  // namespace qconvex
