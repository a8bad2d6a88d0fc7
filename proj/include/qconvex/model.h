#ifndef QCONVEX_MODEL_H_
#define QCONVEX_MODEL_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "qconvex/tolerances.h"

namespace qconvex {

enum class Field { kReal, kComplex };

const char* FieldName(Field field);

// The quadratic map f_i(x) = x* A_i x - v_i* x - x* v_i, i = 1..m, acting on
// R^n or C^n. Entries are always stored as complex numbers; for the real
// field every imaginary part is zero.
struct QuadraticMap {
  Field field = Field::kReal;
  std::vector<Eigen::MatrixXcd> A;
  std::vector<Eigen::VectorXcd> v;

  int n() const { return v.empty() ? 0 : static_cast<int>(v.front().size()); }
  int m() const { return static_cast<int>(v.size()); }
  // Real dimension of the domain: n for R^n, 2n for C^n.
  int real_dimension() const { return field == Field::kReal ? n() : 2 * n(); }
};

// Checks dimensions and finiteness, then replaces every A_i by its
// (conjugate-)symmetric part. Appends a warning to `warnings` (when given)
// for each matrix whose asymmetric part exceeds tol.sym_rel * max|entry|.
// Throws InvalidInput on any violation.
QuadraticMap ValidateAndSymmetrize(QuadraticMap raw,
                                   const Tolerances& tol = {},
                                   std::vector<std::string>* warnings = nullptr);

// y_i = x* A_i x - 2 Re(v_i* x).
Eigen::VectorXd EvalMap(const QuadraticMap& map, const Eigen::VectorXcd& x);
Eigen::VectorXd EvalMap(const QuadraticMap& map, const Eigen::VectorXd& x);

// g_ij = Re(v_i* v_j).
Eigen::MatrixXd GramMatrix(const QuadraticMap& map);

// c.A = sum_i c_i A_i and c.v = sum_i c_i v_i for a real dual vector c.
Eigen::MatrixXcd CombineMatrices(const QuadraticMap& map,
                                 const Eigen::VectorXd& c);
Eigen::VectorXcd CombineVectors(const QuadraticMap& map,
                                const Eigen::VectorXd& c);

// Largest absolute matrix or vector entry; used to scale tolerances.
double EntryScale(const QuadraticMap& map);

struct HermitianEigen {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXcd vectors;   // orthonormal columns
};

// Eigen-decomposition of a Hermitian matrix. For the real field the real
// symmetric solver is used so that eigenvectors come out real. Throws
// NumericalFailure when the solver does not converge.
HermitianEigen DecomposeHermitian(const Eigen::MatrixXcd& matrix, Field field);

}  // namespace qconvex

#endif  // QCONVEX_MODEL_H_
