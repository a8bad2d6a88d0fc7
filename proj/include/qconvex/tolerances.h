#ifndef QCONVEX_TOLERANCES_H_
#define QCONVEX_TOLERANCES_H_

namespace qconvex {

// Floating-point stand-ins for the exact-arithmetic case splits.
struct Tolerances {
  // Eigenvalues within cluster_rel * max(1, spectral radius) of the smallest
  // one form the bottom cluster.
  double cluster_rel = 1e-9;
  // Bottom-cluster projection is zero when |P c.v|^2 <= null_projection |c.v|^2.
  double null_projection = 1e-18;
  // Band around 1 used when classifying the joint-range condition.
  double verdict = 1e-9;
  // Audit slack, relative to the scale of the sampled image.
  double audit_rel = 1e-7;
  // Relative threshold for semidefiniteness and singularity of Gram matrices.
  double psd = 1e-12;
  // Asymmetric parts larger than sym_rel * max|entry| are reported.
  double sym_rel = 1e-12;
};

}  // namespace qconvex

#endif  // QCONVEX_TOLERANCES_H_
