#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "kernelab/kernel_expr.hpp"

namespace kernelab {

/// Kernel matrix G[i][j] = K(x_i, x_j) over a point set, Hermitian by
/// construction (upper triangle evaluated, mirror conjugated, diagonal made
/// exactly real).  Keeps the kernel for labeling serialized artifacts.
struct GramMatrix {
  Eigen::MatrixXcd entries;
  PointSet points;
  ExprPtr kernel;  // may be null for matrices built directly from data
};

GramMatrix gram(const ExprPtr& kernel, const PointSet& pts, int truncation = 0);

enum class PsdVerdict { Psd, NotPsd };

/// Finite-sample positivity certificate.  A `NotPsd` verdict is a proof that
/// the kernel is not positive definite (the witness vector realizes a
/// negative quadratic form); a `Psd` verdict is evidence on this sample only.
struct PsdCertificate {
  PsdVerdict verdict = PsdVerdict::Psd;
  double min_eigenvalue = 0.0;
  double spectral_radius = 0.0;
  double tolerance = 0.0;  // the absolute threshold actually applied
  Eigen::VectorXcd witness;  // eigenvector of the smallest eigenvalue

  bool psd() const { return verdict == PsdVerdict::Psd; }
};

/// Hermitian eigenvalue test: psd iff min_eig >= -tol * (1 + spectral_radius).
/// Non-Hermitian input (beyond rounding) is a hard error.
PsdCertificate psd_check(const Eigen::MatrixXcd& g, double tol = 1e-9);
PsdCertificate psd_check(const GramMatrix& g, double tol = 1e-9);

/// Quadratic form  sum_ij conj(c_i) c_j G[i][j]  (real up to rounding for
/// Hermitian G; the real part is returned).
double quadratic_form(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& c);

}  // namespace kernelab
