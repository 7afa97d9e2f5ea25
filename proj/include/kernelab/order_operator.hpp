#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "kernelab/gram.hpp"
#include "kernelab/linalg.hpp"
#include "kernelab/series.hpp"

namespace kernelab {

/// Finite section of the operator that carries one kernel's sections into a
/// dominating kernel's space.  `c` solves  G_L C = G_K  on the sampled span,
/// and `eigenvalues` are those of the symmetrized pencil
/// W^H G_K W  with  W = G_L^{-1/2}  on the retained eigendirections.  When
/// K <= L genuinely holds the spectrum sits inside [0, 1] up to tolerance.
struct SampledOrderOperator {
  Eigen::MatrixXcd c;
  Eigen::VectorXd eigenvalues;  // ascending
  int effective_rank = 0;       // retained directions of G_L
  int dropped = 0;              // directions floored away as numerically null
  double residual = 0.0;        // max |(G_L C - G_K)_{ij}|
};
SampledOrderOperator order_operator_sampled(const ExprPtr& k, const ExprPtr& l,
                                            const PointSet& pts, int truncation = 0);

/// Diagonal route for two series kernels sharing the monomial basis: the
/// operator acts on the n-th basis direction by the exact factor
/// lambda_n = a_n(K) / a_n(L).  `inverse` (1/lambda_n) is present only when
/// every computed lambda_n is nonzero; for strictly shrinking spectra it
/// grows without bound, which is the unbounded inverse seen on the
/// geometric/squared-geometric pair.
struct DiagonalSpectrum {
  std::vector<Rational> lambda;
  std::optional<std::vector<Rational>> inverse;
  double max_lambda = 0.0;
  bool contractive = false;  // max over the computed window is <= 1
};
DiagonalSpectrum order_operator_diagonal(const SeriesKernel& k, const SeriesKernel& l,
                                         int n_terms);

/// Max deviation |(G_L C)_{ij} - (G_K)_{ij}| on the sample: how far the
/// solved operator is from reproducing K inside L's space.
double isometry_check(const ExprPtr& k, const ExprPtr& l, const PointSet& pts,
                      int truncation = 0);

/// Contractive-multiplier test: a function phi multiplies the space into
/// itself with norm <= 1 exactly when the deflated kernel
/// (1 - conj(phi(x)) phi(y)) K(x, y) stays positive semidefinite.  A NotPsd
/// witness refutes contractivity outright; a Psd verdict is evidence on the
/// sample.  `max_modulus` reports the sampled sup of |phi| (membership in
/// the unit ball is likewise only probed at the sample).
struct MultiplierReport {
  bool contractive = false;
  PsdCertificate witness;
  double max_modulus = 0.0;
};
MultiplierReport multiplier_test(const std::function<Scalar(Scalar)>& phi, const ExprPtr& k,
                                 const PointSet& pts, double tol = 1e-9, int truncation = 0);

}  // namespace kernelab
