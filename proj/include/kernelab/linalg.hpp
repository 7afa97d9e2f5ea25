#pragma once

#include <Eigen/Dense>

namespace kernelab {

/// Moore-Penrose pseudoinverse by SVD; singular values below
/// rcond * sigma_max are treated as zero.
Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, double rcond = 1e-12);

/// Minimum-norm least-squares solve via the same truncated SVD.
Eigen::VectorXcd pinv_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                            double rcond = 1e-12);

/// Hermitian square root pieces of a PSD matrix: retained eigenpairs with
/// eigenvalues >= floor_rel * lambda_max.  `whitener` W satisfies
/// W^H G W = I on the retained subspace (W = V_r diag(lambda_r^{-1/2})).
struct PsdFactor {
  Eigen::MatrixXcd whitener;      // n x r
  Eigen::MatrixXcd basis;         // n x r retained eigenvectors
  Eigen::VectorXd eigenvalues;    // retained, ascending
  int dropped = 0;                // eigenvalues below the floor
};
PsdFactor psd_factor(const Eigen::MatrixXcd& g, double floor_rel = 1e-12);

}  // namespace kernelab
