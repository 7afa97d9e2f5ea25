#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kernelab/gram.hpp"
#include "kernelab/kernel_expr.hpp"

namespace kernelab {

enum class CombineOp { Sum, Product, Scale };

/// Closure operations on kernels.  Sums and products of positive-definite
/// kernels stay positive definite; Scale multiplies by a constant c >= 0
/// (pass it via `scale`).  Products of series kernels on a common domain are
/// returned as series kernels again: closed families are recognized
/// ((1-t)^{-n} powers add exponents, exponential rates add) and anything
/// else falls back to coefficient convolution.
ExprPtr combine(CombineOp op, std::vector<ExprPtr> kernels, double scale = 1.0);

/// K^n.  Series kernels in closed families come back in closed form; other
/// expressions become power nodes (evaluated as iterated products).
ExprPtr kernel_power(const ExprPtr& k, int n);

/// Kernel built from the first `count` expansion functions (coefficient
/// vectors in the monomial basis); count = 0 uses all of them.  Validates
/// that the diagonal sums behave like a convergent expansion on sample
/// points of the domain.
ExprPtr kernel_from_frame(std::vector<std::vector<Scalar>> functions, Domain domain,
                          int count = 0);

/// Norm of F in the sum space of K1 and K2, computed over the sampled spans:
///
///   ||F||^2 = min { ||F1||_{K1}^2 + ||F2||_{K2}^2 : F1 + F2 = F }
///
/// with F given by its values on `pts` and the F_i ranging over the spans of
/// the kernels' sections at `pts`.  The minimizer makes the squared norm
/// f^H (G1+G2)^+ f.  Throws std::domain_error when F is not expressible in
/// the joint sampled span.
double sum_rkhs_norm(const Eigen::VectorXcd& f_values, const PointSet& pts, const ExprPtr& k1,
                     const ExprPtr& k2);

/// Values at pts of the section combination F(y) = sum_j d_j K(y, x_j),
/// i.e. G d.  Weight vectors pair with the second (unconjugated) kernel
/// slot, so ||F||^2 is the plain quadratic form d^H G d.
Eigen::VectorXcd section_values(const GramMatrix& g, const Eigen::VectorXcd& d);

}  // namespace kernelab
