#pragma once

#include <vector>

#include "kernelab/gram.hpp"
#include "kernelab/series.hpp"

namespace kernelab {

/// Finite combination  sum_n c_n D_n  of the normalized derivative
/// functionals D_n = delta^(n) / (n! sqrt(a_n)) at the origin, the
/// orthonormal dual basis attached to a series kernel.  Elements are pure
/// coefficient data; every pairing they enter reduces to coefficient
/// extraction on power series.
struct DistributionElement {
  std::vector<Scalar> coeffs;

  explicit DistributionElement(std::vector<Scalar> c);

  /// D_n itself: the unit coefficient vector at index n.
  static DistributionElement basis(int n);
};

/// The pairing  D_n K D_m : apply D_n in the first kernel variable and D_m
/// in the second.  The double derivative of  sum_k a_k conj(x)^k y^k  at the
/// origin is nonzero only when n = m = k, where it equals a_n n! m!; the
/// normalizations cancel it to exactly 1.  Returned as an exact rational
/// (the cancellation a_n / a_n is carried out in rational arithmetic when
/// the rule has exact coefficients, and is symbolic otherwise).
Rational dual_pairing_exact(const SeriesKernel& k, int n, int m);

/// Same pairing as a floating scalar.
Scalar dual_pairing(const SeriesKernel& k, int n, int m);

/// Action of  d = sum_n c_n D_n  on a polynomial p given by its monomial
/// coefficients:  sum_n c_n p^(n)(0) / (n! sqrt(a_n)) = sum_n c_n p_n / sqrt(a_n).
Scalar apply_distribution(const DistributionElement& d, const std::vector<Scalar>& p,
                          const SeriesKernel& k);

/// Truncated point-mass expansion  sum_{k<N} x^k p^(k)(0) / k!  applied to a
/// polynomial.  For deg p < N this is the Taylor identity and reproduces
/// p(x) exactly; otherwise `truncated` is set and `residual` reports the
/// distance to the true value p(x).
struct DeltaExpansion {
  Scalar value{0.0, 0.0};
  bool truncated = false;
  double residual = 0.0;
};
DeltaExpansion delta_expand(Scalar x, int n_terms, const std::vector<Scalar>& p);
DeltaExpansion delta_expand(const Point& x, int n_terms, const std::vector<Scalar>& p);

/// Norm of the point-mass combination  sum_i c_i delta_{x_i}  in the dual
/// picture: sqrt(c* G c) with G the kernel matrix on the points.  This is
/// the same number as the kernel-space norm of  sum_i c_i K(., x_i), the
/// isometry between the two realizations.
double dirac_norm(const std::vector<Scalar>& weights, const PointSet& pts,
                  const ExprPtr& kernel, int truncation = 0);

}  // namespace kernelab
