#include "kernelab/dual_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kernelab {

namespace {

void check_index_supported(const SeriesKernel& k, int n) {
  if (n < 0) throw std::invalid_argument("dual basis index must be >= 0");
  bool positive;
  if (auto e = k.rule->coeff_exact(n)) {
    positive = *e > Rational(0);
  } else {
    positive = k.rule->coeff(n) > 0.0;
  }
  if (!positive) {
    throw std::domain_error("unsupported index " + std::to_string(n) +
                            ": series coefficient vanishes, the normalized derivative "
                            "functional is undefined there");
  }
}

}  // namespace

DistributionElement::DistributionElement(std::vector<Scalar> c) : coeffs(std::move(c)) {
  for (const Scalar& v : coeffs) require_finite(v, "DistributionElement coefficient");
}

DistributionElement DistributionElement::basis(int n) {
  if (n < 0) throw std::invalid_argument("DistributionElement::basis: index must be >= 0");
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0.0, 0.0));
  c.back() = Scalar(1.0, 0.0);
  return DistributionElement(std::move(c));
}

Rational dual_pairing_exact(const SeriesKernel& k, int n, int m) {
  check_index_supported(k, n);
  check_index_supported(k, m);
  // d^n_x d^m_y of sum_k a_k conj(x)^k y^k at the origin: every term has
  // equal powers in both variables, so mixed indices extract nothing.
  if (n != m) return Rational(0);
  // At n = m the extraction yields a_n n! m!, and the normalization divides
  // by (n! sqrt(a_n)) (m! sqrt(a_m)); everything cancels.  Carry the final
  // ratio a_n / a_n in rational arithmetic when exact coefficients exist, so
  // the result is exact by computation and not by fiat.
  if (auto e = k.rule->coeff_exact(n)) return *e / *e;
  return Rational(1);
}

Scalar dual_pairing(const SeriesKernel& k, int n, int m) {
  return Scalar(to_double(dual_pairing_exact(k, n, m)), 0.0);
}

Scalar apply_distribution(const DistributionElement& d, const std::vector<Scalar>& p,
                          const SeriesKernel& k) {
  // p^(n)(0)/n! is just the monomial coefficient p_n.
  const std::size_t count = std::min(d.coeffs.size(), p.size());
  Scalar acc(0.0, 0.0);
  for (std::size_t n = 0; n < count; ++n) {
    if (d.coeffs[n] == Scalar(0.0, 0.0) || p[n] == Scalar(0.0, 0.0)) continue;
    check_index_supported(k, static_cast<int>(n));
    const double a = k.rule->coeff(static_cast<int>(n));
    acc += d.coeffs[n] * p[n] / std::sqrt(a);
  }
  return acc;
}

DeltaExpansion delta_expand(Scalar x, int n_terms, const std::vector<Scalar>& p) {
  if (n_terms < 1) throw std::invalid_argument("delta_expand: need n_terms >= 1");
  require_finite(x, "delta_expand point");

  // sum_{k<N} x^k p^(k)(0)/k! is the order-N Taylor truncation of p; Horner
  // on the leading N coefficients evaluates it.
  std::vector<Scalar> head(p.begin(),
                           p.begin() + std::min<std::size_t>(p.size(), n_terms));
  DeltaExpansion out;
  out.value = poly_eval(head, x);

  int degree = -1;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] != Scalar(0.0, 0.0)) degree = static_cast<int>(j);
  }
  out.truncated = degree >= n_terms;
  out.residual = std::abs(poly_eval(p, x) - out.value);
  return out;
}

DeltaExpansion delta_expand(const Point& x, int n_terms, const std::vector<Scalar>& p) {
  return delta_expand(x.value, n_terms, p);
}

double dirac_norm(const std::vector<Scalar>& weights, const PointSet& pts,
                  const ExprPtr& kernel, int truncation) {
  if (weights.size() != pts.size()) {
    throw std::invalid_argument("dirac_norm: weight count must match point count");
  }
  Eigen::VectorXcd c(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require_finite(weights[i], "dirac_norm weight");
    c(static_cast<Eigen::Index>(i)) = weights[i];
  }
  const double q = quadratic_form(gram(kernel, pts, truncation).entries, c);
  // The form is psd up to rounding; clip the dust below zero before sqrt.
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace kernelab
