#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernelab/domain.hpp"
#include "kernelab/scalar.hpp"

namespace kernelab {

/// Coefficient rule for a diagonal power series kernel
///
///     K(x, y) = sum_k a_k conj(x)^k y^k,   a_k >= 0.
///
/// Rules provide doubles always, and exact rationals inside a per-rule index
/// window (outside the window the exact query returns nullopt rather than
/// risking 64-bit overflow).  Tail estimates are driven by ratio_bound(N),
/// an upper bound on sup_{k >= N} a_{k+1} / a_k.
class CoefficientRule {
 public:
  virtual ~CoefficientRule() = default;

  virtual double coeff(int k) const = 0;
  virtual std::optional<Rational> coeff_exact(int k) const = 0;

  /// Radius of convergence of sum a_k t^k (infinity when entire).
  virtual double convergence_radius() const = 0;

  /// Upper bound on sup_{k >= N} a_{k+1}/a_k; +inf when no bound is known.
  virtual double ratio_bound(int N) const = 0;

  /// Number of coefficients when the series is a polynomial, else nullopt.
  virtual std::optional<int> finite_support() const { return std::nullopt; }

  virtual std::string name() const = 0;
};

using RulePtr = std::shared_ptr<const CoefficientRule>;

/// a_k = 1 : geometric series, sums to 1/(1 - t) inside the unit disk.
class OnesRule final : public CoefficientRule {
 public:
  double coeff(int) const override { return 1.0; }
  std::optional<Rational> coeff_exact(int) const override { return Rational(1); }
  double convergence_radius() const override { return 1.0; }
  double ratio_bound(int) const override { return 1.0; }
  std::string name() const override { return "geometric"; }
};

/// a_k = binom(n+k-1, k) : expansion coefficients of (1 - t)^{-n}.
/// n = 1 gives the geometric rule, n = 2 gives a_k = k + 1.
class BinomialRule final : public CoefficientRule {
 public:
  explicit BinomialRule(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("BinomialRule: exponent must be >= 1");
  }

  int exponent() const { return n_; }

  double coeff(int k) const override {
    if (auto r = coeff_exact(k)) return to_double(*r);
    // Outside the exact window: iterate the ratio recurrence in doubles.
    double a = 1.0;
    for (int j = 0; j < k; ++j) a *= static_cast<double>(n_ + j) / (j + 1);
    return a;
  }

  std::optional<Rational> coeff_exact(int k) const override {
    if (k < 0) return std::nullopt;
    // binom(n+k-1, k) built multiplicatively with overflow guard.
    long long num = 1;
    for (int j = 0; j < k; ++j) {
      const long long f = n_ + j;
      if (num > std::numeric_limits<long long>::max() / f) return std::nullopt;
      num *= f;
      num /= (j + 1);  // exact: partial products of binomials are integers
    }
    return Rational(num);
  }

  double convergence_radius() const override { return 1.0; }
  double ratio_bound(int N) const override {
    return static_cast<double>(n_ + N) / (N + 1);
  }
  std::string name() const override { return "binomial"; }

 private:
  int n_;
};

/// a_k = lambda^k / k! : expansion of exp(lambda t); entire.
class ExpRule final : public CoefficientRule {
 public:
  explicit ExpRule(long long lambda_num = 1, long long lambda_den = 1)
      : lambda_(lambda_num, lambda_den) {
    if (lambda_ < Rational(0)) throw std::invalid_argument("ExpRule: rate must be >= 0");
  }

  Rational rate() const { return lambda_; }

  double coeff(int k) const override {
    if (auto r = coeff_exact(k)) return to_double(*r);
    double a = 1.0;
    const double lam = to_double(lambda_);
    for (int j = 1; j <= k; ++j) a *= lam / j;
    return a;
  }

  std::optional<Rational> coeff_exact(int k) const override {
    if (k < 0 || k > 20) return std::nullopt;  // 21! overflows long long
    Rational a(1);
    for (int j = 1; j <= k; ++j) {
      a *= lambda_;
      a /= Rational(j);
    }
    return a;
  }

  double convergence_radius() const override {
    return std::numeric_limits<double>::infinity();
  }
  double ratio_bound(int N) const override { return to_double(lambda_) / (N + 1); }
  std::string name() const override { return "exponential"; }

 private:
  Rational lambda_;
};

/// Explicit finite coefficient list (a polynomial kernel).  Exact values are
/// carried when the list was produced by exact arithmetic.
class FiniteListRule final : public CoefficientRule {
 public:
  explicit FiniteListRule(std::vector<double> coeffs,
                          std::optional<std::vector<Rational>> exact = std::nullopt)
      : coeffs_(std::move(coeffs)), exact_(std::move(exact)) {
    for (double a : coeffs_) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("FiniteListRule: coefficients must be finite and >= 0");
      }
    }
    if (exact_ && exact_->size() != coeffs_.size()) {
      throw std::invalid_argument("FiniteListRule: exact list length mismatch");
    }
  }

  static FiniteListRule from_exact(std::vector<Rational> exact) {
    std::vector<double> d(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) d[i] = to_double(exact[i]);
    return FiniteListRule(std::move(d), std::move(exact));
  }

  double coeff(int k) const override {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0.0;
  }
  std::optional<Rational> coeff_exact(int k) const override {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
    if (!exact_) return std::nullopt;
    return (*exact_)[k];
  }
  double convergence_radius() const override {
    return std::numeric_limits<double>::infinity();
  }
  double ratio_bound(int N) const override {
    return N >= static_cast<int>(coeffs_.size()) ? 0.0
           : std::numeric_limits<double>::infinity();
  }
  std::optional<int> finite_support() const override {
    return static_cast<int>(coeffs_.size());
  }
  std::string name() const override { return "list"; }

  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
  std::optional<std::vector<Rational>> exact_;
};

/// Cauchy product of two rules: c_k = sum_j a_j b_{k-j}.  Kept for products
/// that do not collapse to a closed family.  The tail ratio bound
/// rho_a(0) + rho_b(0) is provable but loose; closed families are preferred
/// whenever the algebra layer can recognize them.
class ConvolutionRule final : public CoefficientRule {
 public:
  ConvolutionRule(RulePtr a, RulePtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_) throw std::invalid_argument("ConvolutionRule: null factor");
  }

  double coeff(int k) const override {
    double c = 0.0;
    for (int j = 0; j <= k; ++j) c += a_->coeff(j) * b_->coeff(k - j);
    return c;
  }

  std::optional<Rational> coeff_exact(int k) const override {
    Rational c(0);
    for (int j = 0; j <= k; ++j) {
      auto x = a_->coeff_exact(j);
      auto y = b_->coeff_exact(k - j);
      if (!x || !y) return std::nullopt;
      c += (*x) * (*y);
    }
    return c;
  }

  double convergence_radius() const override {
    return std::min(a_->convergence_radius(), b_->convergence_radius());
  }

  double ratio_bound(int) const override {
    const double ra = a_->ratio_bound(0), rb = b_->ratio_bound(0);
    if (!std::isfinite(ra) || !std::isfinite(rb)) {
      return std::numeric_limits<double>::infinity();
    }
    return ra + rb;
  }

  std::string name() const override { return "product-series"; }

  const RulePtr& left() const { return a_; }
  const RulePtr& right() const { return b_; }

 private:
  RulePtr a_, b_;
};

/// A diagonal power-series kernel: coefficient rule plus the domain it is
/// evaluated on.  The domain must fit inside the series' disk of convergence
/// (the closed unit interval is allowed for radius-1 rules; its right
/// endpoint touches the boundary and is only ever used through explicitly
/// truncated evaluation).
struct SeriesKernel {
  RulePtr rule;
  Domain domain;

  SeriesKernel(RulePtr r, Domain d) : rule(std::move(r)), domain(d) {
    if (!rule) throw std::invalid_argument("SeriesKernel: null rule");
    const double rad = rule->convergence_radius();
    double needed = 0.0;
    switch (domain.kind) {
      case DomainKind::RealInterval:
      case DomainKind::ComplexDisk:
        needed = domain.radius;
        break;
      case DomainKind::UnitInterval:
        needed = 1.0;
        break;
      case DomainKind::UpperHalfPlane:
      case DomainKind::WholePlane:
        needed = std::numeric_limits<double>::infinity();
        break;
    }
    if (needed > rad) {
      throw std::invalid_argument("SeriesKernel: domain exceeds radius of convergence");
    }
  }
};

/// Partial sum  sum_{k<N} a_k conj(x)^k y^k.  The conjugate sits on the first
/// argument so that the double sum  sum_ij conj(c_i) c_j K(x_i, x_j)  is a
/// sum of squares; on real domains the conjugate is invisible.
inline Scalar series_partial_sum(const SeriesKernel& k, Scalar x, Scalar y, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("series_partial_sum: need n_terms >= 1");
  const Scalar t = std::conj(x) * y;
  Scalar acc(0.0, 0.0);
  Scalar p(1.0, 0.0);
  for (int j = 0; j < n_terms; ++j) {
    acc += k.rule->coeff(j) * p;
    p *= t;
  }
  return acc;
}

/// Upper bound on the dropped tail  sum_{k>=N} a_k r_eff^{2k}  valid for all
/// evaluation points of modulus <= r_eff.  Throws std::domain_error when no
/// convergent majorant is available at this (r_eff, N).
inline double truncation_bound(const SeriesKernel& k, double r_eff, int N) {
  if (!(r_eff >= 0.0) || !std::isfinite(r_eff)) {
    throw std::invalid_argument("truncation_bound: bad r_eff");
  }
  if (N < 0) throw std::invalid_argument("truncation_bound: N must be >= 0");
  const double q = r_eff * r_eff;
  const CoefficientRule& rule = *k.rule;

  if (auto sup = rule.finite_support()) {
    double tail = 0.0, p = std::pow(q, N);
    for (int j = N; j < *sup; ++j, p *= q) tail += rule.coeff(j) * p;
    return tail;
  }

  const double rho = rule.ratio_bound(N);
  if (!(rho * q < 1.0)) {
    throw std::domain_error("truncation_bound: bound unavailable (tail ratio " +
                            std::to_string(rho * q) + " >= 1)");
  }
  // a_N q^N / (1 - rho q); the first factor may underflow to 0, which is fine.
  return rule.coeff(N) * std::pow(q, N) / (1.0 - rho * q);
}

/// Smallest truncation length (up to a cap) whose tail bound meets `target`.
inline int auto_truncation(const SeriesKernel& k, double r_eff, double target = 1e-12,
                           int n_cap = 200000) {
  if (auto sup = k.rule->finite_support()) return *sup;
  auto ok = [&](int n) {
    try {
      return truncation_bound(k, r_eff, n) <= target;
    } catch (const std::domain_error&) {
      return false;
    }
  };
  int hi = 1;
  while (hi < n_cap && !ok(hi)) hi *= 2;
  if (!ok(hi)) {
    throw std::domain_error("auto_truncation: no truncation up to cap meets target");
  }
  int lo = hi / 2;
  while (lo + 1 < hi) {  // bounds decrease in N once convergent, so bisect
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return std::max(hi, 1);
}

/// Norm of  f = sum_k c_k x^k  in the reproducing space of the series kernel:
/// sqrt( sum |c_k|^2 / a_k ).  A nonzero coefficient over a_k = 0 means f is
/// not in the space at all.
inline double rkhs_norm(const std::vector<Scalar>& coeffs, const SeriesKernel& k) {
  double s = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = k.rule->coeff(static_cast<int>(j));
    const double c2 = std::norm(coeffs[j]);
    if (c2 == 0.0) continue;
    if (a <= 0.0) {
      throw std::domain_error("rkhs_norm: monomial degree " + std::to_string(j) +
                              " not in the space (zero series coefficient)");
    }
    s += c2 / a;
  }
  return std::sqrt(s);
}

/// Exact squared norm for rational coefficient vectors, when every series
/// coefficient involved has an exact value.
inline std::optional<Rational> rkhs_norm_sq_exact(const std::vector<Rational>& coeffs,
                                                  const SeriesKernel& k) {
  Rational s(0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == Rational(0)) continue;
    auto a = k.rule->coeff_exact(static_cast<int>(j));
    if (!a) return std::nullopt;
    if (*a <= Rational(0)) {
      throw std::domain_error("rkhs_norm_sq_exact: degree not in the space");
    }
    s += coeffs[j] * coeffs[j] / *a;
  }
  return s;
}

}  // namespace kernelab
