#include "kernelab/algebra.hpp"

#include <cmath>

#include "kernelab/linalg.hpp"

namespace kernelab {

namespace {

const SeriesNode* as_series(const ExprPtr& k) {
  return k ? std::get_if<SeriesNode>(&k->node) : nullptr;
}

/// Closed-family view of a rule: (1-t)^{-n} <-> binomial exponent n (with
/// the geometric rule as n = 1), exp(lambda t) <-> rate lambda.
struct FamilyInfo {
  enum class Kind { Binomial, Exponential, Other } kind = Kind::Other;
  int exponent = 0;
  Rational rate{0};
};

FamilyInfo family_of(const CoefficientRule& rule) {
  if (dynamic_cast<const OnesRule*>(&rule)) {
    return {FamilyInfo::Kind::Binomial, 1, Rational(0)};
  }
  if (auto* b = dynamic_cast<const BinomialRule*>(&rule)) {
    return {FamilyInfo::Kind::Binomial, b->exponent(), Rational(0)};
  }
  if (auto* e = dynamic_cast<const ExpRule*>(&rule)) {
    return {FamilyInfo::Kind::Exponential, 0, e->rate()};
  }
  return {};
}

RulePtr make_binomial(int n) {
  if (n == 1) return std::make_shared<OnesRule>();
  return std::make_shared<BinomialRule>(n);
}

ExprPtr product_of_series(const std::vector<ExprPtr>& factors) {
  const Domain d = as_series(factors[0])->kernel.domain;
  for (const auto& f : factors) {
    if (!(as_series(f)->kernel.domain == d)) return nullptr;
  }

  // Try a closed family first.
  FamilyInfo acc = family_of(*as_series(factors[0])->kernel.rule);
  bool closed = acc.kind != FamilyInfo::Kind::Other;
  for (std::size_t i = 1; closed && i < factors.size(); ++i) {
    const FamilyInfo fi = family_of(*as_series(factors[i])->kernel.rule);
    if (fi.kind != acc.kind) closed = false;
    acc.exponent += fi.exponent;
    acc.rate += fi.rate;
  }
  if (closed && acc.kind == FamilyInfo::Kind::Binomial) {
    return kernels::series(SeriesKernel(make_binomial(acc.exponent), d));
  }
  if (closed && acc.kind == FamilyInfo::Kind::Exponential) {
    return kernels::series(SeriesKernel(
        std::make_shared<ExpRule>(acc.rate.numerator(), acc.rate.denominator()), d));
  }

  // Generic coefficient convolution, folded pairwise.
  RulePtr rule = as_series(factors[0])->kernel.rule;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    rule = std::make_shared<ConvolutionRule>(rule, as_series(factors[i])->kernel.rule);
  }
  return kernels::series(SeriesKernel(rule, d));
}

}  // namespace

ExprPtr combine(CombineOp op, std::vector<ExprPtr> ks, double scale) {
  for (const auto& k : ks) {
    if (!k) throw std::invalid_argument("combine: null kernel");
  }
  switch (op) {
    case CombineOp::Sum:
      return kernels::sum(std::move(ks));
    case CombineOp::Product: {
      if (ks.empty()) throw std::invalid_argument("combine: no factors");
      bool all_series = true;
      for (const auto& k : ks) all_series = all_series && as_series(k) != nullptr;
      if (all_series && ks.size() >= 2) {
        if (ExprPtr p = product_of_series(ks)) return p;
      }
      return kernels::product(std::move(ks));
    }
    case CombineOp::Scale: {
      if (ks.size() != 1) throw std::invalid_argument("combine: Scale takes one kernel");
      if (!(scale >= 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("combine: scale factor must be finite and >= 0");
      }
      return kernels::product({kernels::constant(scale, ks[0]->domain), ks[0]});
    }
  }
  throw std::logic_error("unreachable");
}

ExprPtr kernel_power(const ExprPtr& k, int n) {
  if (!k) throw std::invalid_argument("kernel_power: null kernel");
  if (n < 1) throw std::invalid_argument("kernel_power: exponent must be >= 1");
  if (n == 1) return k;
  if (const SeriesNode* s = as_series(k)) {
    const FamilyInfo fi = family_of(*s->kernel.rule);
    if (fi.kind == FamilyInfo::Kind::Binomial) {
      return kernels::series(SeriesKernel(make_binomial(fi.exponent * n), s->kernel.domain));
    }
    if (fi.kind == FamilyInfo::Kind::Exponential) {
      const Rational r = fi.rate * Rational(n);
      return kernels::series(
          SeriesKernel(std::make_shared<ExpRule>(r.numerator(), r.denominator()),
                       s->kernel.domain));
    }
  }
  return kernels::power(k, n);
}

ExprPtr kernel_from_frame(std::vector<std::vector<Scalar>> functions, Domain domain,
                          int count) {
  if (count < 0) throw std::invalid_argument("kernel_from_frame: negative count");
  if (count > 0 && count < static_cast<int>(functions.size())) {
    functions.resize(count);
  }
  ExprPtr k = kernels::frame(std::move(functions), domain);

  // Probe the diagonal partial sums at a few admissible points: the last
  // quarter of the expansion must not dominate, otherwise the family has no
  // convergent square sum there and the "kernel" would be an artifact of the
  // cutoff.
  const FrameNode& node = std::get<FrameNode>(k->node);
  const std::size_t n = node.functions.size();
  if (n >= 8) {
    std::vector<Scalar> probes;
    switch (domain.kind) {
      case DomainKind::RealInterval:
        probes = {Scalar(0.9 * domain.radius, 0.0), Scalar(-0.7 * domain.radius, 0.0)};
        break;
      case DomainKind::ComplexDisk:
        probes = {Scalar(0.9 * domain.radius, 0.0), Scalar(0.0, 0.8 * domain.radius)};
        break;
      case DomainKind::UnitInterval:
        probes = {Scalar(0.9, 0.0), Scalar(0.5, 0.0)};
        break;
      default:
        break;  // unbounded domains: nothing representative to probe
    }
    for (Scalar x : probes) {
      double head = 0.0, tail = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double term = std::norm(poly_eval(node.functions[j], x));
        (j < 3 * n / 4 ? head : tail) += term;
      }
      if (!std::isfinite(head + tail) || tail > head) {
        throw std::domain_error("kernel_from_frame: divergent frame sum at probe point");
      }
    }
  }
  return k;
}

Eigen::VectorXcd section_values(const GramMatrix& g, const Eigen::VectorXcd& d) {
  if (g.entries.rows() != d.size()) {
    throw std::invalid_argument("section_values: weight size mismatch");
  }
  return g.entries * d;
}

double sum_rkhs_norm(const Eigen::VectorXcd& f_values, const PointSet& pts, const ExprPtr& k1,
                     const ExprPtr& k2) {
  if (f_values.size() != static_cast<Eigen::Index>(pts.size())) {
    throw std::invalid_argument("sum_rkhs_norm: sample size mismatch");
  }
  const Eigen::MatrixXcd g = gram(k1, pts).entries + gram(k2, pts).entries;

  // Lagrange stationarity of  min a^H G1 a + b^H G2 b  s.t. G1 a + G2 b = f
  // gives a = b = lambda with (G1+G2) lambda = f, so the optimum is
  // f^H (G1+G2)^+ f.
  const Eigen::VectorXcd lambda = pinv_solve(g, f_values);
  const double scale = f_values.cwiseAbs().maxCoeff();
  const double residual = (g * lambda - f_values).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * (1.0 + scale)) {
    throw std::domain_error("sum_rkhs_norm: samples not in the joint section span (residual " +
                            std::to_string(residual) + ")");
  }
  const double norm_sq = std::real(f_values.dot(lambda));
  return std::sqrt(std::max(0.0, norm_sq));
}

}  // namespace kernelab
