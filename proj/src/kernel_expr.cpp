#include "kernelab/kernel_expr.hpp"

#include <cmath>

#include "kernelab/fractal.hpp"

namespace kernelab {

namespace {

Domain common_domain(const Domain& a, const Domain& b) {
  if (a == b) return a;
  if (a.contains_domain(b)) return b;
  if (b.contains_domain(a)) return a;
  throw std::invalid_argument("KernelExpr: incompatible domains (" + a.name() + " vs " +
                              b.name() + ")");
}

ExprPtr make(KernelExpr e) { return std::make_shared<const KernelExpr>(std::move(e)); }

}  // namespace

namespace kernels {

ExprPtr szego() {
  return make({BuiltinNode{BuiltinKind::Szego, 1.0, Domain::disk(1.0)}, Domain::disk(1.0)});
}

ExprPtr bergman() {
  return make({BuiltinNode{BuiltinKind::Bergman, 1.0, Domain::disk(1.0)}, Domain::disk(1.0)});
}

ExprPtr bargmann() {
  return make(
      {BuiltinNode{BuiltinKind::Bargmann, 1.0, Domain::whole_plane()}, Domain::whole_plane()});
}

ExprPtr half_plane_cauchy() {
  return make({BuiltinNode{BuiltinKind::HalfPlaneCauchy, 1.0, Domain::upper_half_plane()},
               Domain::upper_half_plane()});
}

ExprPtr constant(double c, Domain domain) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("constant kernel: value must be finite and >= 0");
  }
  return make({BuiltinNode{BuiltinKind::Constant, c, domain}, domain});
}

ExprPtr series(SeriesKernel k) {
  Domain d = k.domain;
  return make({SeriesNode{std::move(k)}, d});
}

ExprPtr geometric_interval(int n, double r) {
  if (r > 1.0) throw std::invalid_argument("geometric_interval: radius must be <= 1");
  RulePtr rule = n == 1 ? RulePtr(std::make_shared<OnesRule>())
                        : RulePtr(std::make_shared<BinomialRule>(n));
  return series(SeriesKernel(std::move(rule), Domain::real_interval(r)));
}

ExprPtr sum(std::vector<ExprPtr> terms) {
  if (terms.empty()) throw std::invalid_argument("sum: no terms");
  Domain d = terms[0]->domain;
  for (std::size_t i = 1; i < terms.size(); ++i) d = common_domain(d, terms[i]->domain);
  return make({SumNode{std::move(terms)}, d});
}

ExprPtr product(std::vector<ExprPtr> factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  Domain d = factors[0]->domain;
  for (std::size_t i = 1; i < factors.size(); ++i) d = common_domain(d, factors[i]->domain);
  return make({ProductNode{std::move(factors)}, d});
}

ExprPtr power(ExprPtr base, int exponent) {
  if (!base) throw std::invalid_argument("power: null base");
  if (exponent < 1) throw std::invalid_argument("power: exponent must be >= 1");
  Domain d = base->domain;
  return make({PowerNode{std::move(base), exponent}, d});
}

ExprPtr restriction(ExprPtr base, Domain subdomain) {
  if (!base) throw std::invalid_argument("restriction: null base");
  if (!(base->domain == subdomain) && !base->domain.contains_domain(subdomain)) {
    throw std::invalid_argument("restriction: subdomain not inside base domain");
  }
  return make({RestrictionNode{std::move(base), subdomain}, subdomain});
}

ExprPtr frame(std::vector<std::vector<Scalar>> functions, Domain domain) {
  if (functions.empty()) throw std::invalid_argument("frame: no functions");
  for (const auto& f : functions) {
    for (Scalar c : f) require_finite(c, "frame coefficient");
  }
  return make({FrameNode{std::move(functions), domain}, domain});
}

ExprPtr ifs(SeriesKernel base, int depth, int truncation) {
  if (depth < 0 || depth > 20) throw std::invalid_argument("ifs: depth must be in [0, 20]");
  if (truncation < 1) throw std::invalid_argument("ifs: truncation must be >= 1");
  const auto bk = base.domain.kind;
  if (bk != DomainKind::RealInterval && bk != DomainKind::UnitInterval) {
    throw std::invalid_argument("ifs: base kernel must live on a real interval");
  }
  return make({IfsNode{std::move(base), depth, truncation}, Domain::unit_interval()});
}

}  // namespace kernels

namespace {

struct Evaluator {
  Scalar x, y;
  int truncation;  // 0 = automatic

  Scalar operator()(const BuiltinNode& b) const {
    const Scalar t = std::conj(x) * y;
    switch (b.kind) {
      case BuiltinKind::Szego:
        return 1.0 / (Scalar(1.0, 0.0) - t);
      case BuiltinKind::Bergman: {
        const Scalar s = 1.0 / (Scalar(1.0, 0.0) - t);
        return s * s;
      }
      case BuiltinKind::Bargmann:
        return std::exp(t);
      case BuiltinKind::HalfPlaneCauchy:
        return 1.0 / (Scalar(0.0, 2.0) * (std::conj(x) - y));
      case BuiltinKind::Constant:
        return Scalar(b.constant, 0.0);
    }
    throw std::logic_error("unreachable");
  }

  Scalar operator()(const SeriesNode& s) const {
    int n = truncation;
    if (n <= 0) {
      const double r_eff = std::max(std::abs(x), std::abs(y));
      n = auto_truncation(s.kernel, r_eff);
    }
    return series_partial_sum(s.kernel, x, y, n);
  }

  Scalar operator()(const SumNode& s) const {
    Scalar acc(0.0, 0.0);
    for (const auto& t : s.terms) acc += eval(*t, x, y, truncation);
    return acc;
  }

  Scalar operator()(const ProductNode& p) const {
    Scalar acc = eval(*p.factors[0], x, y, truncation);
    for (std::size_t i = 1; i < p.factors.size(); ++i) {
      acc *= eval(*p.factors[i], x, y, truncation);
    }
    return acc;
  }

  Scalar operator()(const PowerNode& p) const {
    const Scalar base = eval(*p.base, x, y, truncation);
    Scalar acc = base;
    for (int i = 1; i < p.exponent; ++i) acc *= base;
    return acc;
  }

  Scalar operator()(const RestrictionNode& r) const { return eval(*r.base, x, y, truncation); }

  Scalar operator()(const FrameNode& f) const {
    std::size_t count = f.functions.size();
    if (truncation > 0) count = std::min<std::size_t>(count, truncation);
    Scalar acc(0.0, 0.0);
    for (std::size_t n = 0; n < count; ++n) {
      acc += std::conj(poly_eval(f.functions[n], x)) * poly_eval(f.functions[n], y);
    }
    return acc;
  }

  Scalar operator()(const IfsNode& node) const {
    int count = node.truncation;
    if (truncation > 0) count = std::min(count, truncation);
    const double xr = x.real(), yr = y.real();
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
      const double scale = std::sqrt(node.base.rule->coeff(i));
      auto g = [i, scale](double t) { return scale * std::pow(t, i); };
      acc += ifs_eval(g, node.depth, xr) * ifs_eval(g, node.depth, yr);
    }
    return Scalar(acc, 0.0);
  }
};

struct Majorant {
  double value = 0.0;  // bound on |K| over points of modulus <= r_eff
  double tail = 0.0;   // bound on the evaluation truncation error
};

Majorant majorant(const KernelExpr& k, double r_eff, int truncation);

struct MajorantVisitor {
  double r_eff;
  int truncation;

  Majorant operator()(const BuiltinNode& b) const {
    const double q = r_eff * r_eff;
    switch (b.kind) {
      case BuiltinKind::Szego:
        return {1.0 / (1.0 - q), 0.0};
      case BuiltinKind::Bergman:
        return {1.0 / ((1.0 - q) * (1.0 - q)), 0.0};
      case BuiltinKind::Bargmann:
        return {std::exp(q), 0.0};
      case BuiltinKind::HalfPlaneCauchy:
        // No uniform bound in terms of modulus alone; callers with half-plane
        // kernels get a conservative "no tail, unknown size" answer.
        return {std::numeric_limits<double>::infinity(), 0.0};
      case BuiltinKind::Constant:
        return {b.constant, 0.0};
    }
    throw std::logic_error("unreachable");
  }

  Majorant operator()(const SeriesNode& s) const {
    int n = truncation > 0 ? truncation : auto_truncation(s.kernel, r_eff);
    const double tail = truncation_bound(s.kernel, r_eff, n);
    // |sum_{k<n} a_k (conj(x) y)^k| <= partial sum at q + its own tail.
    const double head =
        series_partial_sum(s.kernel, Scalar(r_eff, 0.0), Scalar(r_eff, 0.0), n).real();
    return {head + tail, tail};
  }

  Majorant operator()(const SumNode& s) const {
    Majorant acc;
    for (const auto& t : s.terms) {
      const Majorant m = majorant(*t, r_eff, truncation);
      acc.value += m.value;
      acc.tail += m.tail;
    }
    return acc;
  }

  Majorant operator()(const ProductNode& p) const {
    Majorant acc = majorant(*p.factors[0], r_eff, truncation);
    for (std::size_t i = 1; i < p.factors.size(); ++i) {
      const Majorant m = majorant(*p.factors[i], r_eff, truncation);
      // |ab' - a'b'| <= |a - a'||b'| ... combined: e_ab = M_a e_b + M_b e_a + e_a e_b
      const double tail = acc.value * m.tail + m.value * acc.tail + acc.tail * m.tail;
      acc = {acc.value * m.value, tail};
    }
    return acc;
  }

  Majorant operator()(const PowerNode& p) const {
    const Majorant base = majorant(*p.base, r_eff, truncation);
    Majorant acc = base;
    for (int i = 1; i < p.exponent; ++i) {
      const double tail = acc.value * base.tail + base.value * acc.tail + acc.tail * base.tail;
      acc = {acc.value * base.value, tail};
    }
    return acc;
  }

  Majorant operator()(const RestrictionNode& r) const {
    return majorant(*r.base, r_eff, truncation);
  }

  Majorant operator()(const FrameNode& f) const {
    double total = 0.0;
    for (const auto& fn : f.functions) {
      double m = 0.0, p = 1.0;
      for (Scalar c : fn) {
        m += std::abs(c) * p;
        p *= r_eff;
      }
      total += m * m;
    }
    return {total, 0.0};
  }

  Majorant operator()(const IfsNode& node) const {
    // Each branch chain contributes at most max_[0,1] |g_i|^2 = a_i, and at
    // most two chains survive at interval endpoints.
    double total = 0.0;
    for (int i = 0; i < node.truncation; ++i) total += node.base.rule->coeff(i);
    return {4.0 * total, 0.0};
  }
};

Majorant majorant(const KernelExpr& k, double r_eff, int truncation) {
  return std::visit(MajorantVisitor{r_eff, truncation}, k.node);
}

}  // namespace

Scalar eval(const KernelExpr& k, Scalar x, Scalar y, int truncation) {
  if (!k.domain.contains(x) || !k.domain.contains(y)) {
    throw std::invalid_argument("eval: point outside kernel domain (" + k.domain.name() + ")");
  }
  const Scalar v = std::visit(Evaluator{x, y, truncation}, k.node);
  require_finite(v, "eval result");
  return v;
}

Scalar eval(const KernelExpr& k, const Point& x, const Point& y, int truncation) {
  if (!k.domain.contains_domain(x.domain) || !k.domain.contains_domain(y.domain)) {
    throw std::invalid_argument("eval: point tag incompatible with kernel domain");
  }
  return eval(k, x.value, y.value, truncation);
}

void require_compatible(const KernelExpr& k, const PointSet& pts) {
  if (!k.domain.contains_domain(pts.domain())) {
    throw std::invalid_argument("point set domain (" + pts.domain().name() +
                                ") incompatible with kernel domain (" + k.domain.name() + ")");
  }
}

double eval_tail_bound(const KernelExpr& k, double r_eff, int truncation) {
  return majorant(k, r_eff, truncation).tail;
}

}  // namespace kernelab
