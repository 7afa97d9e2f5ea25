#include "kernelab/ordering.hpp"

#include <cmath>

namespace kernelab {

namespace {

const SeriesKernel* series_of(const ExprPtr& k) {
  if (!k) return nullptr;
  if (auto* s = std::get_if<SeriesNode>(&k->node)) return &s->kernel;
  if (auto* r = std::get_if<RestrictionNode>(&k->node)) return series_of(r->base);
  return nullptr;
}

}  // namespace

std::optional<bool> coefficient_dominates(const ExprPtr& k, const ExprPtr& l) {
  const SeriesKernel* sk = series_of(k);
  const SeriesKernel* sl = series_of(l);
  if (!sk || !sl) return std::nullopt;

  const auto* bk = dynamic_cast<const BinomialRule*>(sk->rule.get());
  const auto* bl = dynamic_cast<const BinomialRule*>(sl->rule.get());
  const bool ones_k = dynamic_cast<const OnesRule*>(sk->rule.get()) != nullptr;
  const bool ones_l = dynamic_cast<const OnesRule*>(sl->rule.get()) != nullptr;
  const int nk = bk ? bk->exponent() : (ones_k ? 1 : 0);
  const int nl = bl ? bl->exponent() : (ones_l ? 1 : 0);
  if (nk > 0 && nl > 0) {
    // binom(n+k-1, k) is strictly increasing in n for every k >= 1.
    return nk <= nl;
  }

  const auto* ek = dynamic_cast<const ExpRule*>(sk->rule.get());
  const auto* el = dynamic_cast<const ExpRule*>(sl->rule.get());
  if (ek && el) return ek->rate() <= el->rate();

  // Finite list against anything exact: compare entries across the list's
  // support (beyond it the list contributes zeros).
  if (auto support = sk->rule->finite_support()) {
    bool exact_all = true;
    for (int j = 0; j < *support; ++j) {
      auto a = sk->rule->coeff_exact(j);
      auto b = sl->rule->coeff_exact(j);
      if (!a || !b) {
        exact_all = false;
        break;
      }
      if (*a > *b) return false;
    }
    if (exact_all) return true;
  }

  // Scan a window for a refuting index; cannot prove dominance this way.
  for (int j = 0; j < 512; ++j) {
    auto a = sk->rule->coeff_exact(j);
    auto b = sl->rule->coeff_exact(j);
    if (a && b && *a > *b) return false;
  }
  return std::nullopt;
}

OrderVerdict loewner_leq(const ExprPtr& k, const ExprPtr& l, const PointSet& pts, double tol) {
  if (!k || !l) throw std::invalid_argument("loewner_leq: null kernel");
  const Eigen::MatrixXcd diff = gram(l, pts).entries - gram(k, pts).entries;
  PsdCertificate cert = psd_check(diff, tol);

  OrderVerdict v{cert.verdict == PsdVerdict::Psd, OrderVerdict::Route::Sampled,
                 std::move(cert), pts};
  if (v.holds) {
    if (auto exact = coefficient_dominates(k, l); exact.has_value() && *exact) {
      v.route = OrderVerdict::Route::Coefficient;
    }
  }
  return v;
}

ChainReport verify_chain(const ExprPtr& k, const PointSet& pts, int n_max, double tol) {
  if (!k) throw std::invalid_argument("verify_chain: null kernel");
  if (n_max < 1) throw std::invalid_argument("verify_chain: n_max must be >= 1");
  require_compatible(*k, pts);

  const auto np = static_cast<Eigen::Index>(pts.size());
  const Eigen::MatrixXcd base = gram(k, pts).entries;
  const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(np, np);

  ChainReport report;
  auto step_verdict = [&](const Eigen::MatrixXcd& lo,
                          const Eigen::MatrixXcd& hi) -> OrderVerdict {
    PsdCertificate cert = psd_check(hi - lo, tol);
    return {cert.verdict == PsdVerdict::Psd, OrderVerdict::Route::Sampled, std::move(cert),
            pts};
  };

  // Premise: the constant kernel 1 sits below K.
  report.steps.push_back({0, step_verdict(ones, base)});
  if (!report.steps[0].verdict.holds) {
    report.all_hold = false;
    report.diagnostic =
        "premise 1 <= K refuted on the sample (min eigenvalue " +
        std::to_string(report.steps[0].verdict.witness.min_eigenvalue) +
        "); the tower K^n <= K^{n+1} has no base to start from";
    return report;
  }

  // Sampled K^n are Hadamard powers of the base Gram, accumulated by the
  // same left-fold multiply as power-node evaluation.
  Eigen::MatrixXcd cur = base;
  for (int n = 1; n < n_max; ++n) {
    const Eigen::MatrixXcd next = cur.cwiseProduct(base);
    report.steps.push_back({n, step_verdict(cur, next)});
    cur = next;
  }
  report.all_hold = true;
  for (const auto& s : report.steps) report.all_hold = report.all_hold && s.verdict.holds;
  return report;
}

MonotoneLimitResult monotone_limit(const std::function<ExprPtr(int)>& family,
                                   const PointSet& pts, int n_terms, double tol) {
  if (!family) throw std::invalid_argument("monotone_limit: null family");
  if (n_terms < 2) throw std::invalid_argument("monotone_limit: need at least two terms");

  const auto np = static_cast<Eigen::Index>(pts.size());
  MonotoneLimitResult res;
  res.sup_diag = Eigen::VectorXd::Zero(np);

  Eigen::MatrixXcd prev;
  std::vector<double> diag_max;  // max over points of K_n(x,x), per n
  diag_max.reserve(n_terms);

  constexpr double kGrowthCap = 1e6;
  constexpr int kEscalationWindow = 5;
  int escalation = 0;
  double prev_increment = 0.0;

  for (int n = 1; n <= n_terms; ++n) {
    const ExprPtr kn = family(n);
    if (!kn) throw std::invalid_argument("monotone_limit: family returned null");
    const Eigen::MatrixXcd g = gram(kn, pts).entries;

    for (Eigen::Index i = 0; i < np; ++i) {
      res.sup_diag(i) = std::max(res.sup_diag(i), g(i, i).real());
    }
    diag_max.push_back(g.diagonal().real().maxCoeff());

    if (n > 1) {
      const Eigen::MatrixXcd step = g - prev;
      const PsdCertificate cert = psd_check(step, tol);
      if (cert.verdict != PsdVerdict::Psd) {
        res.status = MonotoneLimitResult::Status::NotMonotone;
        res.diagnostic = "family is not monotone at index " + std::to_string(n) +
                         " (min eigenvalue " + std::to_string(cert.min_eigenvalue) + ")";
        res.limit = g;
        return res;
      }
      res.last_increment = step.cwiseAbs().maxCoeff();

      // Divergence diagnostics on the diagonal: monotone families converge
      // iff diagonal suprema stay finite.  Either the observed growth blows
      // past the cap, or increments keep ratcheting upward (a geometric
      // escape that would pass any fixed cap given enough terms).
      const double d = diag_max[n - 1] - diag_max[n - 2];
      const double scale = std::max(1.0, diag_max[0]);
      if (n > 2 && d > 1e-9 * scale && d >= prev_increment * (1.0 + 1e-9)) {
        ++escalation;
      } else {
        escalation = 0;
      }
      prev_increment = d;

      const double growth = diag_max.back() / std::max(diag_max.front(), 1e-300);
      if (growth > kGrowthCap || escalation >= kEscalationWindow) {
        res.status = MonotoneLimitResult::Status::SupViolated;
        res.diagnostic =
            "sup-condition violated: diagonal grows without bound (factor " +
            std::to_string(growth) + " after " + std::to_string(n) + " terms" +
            (escalation >= kEscalationWindow ? ", increments strictly escalating" : "") + ")";
        res.limit = g;
        return res;
      }
    }
    prev = g;
  }
  res.limit = prev;
  res.status = MonotoneLimitResult::Status::Converged;
  return res;
}

Dominance feature_dominance(const FeatureMap& fm, const ExprPtr& k, const PointSet& pts,
                            int truncation, double tol) {
  if (!k) throw std::invalid_argument("feature_dominance: null kernel");
  const Eigen::MatrixXcd fg = feature_gram(fm, pts, truncation);
  const Eigen::MatrixXcd kg = gram(k, pts).entries;
  const bool super = psd_check(fg - kg, tol).verdict == PsdVerdict::Psd;
  const bool sub = psd_check(kg - fg, tol).verdict == PsdVerdict::Psd;
  if (super && sub) return Dominance::Exact;
  if (super) return Dominance::Super;
  if (sub) return Dominance::Sub;
  return Dominance::Incomparable;
}

}  // namespace kernelab
