#include "kernelab/order_operator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kernelab {

SampledOrderOperator order_operator_sampled(const ExprPtr& k, const ExprPtr& l,
                                            const PointSet& pts, int truncation) {
  if (!k || !l) throw std::invalid_argument("order_operator_sampled: null kernel");
  const Eigen::MatrixXcd gk = gram(k, pts, truncation).entries;
  const Eigen::MatrixXcd gl = gram(l, pts, truncation).entries;

  // Eigen-floor factorization of G_L; the naive solve amplifies noise on the
  // near-null directions every analytic-kernel Gram has.
  const PsdFactor f = psd_factor(gl);

  SampledOrderOperator out;
  out.effective_rank = static_cast<int>(f.eigenvalues.size());
  out.dropped = f.dropped;

  // C = G_L^+ G_K restricted to the retained span: V Lambda^{-1} V^H G_K,
  // which is W (W^H G_K).
  out.c = f.whitener * (f.whitener.adjoint() * gk);
  out.residual = (gl * out.c - gk).cwiseAbs().maxCoeff();

  // Symmetrized pencil B = W^H G_K W; Hermitian, so a selfadjoint solve.
  Eigen::MatrixXcd b = f.whitener.adjoint() * gk * f.whitener;
  b = ((b + b.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("order_operator_sampled: eigensolve failed");
  }
  out.eigenvalues = es.eigenvalues();
  return out;
}

DiagonalSpectrum order_operator_diagonal(const SeriesKernel& k, const SeriesKernel& l,
                                         int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("order_operator_diagonal: n_terms >= 1");

  DiagonalSpectrum out;
  out.lambda.reserve(n_terms);
  bool all_nonzero = true;

  for (int n = 0; n < n_terms; ++n) {
    const auto ak = k.rule->coeff_exact(n);
    const auto al = l.rule->coeff_exact(n);
    if (!ak || !al) {
      throw std::domain_error(
          "order_operator_diagonal: exact coefficient unavailable at index " +
          std::to_string(n) + "; shrink n_terms to the rules' exact windows");
    }
    if (*al == Rational(0)) {
      if (*ak != Rational(0)) {
        throw std::domain_error("order_operator_diagonal: support mismatch at index " +
                                std::to_string(n) +
                                " (numerator kernel lives outside the denominator's span)");
      }
      // Both vanish: the direction is absent from both spaces; the operator
      // is null there by convention.
      out.lambda.emplace_back(0);
      all_nonzero = false;
      continue;
    }
    out.lambda.push_back(*ak / *al);
    if (out.lambda.back() == Rational(0)) all_nonzero = false;
  }

  for (const Rational& r : out.lambda) out.max_lambda = std::max(out.max_lambda, to_double(r));
  out.contractive = out.max_lambda <= 1.0;

  if (all_nonzero) {
    std::vector<Rational> inv;
    inv.reserve(out.lambda.size());
    for (const Rational& r : out.lambda) inv.push_back(Rational(1) / r);
    out.inverse = std::move(inv);
  }
  return out;
}

double isometry_check(const ExprPtr& k, const ExprPtr& l, const PointSet& pts,
                      int truncation) {
  return order_operator_sampled(k, l, pts, truncation).residual;
}

MultiplierReport multiplier_test(const std::function<Scalar(Scalar)>& phi, const ExprPtr& k,
                                 const PointSet& pts, double tol, int truncation) {
  if (!phi) throw std::invalid_argument("multiplier_test: null multiplier");
  if (!k) throw std::invalid_argument("multiplier_test: null kernel");

  const auto np = static_cast<Eigen::Index>(pts.size());
  Eigen::VectorXcd ph(np);
  for (Eigen::Index i = 0; i < np; ++i) {
    ph(i) = phi(pts[static_cast<std::size_t>(i)]);
    require_finite(ph(i), "multiplier value");
  }

  const Eigen::MatrixXcd g = gram(k, pts, truncation).entries;
  Eigen::MatrixXcd deflated(np, np);
  for (Eigen::Index i = 0; i < np; ++i) {
    for (Eigen::Index j = i; j < np; ++j) {
      deflated(i, j) = (Scalar(1.0, 0.0) - std::conj(ph(i)) * ph(j)) * g(i, j);
      if (i != j) deflated(j, i) = std::conj(deflated(i, j));
    }
    deflated(i, i) = Scalar(deflated(i, i).real(), 0.0);
  }

  MultiplierReport rep;
  rep.max_modulus = ph.cwiseAbs().maxCoeff();
  rep.witness = psd_check(deflated, tol);
  rep.contractive = rep.witness.verdict == PsdVerdict::Psd;
  return rep;
}

}  // namespace kernelab
