#include "kernelab/gram.hpp"

#include <stdexcept>

namespace kernelab {

GramMatrix gram(const ExprPtr& kernel, const PointSet& pts, int truncation) {
  if (!kernel) throw std::invalid_argument("gram: null kernel");
  require_compatible(*kernel, pts);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = Scalar(eval(*kernel, pts[i], pts[i], truncation).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Scalar v = eval(*kernel, pts[i], pts[j], truncation);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return GramMatrix{std::move(g), pts, kernel};
}

PsdCertificate psd_check(const Eigen::MatrixXcd& g, double tol) {
  if (g.rows() != g.cols()) throw std::invalid_argument("psd_check: matrix not square");
  if (g.rows() == 0) throw std::invalid_argument("psd_check: empty matrix");
  if (!(tol >= 0.0)) throw std::invalid_argument("psd_check: tolerance must be >= 0");
  if (!g.allFinite()) throw std::invalid_argument("psd_check: non-finite entries");

  const double scale = g.cwiseAbs().maxCoeff();
  const double herm_dev = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-12 * (1.0 + scale)) {
    throw std::invalid_argument("psd_check: matrix is not Hermitian (deviation " +
                                std::to_string(herm_dev) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((g + g.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("psd_check: eigensolver failed to converge");
  }
  const Eigen::VectorXd ev = es.eigenvalues();
  PsdCertificate cert;
  cert.min_eigenvalue = ev.minCoeff();
  cert.spectral_radius = ev.cwiseAbs().maxCoeff();
  cert.tolerance = tol * (1.0 + cert.spectral_radius);
  cert.verdict =
      cert.min_eigenvalue >= -cert.tolerance ? PsdVerdict::Psd : PsdVerdict::NotPsd;
  Eigen::Index min_idx = 0;
  ev.minCoeff(&min_idx);
  cert.witness = es.eigenvectors().col(min_idx);
  return cert;
}

PsdCertificate psd_check(const GramMatrix& g, double tol) { return psd_check(g.entries, tol); }

double quadratic_form(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& c) {
  if (g.rows() != c.size()) throw std::invalid_argument("quadratic_form: size mismatch");
  const Scalar v = (c.adjoint() * g * c).eval()(0, 0);
  return v.real();
}

}  // namespace kernelab
