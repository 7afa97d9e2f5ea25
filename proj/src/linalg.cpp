#include "kernelab/linalg.hpp"

#include <stdexcept>

namespace kernelab {

namespace {

Eigen::JacobiSVD<Eigen::MatrixXcd> svd_of(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) throw std::invalid_argument("pseudo_inverse: empty matrix");
  if (!a.allFinite()) throw std::invalid_argument("pseudo_inverse: non-finite entries");
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

}  // namespace

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, double rcond) {
  const auto svd = svd_of(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cut = rcond * (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut && s(i) > 0.0) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Eigen::VectorXcd pinv_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                            double rcond) {
  if (a.rows() != b.size()) throw std::invalid_argument("pinv_solve: size mismatch");
  const auto svd = svd_of(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cut = rcond * (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXcd y = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    y(i) = (s(i) > cut && s(i) > 0.0) ? y(i) / s(i) : Eigen::dcomplex(0.0, 0.0);
  }
  return svd.matrixV() * y;
}

PsdFactor psd_factor(const Eigen::MatrixXcd& g, double floor_rel) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((g + g.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("psd_factor: eigensolver failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  const double lam_max = ev(ev.size() - 1);
  if (!(lam_max > 0.0)) {
    throw std::domain_error("psd_factor: matrix has no positive spectrum");
  }
  const double floor = floor_rel * lam_max;
  Eigen::Index first = 0;
  while (first < ev.size() && ev(first) < floor) ++first;
  const Eigen::Index r = ev.size() - first;
  if (r == 0) throw std::domain_error("psd_factor: all eigenvalues below floor");

  PsdFactor out;
  out.dropped = static_cast<int>(first);
  out.eigenvalues = ev.tail(r);
  out.basis = es.eigenvectors().rightCols(r);
  out.whitener = out.basis * out.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal();
  return out;
}

}  // namespace kernelab
