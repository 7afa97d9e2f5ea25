#include "kernelab/ktransform.hpp"

#include <cmath>
#include <stdexcept>

namespace kernelab {

DiscreteMeasure::DiscreteMeasure(PointSet pts, Eigen::VectorXcd w)
    : points(std::move(pts)), weights(std::move(w)) {
  if (static_cast<std::size_t>(weights.size()) != points.size()) {
    throw std::invalid_argument("DiscreteMeasure: weight count must match point count");
  }
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    require_finite(weights(i), "DiscreteMeasure weight");
  }
}

double energy(const DiscreteMeasure& mu, const ExprPtr& k, int truncation) {
  return quadratic_form(gram(k, mu.points, truncation).entries, mu.weights);
}

Scalar SpanFunction::operator()(Scalar y) const {
  Scalar acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < measure.weights.size(); ++i) {
    acc += measure.weights(i) *
           eval(*kernel, y, measure.points[static_cast<std::size_t>(i)], truncation);
  }
  return acc;
}

Eigen::VectorXcd SpanFunction::values(const PointSet& at) const {
  require_compatible(*kernel, at);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(at.size()));
  for (std::size_t i = 0; i < at.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = (*this)(at[i]);
  }
  return v;
}

double SpanFunction::norm() const {
  return std::sqrt(std::max(energy(measure, kernel, truncation), 0.0));
}

SpanFunction tk_apply(const DiscreteMeasure& mu, const ExprPtr& k, int truncation) {
  if (!k) throw std::invalid_argument("tk_apply: null kernel");
  require_compatible(*k, mu.points);
  return SpanFunction{mu, k, truncation};
}

KInverseResult k_inverse(const Eigen::VectorXcd& f_values, const PointSet& pts,
                         const ExprPtr& k, double span_tol, int truncation) {
  if (static_cast<std::size_t>(f_values.size()) != pts.size()) {
    throw std::invalid_argument("k_inverse: value count must match point count");
  }
  const Eigen::MatrixXcd g = gram(k, pts, truncation).entries;
  Eigen::VectorXcd w = pinv_solve(g, f_values);

  const double scale = 1.0 + f_values.norm();
  const double residual = (g * w - f_values).norm() / scale;
  return {DiscreteMeasure(pts, std::move(w)), residual, residual <= span_tol};
}

Scalar measure_pairing(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                       const ExprPtr& k, int truncation) {
  if (nu.points.size() != mu.points.size() ||
      nu.points.values() != mu.points.values() ||
      !(nu.points.domain() == mu.points.domain())) {
    throw std::invalid_argument("measure_pairing: measures must share a support set");
  }
  const Eigen::MatrixXcd g = gram(k, mu.points, truncation).entries;
  return nu.weights.dot(g * mu.weights);
}

double adjoint_residual(const DiscreteMeasure& mu, const Eigen::VectorXcd& f_values,
                        const ExprPtr& k, int truncation) {
  if (f_values.size() != mu.weights.size()) {
    throw std::invalid_argument("adjoint_residual: value count must match support size");
  }
  const Eigen::MatrixXcd g = gram(k, mu.points, truncation).entries;
  const Scalar lhs = mu.weights.dot(f_values);
  const Scalar rhs = mu.weights.dot(g * pinv_solve(g, f_values));
  return std::abs(lhs - rhs);
}

}  // namespace kernelab
