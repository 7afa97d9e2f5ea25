#pragma once

#include <Eigen/Dense>

#include "kernelab/gram.hpp"
#include "kernelab/linalg.hpp"

namespace kernelab {

/// Finite atomic measure  mu = sum_i w_i delta_{x_i}.  Everything the
/// measure enters (energy, transforms, pairings) reduces to Gram algebra on
/// its support, which is why atoms are the only measures carried.
struct DiscreteMeasure {
  PointSet points;
  Eigen::VectorXcd weights;

  DiscreteMeasure(PointSet pts, Eigen::VectorXcd w);
};

/// Energy form  w* G w  with G the kernel matrix on the support; real and
/// nonnegative up to rounding, and equal to the squared norm of the
/// measure's image in the kernel's space.
double energy(const DiscreteMeasure& mu, const ExprPtr& k, int truncation = 0);

/// Image of a measure in the kernel's function space:
/// F(y) = sum_i w_i K(y, x_i).  The weights pair with the second kernel
/// slot so that ||F||^2 = w* G w = energy(mu) holds for complex weights too
/// (the first-slot pairing only agrees on real domains).
struct SpanFunction {
  DiscreteMeasure measure;
  ExprPtr kernel;
  int truncation = 0;

  Scalar operator()(Scalar y) const;
  Eigen::VectorXcd values(const PointSet& at) const;
  double norm() const;  // sqrt(energy(measure, kernel))
};
SpanFunction tk_apply(const DiscreteMeasure& mu, const ExprPtr& k, int truncation = 0);

/// Minimum-norm weights reproducing the sampled values of a function
/// intended to lie in span{K(., x_i)}: w = G^+ f.  `in_span` is cleared,
/// with the relative least-squares residual reported, when the values are
/// not consistent with the span (the warning of the generalized-inverse
/// route; no exception, since near-singular Grams make this a judgement
/// call for the caller).
struct KInverseResult {
  DiscreteMeasure measure;
  double residual = 0.0;  // ||G w - f|| / (1 + ||f||)
  bool in_span = false;
};
KInverseResult k_inverse(const Eigen::VectorXcd& f_values, const PointSet& pts,
                         const ExprPtr& k, double span_tol = 1e-8, int truncation = 0);

/// Measure-space pairing  <nu, mu> = nu* G mu  for two measures sharing a
/// support set.
Scalar measure_pairing(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                       const ExprPtr& k, int truncation = 0);

/// Residual of the adjoint identity  <T mu, f> = <mu, G^+ f>  with both
/// sides reduced to the sample: the left side is  mu* f  (reproducing
/// property applied to the span values), the right is  mu* G (G^+ f).
/// Zero exactly when f lies in the sampled span and G G^+ acts as the
/// identity there.
double adjoint_residual(const DiscreteMeasure& mu, const Eigen::VectorXcd& f_values,
                        const ExprPtr& k, int truncation = 0);

}  // namespace kernelab
