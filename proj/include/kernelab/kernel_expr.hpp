#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kernelab/domain.hpp"
#include "kernelab/scalar.hpp"
#include "kernelab/series.hpp"

namespace kernelab {

struct KernelExpr;
using ExprPtr = std::shared_ptr<const KernelExpr>;

/// Closed-form base kernels.
///
/// Evaluation convention throughout: the first argument is conjugated, i.e.
/// K(x, y) = sum_n conj(f_n(x)) f_n(y) for an expansion family {f_n}.  The
/// disk kernel of the bounded-analytic space ("szego") is 1/(1 - conj(x) y),
/// its square ("bergman") is evaluated literally as that value squared so
/// that product composition reproduces it bit for bit.
enum class BuiltinKind { Szego, Bergman, Bargmann, HalfPlaneCauchy, Constant };

struct BuiltinNode {
  BuiltinKind kind;
  double constant = 1.0;  // Constant only
  Domain domain;          // Constant only; others have intrinsic domains
};

struct SeriesNode {
  SeriesKernel kernel;
};

struct SumNode {
  std::vector<ExprPtr> terms;
};

struct ProductNode {
  std::vector<ExprPtr> factors;
};

struct PowerNode {
  ExprPtr base;
  int exponent;
};

struct RestrictionNode {
  ExprPtr base;
  Domain subdomain;
};

/// Finite expansion family given by polynomial coefficient vectors;
/// K(x,y) = sum_n conj(p_n(x)) p_n(y).
struct FrameNode {
  std::vector<std::vector<Scalar>> functions;
  Domain domain;
};

/// Kernel built from a truncated series kernel whose expansion functions are
/// pushed through `depth` rounds of the subdivision transform
/// T f(x) = f(3x) + f(3x - 2).  Lives on the closed unit interval.
struct IfsNode {
  SeriesKernel base;
  int depth;
  int truncation;
};

struct KernelExpr {
  std::variant<BuiltinNode, SeriesNode, SumNode, ProductNode, PowerNode, RestrictionNode,
               FrameNode, IfsNode>
      node;
  Domain domain;  // effective domain, computed at construction
};

/// Evaluate p(x) = sum_j c_j x^j by Horner's method.
inline Scalar poly_eval(const std::vector<Scalar>& coeffs, Scalar x) {
  Scalar acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// ---- constructors -----------------------------------------------------------

namespace kernels {

ExprPtr szego();
ExprPtr bergman();
ExprPtr bargmann();
ExprPtr half_plane_cauchy();
ExprPtr constant(double c, Domain domain);

ExprPtr series(SeriesKernel k);
/// (1 - xy)^{-n} as a series kernel on the open real interval (-r, r), r <= 1.
ExprPtr geometric_interval(int n, double r);

ExprPtr sum(std::vector<ExprPtr> terms);
ExprPtr product(std::vector<ExprPtr> factors);
ExprPtr power(ExprPtr base, int exponent);
ExprPtr restriction(ExprPtr base, Domain subdomain);
ExprPtr frame(std::vector<std::vector<Scalar>> functions, Domain domain);
ExprPtr ifs(SeriesKernel base, int depth, int truncation);

}  // namespace kernels

// ---- evaluation -------------------------------------------------------------

/// Evaluate K(x, y).  `truncation` caps series / frame / subdivision sums;
/// 0 requests the automatic choice (tail bound <= 1e-12 at the points' radius)
/// and is ignored by closed forms.  Values are validated finite on return.
Scalar eval(const KernelExpr& k, Scalar x, Scalar y, int truncation = 0);

/// Tag-checked evaluation: the points' domains must sit inside the kernel's.
Scalar eval(const KernelExpr& k, const Point& x, const Point& y, int truncation = 0);

/// True when every point of the set may be fed to the kernel.
void require_compatible(const KernelExpr& k, const PointSet& pts);

/// Best available truncation-tail bound for evaluations at modulus <= r_eff.
/// Closed forms and finite frames report 0; series report their tail bound.
double eval_tail_bound(const KernelExpr& k, double r_eff, int truncation);

}  // namespace kernelab
