#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kernelab/features.hpp"
#include "kernelab/gram.hpp"

namespace kernelab {

/// Outcome of a sampled kernel-order test K <= L (meaning L - K positive
/// definite).  `holds == false` is a finite refutation: the witness vector
/// realizes a negative quadratic form on the sample.  `holds == true` is
/// evidence on the sample unless `route == Coefficient`, in which case the
/// order was also decided exactly from the series coefficients.
struct OrderVerdict {
  enum class Route { Sampled, Coefficient };
  bool holds = false;
  Route route = Route::Sampled;
  PsdCertificate witness;
  PointSet sample;
};

/// Exact coefficient comparison for diagonal series kernels: a_k(K) <= a_k(L)
/// for all k forces K <= L.  Returns nullopt when the rules cannot be
/// compared exactly (proof needs a tail argument the rules do not offer);
/// false only on a verified violated index.
std::optional<bool> coefficient_dominates(const ExprPtr& k, const ExprPtr& l);

OrderVerdict loewner_leq(const ExprPtr& k, const ExprPtr& l, const PointSet& pts,
                         double tol = 1e-9);

/// The tower 1 <= K <= K^2 <= ... <= K^{n_max} tested on a sample.  The
/// premise 1 <= K is step n = 0; step n compares K^n against K^{n+1}.
/// Hadamard powers of the base Gram make the sampled matrices, so step
/// values agree bit for bit with power-node evaluation.
struct ChainStep {
  int n = 0;
  OrderVerdict verdict;
};
struct ChainReport {
  std::vector<ChainStep> steps;
  bool all_hold = false;
  std::string diagnostic;  // set when the premise fails
};
ChainReport verify_chain(const ExprPtr& k, const PointSet& pts, int n_max, double tol = 1e-9);

/// Monotone families K_1 <= K_2 <= ... probed on a sample.  The family
/// converges to a kernel iff the diagonal suprema are finite; a diagonal
/// whose growth exceeds 1e6 across the probed range, or whose increments
/// keep growing geometrically, is flagged as violating that condition.
struct MonotoneLimitResult {
  enum class Status { Converged, SupViolated, NotMonotone };
  Status status = Status::Converged;
  Eigen::MatrixXcd limit;        // last partial kernel matrix on pts
  Eigen::VectorXd sup_diag;      // largest observed diagonal per point
  double last_increment = 0.0;   // max |K_N - K_{N-1}| over pts x pts
  std::string diagnostic;
};
MonotoneLimitResult monotone_limit(const std::function<ExprPtr(int)>& family,
                                   const PointSet& pts, int n_terms, double tol = 1e-9);

/// Classify a feature map's induced kernel against K on a sample:
/// Exact (both differences psd within tol), Super (feature Gram dominates),
/// Sub (K dominates), or Incomparable.
enum class Dominance { Exact, Super, Sub, Incomparable };
Dominance feature_dominance(const FeatureMap& fm, const ExprPtr& k, const PointSet& pts,
                            int truncation, double tol = 1e-9);

}  // namespace kernelab
