// Kernel order: coefficient comparisons, sampled Loewner tests, the power
// tower, monotone limits, and feature-map dominance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "kernelab/algebra.hpp"
#include "kernelab/ordering.hpp"
#include "kernelab/sampling.hpp"

using namespace kernelab;

namespace {

ExprPtr series_ones(double r) {
  return kernels::series(SeriesKernel(std::make_shared<OnesRule>(), Domain::disk(r)));
}
ExprPtr series_binom(int n, double r) {
  return kernels::series(SeriesKernel(std::make_shared<BinomialRule>(n), Domain::disk(r)));
}
ExprPtr series_exp(long long num, long long den, double r) {
  return kernels::series(SeriesKernel(std::make_shared<ExpRule>(num, den), Domain::disk(r)));
}
ExprPtr series_list(std::vector<Rational> coeffs) {
  // Exact entries so the comparison can decide instead of abstaining.
  return kernels::series(SeriesKernel(
      std::make_shared<FiniteListRule>(FiniteListRule::from_exact(std::move(coeffs))),
      Domain::whole_plane()));
}

}  // namespace

TEST_CASE("coefficient comparison decides closed families exactly") {
  CHECK(coefficient_dominates(series_ones(0.9), series_binom(2, 0.9)) == true);
  CHECK(coefficient_dominates(series_binom(2, 0.9), series_ones(0.9)) == false);
  CHECK(coefficient_dominates(series_binom(2, 0.9), series_binom(5, 0.9)) == true);
  CHECK(coefficient_dominates(series_exp(1, 1, 0.9), series_exp(3, 2, 0.9)) == true);
  CHECK(coefficient_dominates(series_exp(3, 2, 0.9), series_exp(1, 1, 0.9)) == false);
}

TEST_CASE("coefficient comparison on finite lists and mixed rules") {
  CHECK(coefficient_dominates(series_list({Rational(1, 2), Rational(9, 10)}),
                              series_ones(0.9)) == true);
  CHECK(coefficient_dominates(series_list({Rational(2)}), series_ones(0.9)) == false);

  // geometric above exponential: refuted at index 2 (1 > 1/2), exactly.
  CHECK(coefficient_dominates(series_ones(0.9), series_exp(1, 1, 0.9)) == false);
  // The reverse holds but the scan cannot prove a tail statement.
  CHECK_FALSE(coefficient_dominates(series_exp(1, 1, 0.9), series_ones(0.9)).has_value());
  // Closed forms carry no coefficient rule to compare.
  CHECK_FALSE(coefficient_dominates(kernels::szego(), kernels::bergman()).has_value());
}

TEST_CASE("sampled order verdicts carry witnesses and routes") {
  const PointSet pts = disk_points(10, 0.8);

  const OrderVerdict up = loewner_leq(series_ones(0.9), series_binom(2, 0.9), pts, 1e-9);
  CHECK(up.holds);
  CHECK(up.route == OrderVerdict::Route::Coefficient);  // upgraded by exact comparison

  const OrderVerdict down = loewner_leq(series_binom(2, 0.9), series_ones(0.9), pts, 1e-9);
  CHECK_FALSE(down.holds);
  CHECK(down.witness.min_eigenvalue < 0.0);
  // The witness vector realizes the negative quadratic form it certifies.
  const Eigen::MatrixXcd diff = gram(series_ones(0.9), pts).entries -
                                gram(series_binom(2, 0.9), pts).entries;
  CHECK(quadratic_form(diff, down.witness.witness) ==
        doctest::Approx(down.witness.min_eigenvalue).epsilon(1e-9));

  const OrderVerdict closed = loewner_leq(kernels::szego(), kernels::bergman(), pts, 1e-9);
  CHECK(closed.holds);
  CHECK(closed.route == OrderVerdict::Route::Sampled);  // no exact rule available
}

TEST_CASE("power tower holds for the disk kernel") {
  const PointSet pts = disk_points(12, 0.8);
  const ChainReport r = verify_chain(kernels::szego(), pts, 3, 1e-9);
  REQUIRE(r.steps.size() == 3);  // premise + two tower steps
  CHECK(r.all_hold);
  CHECK(r.diagnostic.empty());
  CHECK(r.steps[0].n == 0);
  for (const ChainStep& s : r.steps) CHECK(s.verdict.holds);
}

TEST_CASE("power tower premise fails below the constant kernel") {
  const PointSet pts = disk_points(6, 0.5);
  const ChainReport r =
      verify_chain(kernels::constant(0.5, Domain::whole_plane()), pts, 3, 1e-9);
  CHECK_FALSE(r.all_hold);
  REQUIRE(!r.steps.empty());
  CHECK_FALSE(r.steps[0].verdict.holds);
  CHECK(r.diagnostic.find("premise") != std::string::npos);
  CHECK(r.steps.size() == 1);  // no tower without its base
}

TEST_CASE("monotone partial sums converge to the kernel") {
  const PointSet pts = disk_points(8, 0.7);
  auto family = [&](int n) {
    std::vector<double> coeffs(static_cast<std::size_t>(n), 1.0);
    return kernels::series(
        SeriesKernel(std::make_shared<FiniteListRule>(std::move(coeffs)),
                     Domain::whole_plane()));
  };

  const MonotoneLimitResult res = monotone_limit(family, pts, 60, 1e-9);
  CHECK(res.status == MonotoneLimitResult::Status::Converged);
  const Eigen::MatrixXcd target = gram(kernels::szego(), pts).entries;
  CHECK((res.limit - target).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(res.sup_diag.maxCoeff() <= target.diagonal().real().maxCoeff() + 1e-12);
}

TEST_CASE("monotone powers of a diagonal above one are flagged") {
  const PointSet pts({{0.6, 0.0}}, Domain::disk(0.7));
  auto family = [&](int n) { return kernel_power(kernels::szego(), n); };

  const MonotoneLimitResult res = monotone_limit(family, pts, 30, 1e-9);
  CHECK(res.status == MonotoneLimitResult::Status::SupViolated);
  CHECK(res.diagnostic.rfind("sup-condition violated", 0) == 0);
}

TEST_CASE("non-monotone families are rejected with the failing index") {
  // Alternating between a big and a small kernel breaks monotonicity at the
  // first decreasing step.
  auto family = [&](int n) {
    return kernels::constant(n % 2 == 0 ? 1.0 : 2.0, Domain::whole_plane());
  };
  const PointSet pts({{0.1, 0.0}, {0.4, 0.0}}, Domain::disk(0.5));
  const MonotoneLimitResult res = monotone_limit(family, pts, 10, 1e-9);
  CHECK(res.status == MonotoneLimitResult::Status::NotMonotone);
  CHECK(res.diagnostic.find("not monotone at index 2") != std::string::npos);
}

TEST_CASE("feature dominance classifies induced kernels") {
  const PointSet pts = disk_points(6, 0.6);
  const SeriesKernel ones(std::make_shared<OnesRule>(), Domain::disk(0.9));
  const SeriesKernel binom(std::make_shared<BinomialRule>(2), Domain::disk(0.9));
  const int m = auto_truncation(binom, 0.6);

  CHECK(feature_dominance(onb_feature(ones), series_ones(0.9), pts, m, 1e-8) ==
        Dominance::Exact);
  CHECK(feature_dominance(onb_feature(binom), series_ones(0.9), pts, m, 1e-8) ==
        Dominance::Super);
  CHECK(feature_dominance(onb_feature(ones), series_binom(2, 0.9), pts, m, 1e-8) ==
        Dominance::Sub);
}
