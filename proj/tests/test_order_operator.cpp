// The operator induced by an ordered kernel pair: sampled pencil route,
// exact diagonal route, their mutual consistency, and multiplier tests.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "kernelab/order_operator.hpp"
#include "kernelab/sampling.hpp"

using namespace kernelab;

namespace {

SeriesKernel ones_disk() {
  return SeriesKernel(std::make_shared<OnesRule>(), Domain::disk(0.9));
}
SeriesKernel binom_disk(int n) {
  return SeriesKernel(std::make_shared<BinomialRule>(n), Domain::disk(0.9));
}

}  // namespace

TEST_CASE("diagonal spectra are exact rationals") {
  const DiagonalSpectrum s = order_operator_diagonal(ones_disk(), binom_disk(2), 30);
  REQUIRE(s.lambda.size() == 30);
  for (int n = 0; n < 30; ++n) {
    CHECK(s.lambda[n] == Rational(1, n + 1));
  }
  CHECK(s.contractive);
  CHECK(s.max_lambda == 1.0);
  REQUIRE(s.inverse.has_value());
  for (int n = 0; n < 30; ++n) CHECK((*s.inverse)[n] == Rational(n + 1));

  // Geometric under the cubed family: a_n = 1 against binom(n+2, 2), so
  // lambda_n = 2 / ((n+1)(n+2)).
  const DiagonalSpectrum t = order_operator_diagonal(ones_disk(), binom_disk(3), 12);
  for (int n = 0; n < 12; ++n) {
    CHECK(t.lambda[n] == Rational(2, static_cast<long long>(n + 1) * (n + 2)));
  }
}

TEST_CASE("diagonal route flags unbounded spectra and inverses") {
  // Entire exponential below the geometric family: lambda_n = n! explodes,
  // so the operator is not a contraction (its inverse is, with spectrum 1/n!).
  const SeriesKernel ent(std::make_shared<ExpRule>(), Domain::disk(0.9));
  const DiagonalSpectrum s = order_operator_diagonal(ones_disk(), ent, 9);
  CHECK_FALSE(s.contractive);
  CHECK(s.lambda[8] == Rational(40320));  // 8!
  REQUIRE(s.inverse.has_value());
  CHECK((*s.inverse)[8] == Rational(1, 40320));
}

TEST_CASE("diagonal route validates support and exactness windows") {
  const SeriesKernel stub(
      std::make_shared<FiniteListRule>(FiniteListRule::from_exact({Rational(1)})),
      Domain::whole_plane());
  CHECK_THROWS_AS(order_operator_diagonal(ones_disk(), stub, 3), std::domain_error);

  // Both coefficients zero at an index: the direction is absent, lambda = 0,
  // and no inverse exists.
  const SeriesKernel a(std::make_shared<FiniteListRule>(FiniteListRule::from_exact(
                           {Rational(1), Rational(0), Rational(2)})),
                       Domain::whole_plane());
  const SeriesKernel b(std::make_shared<FiniteListRule>(FiniteListRule::from_exact(
                           {Rational(1), Rational(0), Rational(5)})),
                       Domain::whole_plane());
  const DiagonalSpectrum s = order_operator_diagonal(a, b, 3);
  CHECK(s.lambda[1] == Rational(0));
  CHECK_FALSE(s.inverse.has_value());

  // Past the exact window of the exponential rule.
  const SeriesKernel ent(std::make_shared<ExpRule>(), Domain::disk(0.9));
  CHECK_THROWS_AS(order_operator_diagonal(ones_disk(), ent, 30), std::domain_error);
}

TEST_CASE("sampled pencil spectrum sits in the unit interval") {
  const PointSet pts = circle_points(8, 0.7);
  const SampledOrderOperator op =
      order_operator_sampled(kernels::szego(), kernels::bergman(), pts);

  CHECK(op.effective_rank == 8);
  CHECK(op.dropped == 0);
  CHECK(op.eigenvalues.minCoeff() >= -1e-10);
  CHECK(op.eigenvalues.maxCoeff() <= 1.0 + 1e-10);
  CHECK(op.residual <= 1e-9);
  CHECK(isometry_check(kernels::szego(), kernels::bergman(), pts) == op.residual);
}

TEST_CASE("sampled pencil matches a generalized eigensolver oracle") {
  const PointSet pts = circle_points(8, 0.7);
  const Eigen::MatrixXcd gk = gram(kernels::szego(), pts).entries;
  const Eigen::MatrixXcd gl = gram(kernels::bergman(), pts).entries;

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(gk, gl);
  REQUIRE(ges.info() == Eigen::Success);

  const SampledOrderOperator op =
      order_operator_sampled(kernels::szego(), kernels::bergman(), pts);
  REQUIRE(op.eigenvalues.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(op.eigenvalues(i) == doctest::Approx(ges.eigenvalues()(i)).epsilon(1e-9));
  }
}

TEST_CASE("sampled pencil matches the circulant closed form on a circle") {
  // On N equiangular points radius r both kernel matrices are circulant with
  // the same eigenvectors, so the generalized eigenvalues have the closed
  // form 1 / (t + 1 + N Q / (1 - Q)) with Q = r^{2N}: the diagonal ratios
  // 1/(t+1) folded back by aliasing.
  const int N = 8;
  const double r = 0.7;
  const PointSet pts = circle_points(N, r);
  const SampledOrderOperator op =
      order_operator_sampled(kernels::szego(), kernels::bergman(), pts);

  std::vector<double> got(op.eigenvalues.data(),
                          op.eigenvalues.data() + op.eigenvalues.size());
  std::sort(got.begin(), got.end(), std::greater<>());
  const double Q = std::pow(r, 2 * N);
  for (int t = 0; t < N; ++t) {
    const double predicted = 1.0 / (t + 1 + N * Q / (1.0 - Q));
    CHECK(std::abs(got[t] - predicted) <= 1e-10);
    CHECK(std::abs(predicted - 1.0 / (t + 1)) <= 0.05);  // aliasing is small
  }
}

TEST_CASE("identical kernels give the identity operator") {
  const PointSet pts = circle_points(6, 0.6);
  const SampledOrderOperator op =
      order_operator_sampled(kernels::szego(), kernels::szego(), pts);
  CHECK(op.residual <= 1e-12);
  for (Eigen::Index i = 0; i < op.eigenvalues.size(); ++i) {
    CHECK(op.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("multiplier certificates") {
  const PointSet pts = disk_points(12, 0.8);

  const MultiplierReport id = multiplier_test([](Scalar z) { return z; },
                                              kernels::szego(), pts);
  CHECK(id.contractive);
  CHECK(id.max_modulus <= 0.8);

  const MultiplierReport half =
      multiplier_test([](Scalar) { return Scalar(0.5, 0.0); }, kernels::szego(), pts);
  CHECK(half.contractive);

  const MultiplierReport big = multiplier_test([](Scalar z) { return 2.0 * z; },
                                               kernels::szego(), pts);
  CHECK_FALSE(big.contractive);
  CHECK(big.witness.min_eigenvalue < 0.0);
  CHECK(big.max_modulus > 1.0);

  // The refutation comes from points where |phi| exceeds 1: the deflated
  // diagonal (1 - |phi(x)|^2) K(x,x) goes negative there.
  bool negative_diag = false;
  for (Scalar z : pts.values()) {
    if (std::abs(2.0 * z) > 1.0) negative_diag = true;
  }
  CHECK(negative_diag);
}
