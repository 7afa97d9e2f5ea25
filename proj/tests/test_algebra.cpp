// Closure operations: sums, products, powers, scaling, frame kernels, and
// the minimal-decomposition norm of the sum space.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "kernelab/algebra.hpp"
#include "kernelab/gram.hpp"
#include "kernelab/rng.hpp"
#include "kernelab/sampling.hpp"

using namespace kernelab;

namespace {

SeriesKernel ones_on(double r) {
  return SeriesKernel(std::make_shared<OnesRule>(), Domain::real_interval(r));
}

}  // namespace

TEST_CASE("combine: sum, product, scale agree with pointwise arithmetic") {
  const Scalar x(0.3, -0.2), y(-0.1, 0.4);
  const Scalar s = eval(*kernels::szego(), x, y);
  const Scalar b = eval(*kernels::bargmann(), x, y);

  const ExprPtr sum = combine(CombineOp::Sum, {kernels::szego(), kernels::bargmann()});
  CHECK(eval(*sum, x, y) == s + b);

  const ExprPtr prod = combine(CombineOp::Product, {kernels::szego(), kernels::bargmann()});
  CHECK(eval(*prod, x, y) == s * b);

  const ExprPtr scaled = combine(CombineOp::Scale, {kernels::szego()}, 2.5);
  CHECK(eval(*scaled, x, y) == 2.5 * s);

  CHECK_THROWS_AS(combine(CombineOp::Scale, {kernels::szego()}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("products of series kernels collapse to closed families") {
  const ExprPtr p =
      combine(CombineOp::Product,
              {kernels::series(ones_on(0.8)), kernels::series(ones_on(0.8))});
  const SeriesNode* sn = std::get_if<SeriesNode>(&p->node);
  REQUIRE(sn != nullptr);
  CHECK(sn->kernel.rule->name() == "binomial");
  CHECK(sn->kernel.rule->coeff(3) == 4.0);  // binom(4, 3)

  // Exponential rates add.
  const auto e1 = std::make_shared<ExpRule>(1);
  const auto e2 = std::make_shared<ExpRule>(2);
  const ExprPtr pe = combine(
      CombineOp::Product, {kernels::series(SeriesKernel(e1, Domain::real_interval(0.5))),
                           kernels::series(SeriesKernel(e2, Domain::real_interval(0.5)))});
  const SeriesNode* en = std::get_if<SeriesNode>(&pe->node);
  REQUIRE(en != nullptr);
  CHECK(en->kernel.rule->name() == "exponential");
  CHECK(*en->kernel.rule->coeff_exact(1) == Rational(3));

  // Mixed families fall back to coefficient convolution.
  const ExprPtr pc = combine(
      CombineOp::Product,
      {kernels::series(ones_on(0.5)),
       kernels::series(SeriesKernel(std::make_shared<ExpRule>(1), Domain::real_interval(0.5)))});
  const SeriesNode* cn = std::get_if<SeriesNode>(&pc->node);
  REQUIRE(cn != nullptr);
  CHECK(cn->kernel.rule->name() == "product-series");
  CHECK(cn->kernel.rule->coeff(2) == 2.5);  // 1 + 1 + 1/2
}

TEST_CASE("kernel powers") {
  // Closed-form base: iterated product, bit-identical with the square.
  const Scalar x(0.25, 0.1), y(0.3, -0.3);
  const Scalar s = eval(*kernels::szego(), x, y);
  CHECK(eval(*kernel_power(kernels::szego(), 2), x, y) == s * s);
  CHECK(eval(*kernel_power(kernels::szego(), 2), x, y) == eval(*kernels::bergman(), x, y));

  // Series base: exponents multiply within the closed family.
  const ExprPtr pw = kernel_power(kernels::series(ones_on(0.8)), 3);
  const SeriesNode* sn = std::get_if<SeriesNode>(&pw->node);
  REQUIRE(sn != nullptr);
  CHECK(*sn->kernel.rule->coeff_exact(4) == Rational(15));  // binom(6, 4)

  const ExprPtr base = kernels::szego();
  CHECK(kernel_power(base, 1) == base);  // first power is the same node
  CHECK_THROWS_AS(kernel_power(base, 0), std::invalid_argument);
}

TEST_CASE("frame kernels evaluate their expansion functions") {
  // functions 1 and t: K(x, y) = 1 + conj(x) y.
  const ExprPtr fk = kernel_from_frame({{Scalar(1.0, 0.0)}, {Scalar(0.0, 0.0), Scalar(1.0, 0.0)}},
                                       Domain::disk(0.9));
  const Scalar x(0.2, 0.3), y(-0.4, 0.1);
  CHECK(std::abs(eval(*fk, x, y) - (1.0 + std::conj(x) * y)) <= 1e-15);
  CHECK(psd_check(gram(fk, disk_points(5, 0.8))).psd());

  // count = 1 keeps only the constant function.
  const ExprPtr f1 = kernel_from_frame({{Scalar(1.0, 0.0)}, {Scalar(0.0, 0.0), Scalar(1.0, 0.0)}},
                                       Domain::disk(0.9), 1);
  CHECK(eval(*f1, x, y) == Scalar(1.0, 0.0));
}

TEST_CASE("section values are the kernel matrix acting on weights") {
  const PointSet pts = disk_points(4, 0.6);
  const GramMatrix g = gram(kernels::szego(), pts);
  Eigen::VectorXcd d(4);
  for (int i = 0; i < 4; ++i) d(i) = Scalar(rng::normal(6, 0, i), rng::normal(6, 1, i));

  const Eigen::VectorXcd v = section_values(g, d);
  for (Eigen::Index i = 0; i < 4; ++i) {
    Scalar acc(0.0, 0.0);
    for (Eigen::Index j = 0; j < 4; ++j) acc += g.entries(i, j) * d(j);
    CHECK(std::abs(v(i) - acc) <= 1e-14 * std::abs(acc));
  }
}

TEST_CASE("sum-space norm: equal kernels halve the energy") {
  // With K1 = K2 = K the optimal split is F/2 + F/2, so the squared norm of
  // F = sum_j d_j K(., x_j) drops from d* G d to half of it.
  const PointSet pts = disk_points(3, 0.5);
  const GramMatrix g = gram(kernels::szego(), pts);
  Eigen::VectorXcd d(3);
  for (int i = 0; i < 3; ++i) d(i) = Scalar(rng::normal(7, 0, i), rng::normal(7, 1, i));
  const Eigen::VectorXcd f = g.entries * d;

  const double nrm = sum_rkhs_norm(f, pts, kernels::szego(), kernels::szego());
  const double direct = 0.5 * quadratic_form(g.entries, d);
  CHECK(nrm * nrm == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("sum-space norm: stationarity of the optimal decomposition") {
  // Independent route to the minimum: solve the stationarity equation
  // G1^{-1} f1 = G2^{-1} (f - f1) for the optimal first part, evaluate the
  // split energy there, and probe nearby splits for convexity.
  const PointSet pts = disk_points(3, 0.5);
  const Eigen::MatrixXcd g1 = gram(kernels::szego(), pts).entries;
  const Eigen::MatrixXcd g2 = gram(kernels::bergman(), pts).entries;

  Eigen::VectorXcd d(3);
  for (int i = 0; i < 3; ++i) d(i) = Scalar(rng::normal(8, 0, i), rng::normal(8, 1, i));
  const Eigen::VectorXcd f = (g1 + g2) * d;

  const Eigen::MatrixXcd a = g1.inverse();
  const Eigen::MatrixXcd b = g2.inverse();
  const Eigen::VectorXcd f1 = (a + b).inverse() * (b * f);
  auto split_energy = [&](const Eigen::VectorXcd& part) {
    const Eigen::VectorXcd rest = f - part;
    return (part.dot(a * part) + rest.dot(b * rest)).real();
  };

  const double nrm = sum_rkhs_norm(f, pts, kernels::szego(), kernels::bergman());
  CHECK(nrm * nrm == doctest::Approx(split_energy(f1)).epsilon(1e-9));

  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXcd delta(3);
    for (int i = 0; i < 3; ++i) {
      delta(i) = 0.01 * Scalar(rng::normal(9, t, i), rng::normal(9, t + 100, i));
    }
    CHECK(split_energy(f1 + delta) >= nrm * nrm - 1e-12);
  }
}

TEST_CASE("sum-space norm rejects values outside the joint span") {
  const PointSet pts({{0.1, 0.0}, {0.2, 0.0}}, Domain::disk(0.5));
  const ExprPtr one = kernels::constant(1.0, Domain::disk(0.5));
  Eigen::VectorXcd f(2);
  f << Scalar(1.0, 0.0), Scalar(-1.0, 0.0);  // orthogonal to the constant span
  CHECK_THROWS_AS(sum_rkhs_norm(f, pts, one, one), std::domain_error);
}
