// Dual side: derivative functionals, their exact orthonormality, action on
// polynomials, point-mass expansions, and dual norms.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "kernelab/dual_space.hpp"
#include "kernelab/rng.hpp"
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

TEST_CASE("derivative functionals are exactly orthonormal") {
  for (int n = 0; n <= 12; ++n) {
    for (int m = 0; m <= 12; ++m) {
      const Rational want(n == m ? 1 : 0);
      CHECK(dual_pairing_exact(ones_disk(), n, m) == want);
      CHECK(dual_pairing_exact(binom_disk(2), n, m) == want);
      CHECK(dual_pairing_exact(binom_disk(3), n, m) == want);
    }
  }
  // Entire family, inside the exact coefficient window.
  const SeriesKernel ent(std::make_shared<ExpRule>(), Domain::disk(0.9));
  for (int n = 0; n <= 8; ++n) {
    CHECK(dual_pairing_exact(ent, n, n) == Rational(1));
    CHECK(dual_pairing_exact(ent, n, n + 1) == Rational(0));
  }
  CHECK(dual_pairing(ones_disk(), 4, 4) == Scalar(1.0, 0.0));
  CHECK(dual_pairing(ones_disk(), 4, 5) == Scalar(0.0, 0.0));
}

TEST_CASE("orthonormality from first principles via representers") {
  // D_n has representer g_n(y) = a_n n! y^n / (n! sqrt(a_n)) = sqrt(a_n) y^n;
  // the space's inner product of monomial coefficient vectors is
  // sum_k conj(c_k) d_k / a_k.  Recomputing the pairing that way must give
  // the same delta table.
  const SeriesKernel k = binom_disk(2);
  for (int n = 0; n <= 8; ++n) {
    for (int m = 0; m <= 8; ++m) {
      const double an = k.rule->coeff(n);
      const double am = k.rule->coeff(m);
      // <g_n, g_m> = delta_nm * sqrt(a_n) sqrt(a_m) / a_n
      const double inner =
          (n == m) ? std::sqrt(an) * std::sqrt(am) / an : 0.0;
      const Scalar got = dual_pairing(k, n, m);
      CHECK(std::abs(got - inner) <= 1e-15);
    }
  }
}

TEST_CASE("pairing rejects indices outside the series support") {
  const SeriesKernel poly(
      std::make_shared<FiniteListRule>(std::vector<double>{1.0, 0.0, 3.0}),
      Domain::whole_plane());
  CHECK(dual_pairing_exact(poly, 2, 2) == Rational(1));
  CHECK_THROWS_AS(dual_pairing_exact(poly, 1, 1), std::domain_error);
  CHECK_THROWS_AS(dual_pairing_exact(poly, 5, 5), std::domain_error);
}

TEST_CASE("distribution elements act on polynomial coefficients") {
  // D_2 applied to t^2 for the geometric rule: p_2 / sqrt(a_2) = 1.
  const DistributionElement d2 = DistributionElement::basis(2);
  CHECK(apply_distribution(d2, {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, ones_disk()) ==
        Scalar(1.0, 0.0));

  // D_0 applied to the constant 7.
  CHECK(apply_distribution(DistributionElement::basis(0), {{7.0, 0.0}}, ones_disk()) ==
        Scalar(7.0, 0.0));

  // Against a_1 = 2 the first derivative picks up 1/sqrt(2).
  const Scalar v =
      apply_distribution(DistributionElement::basis(1), {{0.0, 0.0}, {1.0, 0.0}},
                         binom_disk(2));
  CHECK(std::abs(v - 1.0 / std::sqrt(2.0)) <= 1e-16);

  // Combinations are linear: (2 D_0 + i D_1) p.
  const DistributionElement mix({{2.0, 0.0}, {0.0, 1.0}});
  const Scalar got = apply_distribution(mix, {{3.0, 0.0}, {5.0, 0.0}}, ones_disk());
  CHECK(got == Scalar(6.0, 5.0));

  // Kernel sections: coefficients of K(., y) are a_k y^k, and D_n extracts
  // sqrt(a_n) y^n -- the coordinates of the point mass at y.
  const SeriesKernel berg = binom_disk(2);
  const double y = 0.37;
  std::vector<Scalar> section(10);
  for (int j = 0; j < 10; ++j) section[j] = berg.rule->coeff(j) * std::pow(y, j);
  for (int n = 0; n < 10; ++n) {
    const Scalar want = std::sqrt(berg.rule->coeff(n)) * std::pow(y, n);
    const Scalar have =
        apply_distribution(DistributionElement::basis(n), section, berg);
    CHECK(std::abs(have - want) <= 1e-14);
  }
}

TEST_CASE("point-mass expansion reproduces polynomials beneath the order") {
  for (int t = 0; t < 25; ++t) {
    std::vector<Scalar> p(7);
    for (int j = 0; j < 7; ++j) {
      p[j] = Scalar(2.0 * rng::uniform(11, 0, t * 16 + j) - 1.0,
                    2.0 * rng::uniform(11, 1, t * 16 + j) - 1.0);
    }
    const double x = 2.0 * rng::uniform(11, 2, t) - 1.0;

    const DeltaExpansion e = delta_expand(Scalar(x, 0.0), 9, p);
    CHECK_FALSE(e.truncated);
    CHECK(e.residual == 0.0);

    // Plain power-sum evaluation, a different association order.
    Scalar direct(0.0, 0.0), pw(1.0, 0.0);
    for (int j = 0; j < 7; ++j) {
      direct += p[j] * pw;
      pw *= x;
    }
    CHECK(std::abs(e.value - direct) <= 1e-13);
  }
}

TEST_CASE("point-mass expansion reports its truncation honestly") {
  std::vector<Scalar> p(6, Scalar(0.0, 0.0));
  p[5] = Scalar(1.0, 0.0);  // t^5
  const DeltaExpansion e = delta_expand(Scalar(0.5, 0.0), 4, p);
  CHECK(e.truncated);
  CHECK(e.value == Scalar(0.0, 0.0));                   // head of t^5 is empty
  CHECK(e.residual == doctest::Approx(std::pow(0.5, 5)).epsilon(1e-12));

  // Trailing zero coefficients do not count toward the degree.
  std::vector<Scalar> low(9, Scalar(0.0, 0.0));
  low[1] = Scalar(2.0, 0.0);
  CHECK_FALSE(delta_expand(Scalar(0.5, 0.0), 3, low).truncated);
}

TEST_CASE("dual norms equal the section norms") {
  const PointSet pts({{0.0, 0.0}, {0.5, 0.0}}, Domain::disk(0.9));
  const double nrm = dirac_norm({{1.0, 0.0}, {-1.0, 0.0}}, pts, kernels::szego());
  // ||delta_0 - delta_{1/2}||^2 = K(0,0) - 2 Re K(0, .5) + K(.5, .5) = 1/3.
  CHECK(nrm == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));

  const double zero = dirac_norm({{1.0, 0.0}, {-1.0, 0.0}}, pts,
                                 kernels::constant(1.0, Domain::whole_plane()));
  CHECK(zero == 0.0);  // the two point masses collide in a constant space
}
