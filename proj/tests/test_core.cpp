// Core layer: domains, point sets, the counter RNG, dense linear algebra
// helpers, builtin kernels, series machinery, and kernel matrices.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kernelab/gram.hpp"
#include "kernelab/kernel_expr.hpp"
#include "kernelab/linalg.hpp"
#include "kernelab/rng.hpp"
#include "kernelab/sampling.hpp"
#include "kernelab/series.hpp"

using namespace kernelab;

TEST_CASE("domain membership") {
  CHECK(Domain::disk(0.9).contains({0.5, 0.5}));
  CHECK_FALSE(Domain::disk(0.9).contains({0.9, 0.0}));  // open disk
  CHECK(Domain::real_interval(0.5).contains({0.25, 0.0}));
  CHECK_FALSE(Domain::real_interval(0.5).contains({0.25, 0.01}));
  CHECK(Domain::upper_half_plane().contains({-3.0, 0.001}));
  CHECK_FALSE(Domain::upper_half_plane().contains({0.0, 0.0}));
  CHECK(Domain::unit_interval().contains({0.0, 0.0}));  // closed endpoints
  CHECK(Domain::unit_interval().contains({1.0, 0.0}));
  CHECK_FALSE(Domain::unit_interval().contains({1.0 + 1e-12, 0.0}));
  CHECK(Domain::whole_plane().contains({1e100, -1e100}));
}

TEST_CASE("domain nesting") {
  CHECK(Domain::disk(0.9).contains_domain(Domain::disk(0.5)));
  CHECK_FALSE(Domain::disk(0.5).contains_domain(Domain::disk(0.9)));
  CHECK(Domain::disk(0.9).contains_domain(Domain::real_interval(0.9)));
  CHECK(Domain::whole_plane().contains_domain(Domain::upper_half_plane()));
  CHECK_FALSE(Domain::upper_half_plane().contains_domain(Domain::disk(0.1)));
  // [0,1] is closed, so it needs a strictly larger open superset.
  CHECK(Domain::disk(1.5).contains_domain(Domain::unit_interval()));
  CHECK_FALSE(Domain::disk(1.0).contains_domain(Domain::unit_interval()));
}

TEST_CASE("point sets validate membership and distinctness") {
  CHECK_THROWS_AS(PointSet({{0.5, 0.0}, {0.5, 0.0}}, Domain::disk(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointSet({{2.0, 0.0}}, Domain::disk(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(Point({1.2, 0.0}, Domain::disk(0.9)), std::invalid_argument);

  const PointSet pts({{0.1, 0.2}, {-0.3, 0.0}}, Domain::disk(0.5));
  CHECK(pts.size() == 2);
  CHECK(pts.max_abs() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("sampling constructions and grammar") {
  const PointSet d = parse_point_set("disk:17:r0.8");
  CHECK(d.size() == 17);
  CHECK(d.max_abs() <= 0.8);
  CHECK(d.max_abs() > 0.7);  // outermost spiral point sits near the rim

  const PointSet c = parse_point_set("circle:6:r0.5");
  CHECK(c.size() == 6);
  for (Scalar z : c.values()) CHECK(std::abs(z) == doctest::Approx(0.5).epsilon(1e-14));

  const PointSet iv = parse_point_set("interval:5:-0.4:0.4");
  CHECK(iv.size() == 5);
  for (Scalar z : iv.values()) {
    CHECK(z.imag() == 0.0);
    CHECK(std::abs(z.real()) < 0.4);
  }

  const PointSet tri = parse_point_set("triadic:2");
  CHECK(tri.size() == 10);  // 3^2 + 1 grid points
  CHECK(tri[0] == Scalar(0.0, 0.0));
  CHECK(tri[9] == Scalar(1.0, 0.0));

  const PointSet ex = parse_point_set("explicit:[0.25;0.1+0.2i;-0.3-0.1i]:disk:0.5");
  CHECK(ex.size() == 3);
  CHECK(ex[1] == Scalar(0.1, 0.2));
  CHECK(ex[2] == Scalar(-0.3, -0.1));
  CHECK(ex.domain() == Domain::disk(0.5));

  CHECK_THROWS_AS(parse_point_set("hexagon:3:r0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_point_set("disk:5:0.8"), std::invalid_argument);
}

TEST_CASE("counter rng is a pure function of its arguments") {
  CHECK(rng::uniform(7, 3, 11) == rng::uniform(7, 3, 11));
  CHECK(rng::uniform(7, 3, 11) != rng::uniform(7, 3, 12));
  CHECK(rng::uniform(7, 3, 11) != rng::uniform(7, 4, 11));
  CHECK(rng::uniform(8, 3, 11) != rng::uniform(7, 3, 11));
  for (int i = 0; i < 100; ++i) {
    const double u = rng::uniform(1, 0, i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }

  const int n = 20000;
  double mean = 0.0, var = 0.0;
  for (int i = 0; i < n; ++i) mean += rng::normal(5, 9, i);
  mean /= n;
  for (int i = 0; i < n; ++i) {
    const double d = rng::normal(5, 9, i) - mean;
    var += d * d;
  }
  var /= n - 1;
  CHECK(std::abs(mean) < 0.03);      // four sigma of the sample mean
  CHECK(std::abs(var - 1.0) < 0.06);
}

TEST_CASE("pseudo inverse satisfies the Penrose identities") {
  Eigen::MatrixXcd a(4, 3);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) {
      a(i, j) = Scalar(rng::normal(2, 0, i * 3 + j), rng::normal(2, 1, i * 3 + j));
    }
  }
  const Eigen::MatrixXcd p = pseudo_inverse(a);
  CHECK((a * p * a - a).norm() <= 1e-12 * a.norm());
  CHECK((p * a * p - p).norm() <= 1e-12 * p.norm());
  CHECK(((a * p) - (a * p).adjoint()).norm() <= 1e-12);
  CHECK(((p * a) - (p * a).adjoint()).norm() <= 1e-12);
}

TEST_CASE("psd factor whitens the retained subspace") {
  Eigen::MatrixXcd b(5, 3);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 3; ++j) {
      b(i, j) = Scalar(rng::normal(3, 0, i * 3 + j), rng::normal(3, 1, i * 3 + j));
    }
  }
  const Eigen::MatrixXcd g = b * b.adjoint();  // rank 3 psd
  const PsdFactor f = psd_factor(g);
  CHECK(f.eigenvalues.size() == 3);
  CHECK(f.dropped == 2);
  const Eigen::MatrixXcd id = f.whitener.adjoint() * g * f.whitener;
  CHECK((id - Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-10);
}

TEST_CASE("builtin kernels match their closed forms") {
  const Scalar x(0.3, -0.2), y(-0.1, 0.4);

  const Scalar s = eval(*kernels::szego(), x, y);
  CHECK(std::abs(s - 1.0 / (1.0 - std::conj(x) * y)) <= 1e-15);

  // The squared kernel is defined as the literal square, so the product
  // node must reproduce it bit for bit.
  const Scalar bg = eval(*kernels::bergman(), x, y);
  CHECK(bg == s * s);
  CHECK(bg == eval(*kernels::product({kernels::szego(), kernels::szego()}), x, y));

  const Scalar ba = eval(*kernels::bargmann(), x, y);
  CHECK(std::abs(ba - std::exp(std::conj(x) * y)) <= 1e-15);

  const Scalar u(0.5, 1.0), v(-0.25, 2.0);
  const Scalar hc = eval(*kernels::half_plane_cauchy(), u, v);
  CHECK(std::abs(hc - 1.0 / (Scalar(0.0, 2.0) * (std::conj(u) - v))) <= 1e-15);
  // Diagonal 1 / (4 Im x) is positive; at x = i it equals 1/4.
  CHECK(eval(*kernels::half_plane_cauchy(), Scalar(0, 1), Scalar(0, 1)) ==
        Scalar(0.25, 0.0));

  CHECK(eval(*kernels::constant(2.5, Domain::whole_plane()), x, y) == Scalar(2.5, 0.0));
}

TEST_CASE("series partial sums, tail bounds, and automatic truncation") {
  const SeriesKernel geo(std::make_shared<OnesRule>(), Domain::disk(0.9));
  const Scalar x(0.5, 0.0);
  const Scalar exact = 1.0 / (1.0 - std::conj(x) * x);

  const Scalar p60 = series_partial_sum(geo, x, x, 60);
  const double bound = truncation_bound(geo, 0.5, 60);
  CHECK(std::abs(p60 - exact) <= bound);
  CHECK(bound < 1e-16);

  const int n = auto_truncation(geo, 0.7, 1e-12);
  CHECK(truncation_bound(geo, 0.7, n) <= 1e-12);
  CHECK(n > 10);

  // At the radius of convergence no geometric majorant exists.
  CHECK_THROWS_AS(truncation_bound(geo, 1.0, 50), std::domain_error);

  // Entire series: tiny truncations suffice on compact sets.
  const SeriesKernel ent(std::make_shared<ExpRule>(), Domain::disk(0.9));
  CHECK(auto_truncation(ent, 0.9, 1e-12) < 40);
}

TEST_CASE("series node evaluation matches the closed form") {
  const ExprPtr g3 = kernels::geometric_interval(3, 0.9);
  const Scalar x(0.3, 0.0), y(-0.2, 0.0);
  const Scalar closed = std::pow(1.0 - x.real() * y.real(), -3.0);
  CHECK(std::abs(eval(*g3, x, y) - closed) <= 2e-12);  // auto-truncation target + rounding

  // Explicit truncation reproduces the partial sum exactly.
  const SeriesKernel sk(std::make_shared<BinomialRule>(3), Domain::real_interval(0.9));
  CHECK(eval(*g3, x, y, 7) == series_partial_sum(sk, x, y, 7));
}

TEST_CASE("rkhs norms from coefficients") {
  const SeriesKernel berg(std::make_shared<BinomialRule>(2), Domain::disk(0.9));
  // f = x: single coefficient over a_1 = 2.
  CHECK(rkhs_norm({{0.0, 0.0}, {1.0, 0.0}}, berg) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  const SeriesKernel poly(std::make_shared<FiniteListRule>(std::vector<double>{1.0, 0.0}),
                          Domain::whole_plane());
  CHECK_THROWS_AS(rkhs_norm({{0.0, 0.0}, {1.0, 0.0}}, poly), std::domain_error);

  const auto sq = rkhs_norm_sq_exact({Rational(1), Rational(1)},
                                     SeriesKernel(std::make_shared<BinomialRule>(2),
                                                  Domain::disk(0.9)));
  REQUIRE(sq.has_value());
  CHECK(*sq == Rational(3, 2));  // 1/1 + 1/2
}

TEST_CASE("kernel matrices are Hermitian and positive on samples") {
  const PointSet pts = disk_points(6, 0.7);
  const GramMatrix g = gram(kernels::szego(), pts);
  for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
    CHECK(g.entries(i, i).imag() == 0.0);
    for (Eigen::Index j = 0; j < g.entries.cols(); ++j) {
      CHECK(g.entries(i, j) == std::conj(g.entries(j, i)));
    }
  }

  const PsdCertificate cert = psd_check(g);
  CHECK(cert.psd());
  CHECK(cert.min_eigenvalue > 0.0);
  CHECK(cert.witness.size() == static_cast<Eigen::Index>(pts.size()));

  Eigen::VectorXcd c(6);
  for (int i = 0; i < 6; ++i) c(i) = Scalar(rng::normal(4, 0, i), rng::normal(4, 1, i));
  CHECK(quadratic_form(g.entries, c) >= 0.0);

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = Scalar(1.0, 0.0);
  CHECK_THROWS_AS(psd_check(bad), std::invalid_argument);
}

TEST_CASE("evaluation guards domains") {
  CHECK_THROWS_AS(eval(*kernels::szego(), Scalar(1.5, 0.0), Scalar(0.0, 0.0)),
                  std::invalid_argument);
  CHECK_NOTHROW(require_compatible(*kernels::szego(),
                                   PointSet({{0.1, 0.0}}, Domain::real_interval(0.5))));
  CHECK_THROWS_AS(require_compatible(*kernels::half_plane_cauchy(), disk_points(3, 0.5)),
                  std::invalid_argument);
}
