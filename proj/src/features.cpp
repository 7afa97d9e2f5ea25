#include "kernelab/features.hpp"

#include <cmath>
#include <stdexcept>

#include "kernelab/gram.hpp"
#include "kernelab/rng.hpp"

namespace kernelab {

namespace {

std::function<Eigen::VectorXcd(Scalar, int)> monomial_coords(const SeriesKernel& k) {
  const RulePtr rule = k.rule;
  return [rule](Scalar x, int n) {
    if (n < 1) throw std::invalid_argument("feature coords: need n >= 1");
    Eigen::VectorXcd v(n);
    Scalar p(1.0, 0.0);
    for (int j = 0; j < n; ++j) {
      v(j) = std::sqrt(rule->coeff(j)) * p;
      p *= x;
    }
    return v;
  };
}

}  // namespace

FeatureMap onb_feature(const SeriesKernel& k) {
  return {monomial_coords(k), "l2:onb", k.domain};
}

FeatureMap distributional_feature(const SeriesKernel& k) {
  return {monomial_coords(k), "dual:derivative-basis", k.domain};
}

std::pair<FeatureMap, FeatureMap> dual_pair(const SeriesKernel& k, const SeriesKernel& l) {
  FeatureMap phi{monomial_coords(k), "dual-rkhs:second", k.domain};
  FeatureMap psi{monomial_coords(l), "dual-rkhs:first", l.domain};
  return {phi, psi};
}

FeatureMap tensor_feature(const FeatureMap& a, const FeatureMap& b) {
  if (!a.coords || !b.coords) throw std::invalid_argument("tensor_feature: empty map");
  if (!(a.domain == b.domain)) {
    throw std::invalid_argument("tensor_feature: factors live on different domains");
  }
  auto ac = a.coords, bc = b.coords;
  auto coords = [ac, bc](Scalar x, int n) {
    const int m = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    const Eigen::VectorXcd u = ac(x, m);
    const Eigen::VectorXcd v = bc(x, m);
    Eigen::VectorXcd w(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      for (Eigen::Index j = 0; j < v.size(); ++j) w(i * v.size() + j) = u(i) * v(j);
    }
    return w;
  };
  return {coords, "tensor(" + a.space + "," + b.space + ")", a.domain};
}

FeatureMap direct_sum_feature(const std::vector<FeatureMap>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum_feature: no parts");
  Domain d = parts[0].domain;
  std::string tag = "direct-sum(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].coords) throw std::invalid_argument("direct_sum_feature: empty map");
    if (!(parts[i].domain == d)) {
      throw std::invalid_argument("direct_sum_feature: parts live on different domains");
    }
    tag += (i ? "," : "") + parts[i].space;
  }
  tag += ")";
  auto maps = parts;
  auto coords = [maps](Scalar x, int n) {
    const int per = std::max(1, n / static_cast<int>(maps.size()));
    std::vector<Eigen::VectorXcd> blocks;
    Eigen::Index total = 0;
    for (const auto& m : maps) {
      blocks.push_back(m.coords(x, per));
      total += blocks.back().size();
    }
    Eigen::VectorXcd out(total);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
      out.segment(at, b.size()) = b;
      at += b.size();
    }
    return out;
  };
  return {coords, tag, d};
}

Eigen::MatrixXcd feature_gram(const FeatureMap& fm, const PointSet& pts, int truncation) {
  if (!fm.coords) throw std::invalid_argument("feature_gram: empty map");
  if (truncation < 1) throw std::invalid_argument("feature_gram: truncation must be >= 1");
  const auto n = static_cast<Eigen::Index>(pts.size());
  std::vector<Eigen::VectorXcd> vecs(n);
  for (Eigen::Index i = 0; i < n; ++i) vecs[i] = fm.coords(pts[i], truncation);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (vecs[i].size() != vecs[j].size()) {
        throw std::invalid_argument("feature_gram: ragged coordinate lengths");
      }
      const Scalar v = vecs[i].dot(vecs[j]);  // conjugates the first factor
      g(i, j) = (i == j) ? Scalar(v.real(), 0.0) : v;
      if (i != j) g(j, i) = std::conj(v);
    }
  }
  return g;
}

FeatureCheck verify_feature(const FeatureMap& fm, const ExprPtr& kernel, const PointSet& pts,
                            double tol, int truncation) {
  if (!kernel) throw std::invalid_argument("verify_feature: null kernel");
  require_compatible(*kernel, pts);
  const Eigen::MatrixXcd fg = feature_gram(fm, pts, truncation);
  const Eigen::MatrixXcd kg = gram(kernel, pts).entries;
  const double dev = (fg - kg).cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

EmpiricalGram gaussian_feature(const SeriesKernel& k, const PointSet& pts, long long m,
                               std::uint64_t seed, int truncation) {
  if (m < 1) throw std::invalid_argument("gaussian_feature: sample count must be >= 1");
  const int n_terms =
      truncation > 0 ? truncation : auto_truncation(k, pts.max_abs());
  const auto np = static_cast<Eigen::Index>(pts.size());

  // Precompute sqrt(a_n) x^n per point.
  Eigen::MatrixXcd phi(n_terms, np);
  for (Eigen::Index p = 0; p < np; ++p) {
    Scalar pw(1.0, 0.0);
    for (int j = 0; j < n_terms; ++j) {
      phi(j, p) = std::sqrt(k.rule->coeff(j)) * pw;
      pw *= pts[p];
    }
  }

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(np, np);
  Eigen::VectorXcd w(np);
  Eigen::VectorXd z(n_terms);
  for (long long s = 0; s < m; ++s) {
    for (int j = 0; j < n_terms; ++j) {
      z(j) = rng::normal(seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(j));
    }
    w.noalias() = phi.transpose() * z;
    // rank-one update conj(w_i) w_j, fixed order for reproducibility
    acc.noalias() += w.conjugate() * w.transpose();
  }
  acc /= static_cast<double>(m);

  EmpiricalGram out{std::move(acc), pts, m, seed};
  return out;
}

}  // namespace kernelab
