#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kernelab/domain.hpp"
#include "kernelab/kernel_expr.hpp"
#include "kernelab/series.hpp"

namespace kernelab {

/// A realization of a kernel as an inner product of coordinate vectors:
/// K(x, y) = <coords(x), coords(y)> with the pairing conjugate-linear in its
/// first slot (Eigen's dot).  `coords(x, n)` materializes the first n
/// coordinates; maps backed by finite data may return fewer.
struct FeatureMap {
  std::function<Eigen::VectorXcd(Scalar, int)> coords;
  std::string space;  // which space the coordinates describe
  Domain domain;
};

/// Coordinates sqrt(a_n) x^n of the point evaluations in the orthonormal
/// basis of the series kernel's own space.
FeatureMap onb_feature(const SeriesKernel& k);

/// The same coordinates read against the normalized derivative functionals
/// at the origin: delta^(n)/(n! sqrt(a_n)) form an orthonormal family, and
/// the point mass at x expands over them with coefficients sqrt(a_n) x^n.
FeatureMap distributional_feature(const SeriesKernel& k);

/// Dual pair of feature maps for two series kernels: the first realizes K
/// with vectors living in L's space, the second realizes L with vectors in
/// K's space.  Swapping the roles of expansion functions and receiving basis
/// is an involution - verifying one side is equivalent to verifying the
/// other on the same sample.
std::pair<FeatureMap, FeatureMap> dual_pair(const SeriesKernel& k, const SeriesKernel& l);

/// Elementwise product of coordinates (budget split as floor(sqrt(n)) per
/// factor); realizes the product kernel.
FeatureMap tensor_feature(const FeatureMap& a, const FeatureMap& b);

/// Concatenation of coordinates (budget split evenly); realizes the sum.
FeatureMap direct_sum_feature(const std::vector<FeatureMap>& parts);

/// Pairing matrix <coords(x_i), coords(x_j)> at a fixed truncation.
Eigen::MatrixXcd feature_gram(const FeatureMap& fm, const PointSet& pts, int truncation);

struct FeatureCheck {
  bool pass = false;
  double max_deviation = 0.0;
};

/// Max deviation between the feature pairing and kernel values on the
/// sample; passes when within tol.
FeatureCheck verify_feature(const FeatureMap& fm, const ExprPtr& kernel, const PointSet& pts,
                            double tol, int truncation);

/// Monte-Carlo second-moment estimate of the kernel from the Gaussian
/// process with covariance K: W_x = sum_n sqrt(a_n) x^n Z_n with Z_n iid
/// standard normals, entries (1/M) sum_s conj(W_x) W_y.  Deterministic in
/// (seed, M): variates come from a counter generator.
struct EmpiricalGram {
  Eigen::MatrixXcd entries;
  PointSet points;
  long long samples = 0;
  std::uint64_t seed = 0;
};
EmpiricalGram gaussian_feature(const SeriesKernel& k, const PointSet& pts, long long m,
                               std::uint64_t seed, int truncation = 0);

}  // namespace kernelab
