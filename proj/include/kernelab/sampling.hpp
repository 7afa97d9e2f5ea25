#pragma once

#include <cstdint>
#include <string>

#include "kernelab/domain.hpp"

namespace kernelab {

/// Deterministic low-discrepancy fill of the disk |z| <= R: golden-angle
/// spiral with sqrt-radial growth; the outermost points sit close to R, so
/// near-boundary behaviour is always exercised.
PointSet disk_points(int n, double radius);

/// n equally spaced points on the circle |z| = R (tagged with the enclosing
/// disk).  Vandermonde-like Gram matrices on these are well conditioned.
PointSet circle_points(int n, double radius);

/// n equispaced points strictly inside (a, b) on the real line.
PointSet interval_points(int n, double a, double b);

/// The 3^depth + 1 triadic grid points i / 3^depth on [0, 1].
PointSet triadic_points(int depth);

/// Seeded uniform random points (counter RNG; reproducible).
PointSet random_disk_points(int n, double radius, std::uint64_t seed);
PointSet random_interval_points(int n, double a, double b, std::uint64_t seed);

/// Point-set mini-grammar used by the command-line tools:
///   disk:N:rR           spiral fill of radius R
///   circle:N:rR         N-point circle of radius R
///   interval:N:a:b      N equispaced points in (a, b)
///   triadic:DEPTH       triadic grid on [0,1]
///   explicit:[v;v;...]  literal points ("re" or "re+imi"), optionally
///                       followed by :disk:R / :interval:R / :uhp / :plane /
///                       :unit to pick the domain tag (default: plane)
PointSet parse_point_set(const std::string& spec);

}  // namespace kernelab
