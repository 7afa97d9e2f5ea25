#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernelab/scalar.hpp"

namespace kernelab {

/// Where a kernel lives.  Evaluation is only defined for points whose domain
/// is contained in the kernel's domain, and every point is validated against
/// its own tag on construction.
///
/// * RealInterval(r): open interval (-r, r) on the real axis.
/// * ComplexDisk(r):  open disk |z| < r.
/// * UpperHalfPlane:  Im z > 0.
/// * WholePlane:      any finite z.
/// * UnitInterval:    the closed interval [0, 1]; closed because the
///   iterated-function-system machinery needs both endpoints.
enum class DomainKind { RealInterval, ComplexDisk, UpperHalfPlane, WholePlane, UnitInterval };

struct Domain {
  DomainKind kind = DomainKind::WholePlane;
  double radius = 0.0;  // only meaningful for RealInterval / ComplexDisk

  static Domain real_interval(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("Domain: interval radius must be positive");
    return {DomainKind::RealInterval, r};
  }
  static Domain disk(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("Domain: disk radius must be positive");
    return {DomainKind::ComplexDisk, r};
  }
  static Domain upper_half_plane() { return {DomainKind::UpperHalfPlane, 0.0}; }
  static Domain whole_plane() { return {DomainKind::WholePlane, 0.0}; }
  static Domain unit_interval() { return {DomainKind::UnitInterval, 0.0}; }

  bool contains(Scalar z) const {
    if (!is_finite(z)) return false;
    switch (kind) {
      case DomainKind::RealInterval:
        return z.imag() == 0.0 && std::abs(z.real()) < radius;
      case DomainKind::ComplexDisk:
        return std::abs(z) < radius;
      case DomainKind::UpperHalfPlane:
        return z.imag() > 0.0;
      case DomainKind::WholePlane:
        return true;
      case DomainKind::UnitInterval:
        return z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= 1.0;
    }
    return false;
  }

  /// Sub-domain relation used for evaluation compatibility.  Conservative:
  /// only relations we actually rely on are encoded.
  bool contains_domain(const Domain& other) const {
    if (kind == DomainKind::WholePlane) return true;
    switch (other.kind) {
      case DomainKind::RealInterval:
        return (kind == DomainKind::RealInterval && other.radius <= radius) ||
               (kind == DomainKind::ComplexDisk && other.radius <= radius);
      case DomainKind::ComplexDisk:
        return kind == DomainKind::ComplexDisk && other.radius <= radius;
      case DomainKind::UpperHalfPlane:
        return kind == DomainKind::UpperHalfPlane;
      case DomainKind::UnitInterval:
        // [0,1] sits inside (-r,r) or |z|<r only for r strictly above 1.
        return kind == DomainKind::UnitInterval ||
               ((kind == DomainKind::RealInterval || kind == DomainKind::ComplexDisk) &&
                radius > 1.0);
      case DomainKind::WholePlane:
        return false;
    }
    return false;
  }

  std::string name() const {
    switch (kind) {
      case DomainKind::RealInterval: return "interval";
      case DomainKind::ComplexDisk: return "disk";
      case DomainKind::UpperHalfPlane: return "half-plane";
      case DomainKind::WholePlane: return "plane";
      case DomainKind::UnitInterval: return "unit-interval";
    }
    return "?";
  }

  bool operator==(const Domain& o) const { return kind == o.kind && radius == o.radius; }
};

/// A domain-tagged evaluation point.  Construction validates membership, so
/// anything holding a Point may assume it is admissible.
struct Point {
  Scalar value;
  Domain domain;

  Point(Scalar v, Domain d) : value(v), domain(d) {
    if (!d.contains(v)) {
      throw std::invalid_argument("Point: value outside tagged domain (" + d.name() + ")");
    }
  }
};

/// Finite ordered list of pairwise-distinct points sharing one domain tag.
class PointSet {
 public:
  PointSet(std::vector<Scalar> values, Domain domain) : domain_(domain) {
    if (values.empty()) throw std::invalid_argument("PointSet: empty");
    for (Scalar v : values) {
      if (!domain.contains(v)) {
        throw std::invalid_argument("PointSet: point outside domain (" + domain.name() + ")");
      }
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        if (values[i] == values[j]) {
          throw std::invalid_argument("PointSet: points must be pairwise distinct");
        }
      }
    }
    values_ = std::move(values);
  }

  std::size_t size() const { return values_.size(); }
  Scalar operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Scalar>& values() const { return values_; }
  const Domain& domain() const { return domain_; }
  Point point(std::size_t i) const { return Point(values_[i], domain_); }

  /// Largest modulus over the set; the effective radius for truncation bounds.
  double max_abs() const {
    double m = 0.0;
    for (Scalar v : values_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::vector<Scalar> values_;
  Domain domain_;
};

}  // namespace kernelab
