#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kernelab {

/// All kernel values and expansion coefficients are complex doubles.
using Scalar = std::complex<double>;

/// Exact fraction type used where results are claimed exactly (coefficient
/// identities, orthonormality of dual pairings, diagonal operator spectra).
/// Overflow safety is handled by the producers: coefficient rules refuse to
/// emit exact values outside their documented index windows.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_finite(Scalar z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Guard used at API boundaries: most downstream linear algebra silently
/// propagates NaN, so we fail loudly at the point of entry instead.
inline void require_finite(Scalar z, const char* what) {
  if (!is_finite(z)) {
    throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

}  // namespace kernelab
