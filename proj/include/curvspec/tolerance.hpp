#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "curvspec/error.hpp"

namespace curvspec {

inline constexpr double kDefaultIntegralityTolerance = 1e-6;

namespace detail {
inline std::atomic<double>& integrality_tolerance_slot() {
  static std::atomic<double> tol{kDefaultIntegralityTolerance};
  return tol;
}
}  // namespace detail

/// Process-wide tolerance used when rounding character and phase sums.
inline double integrality_tolerance() { return detail::integrality_tolerance_slot().load(); }

inline void set_integrality_tolerance(double tol) {
  if (!(tol > 0.0) || !(tol < 0.5)) throw DomainError("integrality tolerance must lie in (0, 0.5)");
  detail::integrality_tolerance_slot().store(tol);
}

/// Rounds a complex sum that is provably an integer; throws IntegralityError otherwise.
inline std::int64_t round_integral(std::complex<double> z, const std::string& what) {
  const double tol = integrality_tolerance();
  const double r = std::round(z.real());
  if (std::abs(z.real() - r) >= tol || std::abs(z.imag()) >= tol) {
    throw IntegralityError(what + ": value (" + std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ") is not within tolerance of an integer");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace curvspec
