#pragma once

#include <cmath>

namespace vtmap::detail {

/// log(1 + e^v) without overflow for large v or loss of the tiny result for
/// very negative v.
inline double softplus(double v) {
  if (v > 0.0) return v + std::log1p(std::exp(-v));
  return std::log1p(std::exp(v));
}

/// log(1 - e^{-u}) for u > 0 (Maechler's switch at log 2).
inline double log1mexp(double u) {
  constexpr double kLog2 = 0.69314718055994530942;
  if (u > kLog2) return std::log1p(-std::exp(-u));
  return std::log(-std::expm1(-u));
}

}  // namespace vtmap::detail
