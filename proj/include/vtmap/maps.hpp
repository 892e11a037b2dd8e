#pragma once

/// \file
/// Exponential and slit-strip maps from [0,1] onto the (semi-)infinite line.
///
/// Four maps are provided. PhiE (log x) and PhiS (slit strip) send (0,1]
/// onto (-inf, 0]. PsiE (logit) and PsiS (two-slit strip) send (0,1) onto
/// the whole real line. The slit-strip maps carry a strip half-width alpha.
///
/// Every exp(u)-1 / log(1+u) sub-expression goes through expm1/log1p, and no
/// exponential is ever taken of a positive argument of size pi/alpha. This
/// keeps the maps accurate down to alpha = 0.005.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "vtmap/detail/numeric.hpp"
#include "vtmap/errors.hpp"

namespace vtmap {

enum class MapFamily { PhiE, PhiS, PsiE, PsiS };

enum class DomainKind {
  SemiInfinite,  ///< (0,1] -> (-inf, 0]
  Infinite,      ///< (0,1) -> (-inf, inf)
};

/// Smallest usable strip half-width in double precision.
inline constexpr double kAlphaFloor = 0.005;

constexpr DomainKind domain_kind(MapFamily family) noexcept {
  return (family == MapFamily::PhiE || family == MapFamily::PhiS)
             ? DomainKind::SemiInfinite
             : DomainKind::Infinite;
}

constexpr bool has_alpha(MapFamily family) noexcept {
  return family == MapFamily::PhiS || family == MapFamily::PsiS;
}

constexpr std::string_view to_string(MapFamily family) noexcept {
  switch (family) {
    case MapFamily::PhiE: return "phi-e";
    case MapFamily::PhiS: return "phi-s";
    case MapFamily::PsiE: return "psi-e";
    case MapFamily::PsiS: return "psi-s";
  }
  return "?";
}

inline std::optional<MapFamily> parse_map_family(std::string_view tag) {
  if (tag == "phi-e") return MapFamily::PhiE;
  if (tag == "phi-s") return MapFamily::PhiS;
  if (tag == "psi-e") return MapFamily::PsiE;
  if (tag == "psi-s") return MapFamily::PsiS;
  return std::nullopt;
}

/// (alpha/pi) log(e^{pi/alpha} - 1), evaluated as 1 + (alpha/pi) log(1 - e^{-pi/alpha})
/// so that nothing overflows as alpha -> 0.
inline double gamma(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("gamma: alpha must be positive and finite");
  }
  return 1.0 + alpha / std::numbers::pi * detail::log1mexp(std::numbers::pi / alpha);
}

/// One of the four maps with its strip half-width. Immutable.
class MapInstance {
 public:
  static MapInstance phi_e() { return MapInstance(MapFamily::PhiE); }
  static MapInstance psi_e() { return MapInstance(MapFamily::PsiE); }
  static MapInstance phi_s(double alpha) { return MapInstance(MapFamily::PhiS, alpha); }
  static MapInstance psi_s(double alpha) { return MapInstance(MapFamily::PsiS, alpha); }

  /// alpha is ignored for PhiE / PsiE. For PhiS / PsiS it must be finite and
  /// at least kAlphaFloor.
  explicit MapInstance(MapFamily family, double alpha = 1.0) : family_(family) {
    if (!has_alpha(family)) return;
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("strip half-width alpha must be positive and finite");
    }
    if (alpha < kAlphaFloor) throw AlphaFloorViolation(alpha);
    alpha_ = alpha;
    scale_ = alpha / std::numbers::pi;
    // h(1) = (alpha/pi) log(1 - e^{-pi/alpha}); gamma = 1 + h(1).
    h_one_ = scale_ * detail::log1mexp(std::numbers::pi / alpha);
    gamma_ = 1.0 + h_one_;
  }

  MapFamily family() const noexcept { return family_; }
  DomainKind kind() const noexcept { return domain_kind(family_); }

  /// Strip half-width; nullopt for the unparameterised maps.
  std::optional<double> alpha() const noexcept {
    if (has_alpha(family_)) return alpha_;
    return std::nullopt;
  }

  /// Shift constant of PhiS. Zero for the other families.
  double gamma() const noexcept { return family_ == MapFamily::PhiS ? gamma_ : 0.0; }

  /// s = map(x). Strictly increasing; forward(1) = 0 on the semi-infinite
  /// maps and forward(1/2) = 0 on the infinite ones.
  double forward(double x) const {
    check_x(x);
    switch (family_) {
      case MapFamily::PhiE:
        return std::log(x);
      case MapFamily::PsiE:
        return std::log(x) - std::log1p(-x);
      case MapFamily::PhiS:
        // (alpha/pi) log(e^{pi x/alpha} - 1) - gamma = x - 1 + h(x) - h(1)
        return (x - 1.0) + (h(x) - h_one_);
      case MapFamily::PsiS:
        return (x - 0.5) + (h(x) - h(1.0 - x));
    }
    return 0.0;
  }

  /// x = map^{-1}(s).
  double inverse(double s) const {
    if (std::isnan(s)) throw DomainError("inverse: s is NaN");
    if (kind() == DomainKind::SemiInfinite && s > 0.0) {
      throw DomainError("inverse: s must be <= 0 for a semi-infinite map");
    }
    switch (family_) {
      case MapFamily::PhiE:
        return std::exp(s);
      case MapFamily::PsiE:
        if (s > 0.0) return 1.0 / (1.0 + std::exp(-s));
        return std::exp(s) / (1.0 + std::exp(s));
      case MapFamily::PhiS:
        return inverse_phi_s(s);
      case MapFamily::PsiS:
        if (s > 0.0) return 1.0 - inverse_psi_s_nonpositive(-s);
        return inverse_psi_s_nonpositive(s);
    }
    return 0.0;
  }

  /// x_L = inverse(-L). For infinite maps the right cut is 1 - x_L.
  double truncation_point(double L) const {
    if (!(L >= 0.0) || !std::isfinite(L)) {
      throw DomainError("truncation_point: L must be finite and nonnegative");
    }
    return inverse(-L);
  }

 private:
  void check_x(double x) const {
    const bool ok = kind() == DomainKind::SemiInfinite ? (x > 0.0 && x <= 1.0)
                                                       : (x > 0.0 && x < 1.0);
    if (!ok) throw DomainError("forward: x = " + std::to_string(x) + " outside the open domain");
  }

  // (alpha/pi) log(1 - e^{-pi t/alpha}), t > 0. Nonpositive, tends to 0.
  double h(double t) const { return scale_ * detail::log1mexp(t / scale_); }

  double inverse_phi_s(double s) const {
    if (s == 0.0) return 1.0;
    const double inv_scale = 1.0 / scale_;
    const double v = (s + gamma_) * inv_scale;
    if (v > 0.0) {
      // x = 1 + s + (alpha/pi) log1p(q (e^{-pi s/alpha} - 1)), q = e^{-pi/alpha}.
      const double w = -s * inv_scale;
      const double q = std::exp(-inv_scale);
      const double prod = w < 1.0 ? q * std::expm1(w) : std::exp(w - inv_scale) - q;
      return 1.0 + s + scale_ * std::log1p(prod);
    }
    if (v < -36.0) {
      // log1p(e^v) == e^v here; fold the prefactor into the exponent.
      return std::exp(v + std::log(scale_));
    }
    return scale_ * std::log1p(std::exp(v));
  }

  // s <= 0.
  double inverse_psi_s_nonpositive(double s) const {
    if (s == 0.0) return 0.5;
    const double inv_scale = 1.0 / scale_;
    const double a = (s + 0.5) * inv_scale;
    const double b = (s - 0.5) * inv_scale;
    if (a >= 0.0) {
      // x = s + 1/2 + (alpha/pi)(log1p(e^{-a}) - log1p(e^{b})), all terms >= 0.
      return (s + 0.5) + scale_ * (std::log1p(std::exp(-a)) - std::log1p(std::exp(b)));
    }
    // x = (alpha/pi) log1p(e^a (1 - e^{-pi/alpha}) / (1 + e^b))
    const double ratio = -std::expm1(-inv_scale) / (1.0 + std::exp(b));
    if (a < -36.0) return std::exp(a + std::log(scale_ * ratio));
    return scale_ * std::log1p(std::exp(a) * ratio);
  }

  MapFamily family_;
  double alpha_ = 0.0;
  double scale_ = 0.0;
  double h_one_ = 0.0;
  double gamma_ = 0.0;
};

inline double forward(const MapInstance& map, double x) { return map.forward(x); }
inline double inverse(const MapInstance& map, double s) { return map.inverse(s); }
inline double truncation_point(const MapInstance& map, double L) {
  return map.truncation_point(L);
}

}  // namespace vtmap
