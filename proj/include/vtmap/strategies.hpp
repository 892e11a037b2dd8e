#pragma once

/// \file
/// (alpha, L) as functions of the degree n, and the predicted error envelope
/// C^{-n^index} for each schedule.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "vtmap/approximant.hpp"
#include "vtmap/errors.hpp"
#include "vtmap/maps.hpp"

namespace vtmap {

/// alpha fixed, L = c n^exponent. exponent is 2/3 on the semi-infinite maps
/// and 1/2 on the infinite ones. alpha is ignored for PhiE / PsiE.
struct FixedAlphaGrowingL {
  double alpha = 1.0;
  double c = 1.0;
  std::optional<double> exponent;  ///< nullopt: take the map's own exponent
};

/// alpha = alpha0 / sqrt(n); L = 1 + L0 (PhiS) or 1/2 + L0 (PsiS).
struct FixedLShrinkingAlpha {
  double alpha0 = 1.0;
  double L0 = 0.2;
};

/// alpha = sigma |log eps| n^{p-2}; L = 1 + sigma^2 n^{2p-2} (PhiS) or
/// sqrt(1/4 + sigma^2 n^{2p-2}) (PsiS).
struct ToleranceDriven {
  double sigma = 3.5;
  double p = 2.0 / 3.0;
  double epsilon = 0x1p-52;
};

using ParameterRegime = std::variant<FixedAlphaGrowingL, FixedLShrinkingAlpha, ToleranceDriven>;

inline std::string_view regime_tag(const ParameterRegime& regime) {
  switch (regime.index()) {
    case 0: return "grow-l";
    case 1: return "fixed-l";
    default: return "tolerance";
  }
}

/// Exponent of n in L = c n^e for growing-L schedules.
constexpr double growth_exponent(MapFamily family) noexcept {
  return domain_kind(family) == DomainKind::SemiInfinite ? 2.0 / 3.0 : 0.5;
}

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + " must be positive and finite");
  }
}

inline void validate(const ParameterRegime& regime, MapFamily family) {
  if (const auto* g = std::get_if<FixedAlphaGrowingL>(&regime)) {
    require_positive(g->c, "c");
    if (has_alpha(family)) require_positive(g->alpha, "alpha");
    if (g->exponent && std::abs(*g->exponent - growth_exponent(family)) > 1e-12) {
      throw IncompatibleRegime("L = c n^" + std::to_string(*g->exponent) + " is not the schedule for " +
                               std::string(to_string(family)));
    }
    return;
  }
  if (!has_alpha(family)) {
    throw IncompatibleRegime(std::string(regime_tag(regime)) + " schedule needs phi-s or psi-s, got " +
                             std::string(to_string(family)));
  }
  if (const auto* f = std::get_if<FixedLShrinkingAlpha>(&regime)) {
    require_positive(f->alpha0, "alpha0");
    require_positive(f->L0, "L0");
    return;
  }
  const auto& t = std::get<ToleranceDriven>(regime);
  require_positive(t.sigma, "sigma");
  if (!(t.p > 0.0 && t.p <= 1.0)) throw ConfigError("p must lie in (0, 1]");
  if (family == MapFamily::PhiS && t.p == 1.0) {
    throw IncompatibleRegime("tolerance schedule on phi-s needs p < 1");
  }
  if (!(t.epsilon > 0.0 && t.epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
}

}  // namespace detail

/// Schedule value at one n.
struct ScheduledParams {
  std::optional<double> alpha;  ///< nullopt for PhiE / PsiE
  double L = 0.0;
};

/// Raw schedule formulas at degree n, without the alpha floor check.
inline ScheduledParams schedule(const ParameterRegime& regime, MapFamily family, std::size_t n) {
  detail::validate(regime, family);
  if (n == 0) throw ConfigError("schedules are defined for n >= 1");
  const double nd = static_cast<double>(n);
  ScheduledParams out;
  if (const auto* g = std::get_if<FixedAlphaGrowingL>(&regime)) {
    out.L = g->c * std::pow(nd, growth_exponent(family));
    if (has_alpha(family)) out.alpha = g->alpha;
  } else if (const auto* f = std::get_if<FixedLShrinkingAlpha>(&regime)) {
    out.alpha = f->alpha0 / std::sqrt(nd);
    out.L = (family == MapFamily::PhiS ? 1.0 : 0.5) + f->L0;
  } else {
    const auto& t = std::get<ToleranceDriven>(regime);
    const double log_eps = std::abs(std::log(t.epsilon));
    out.alpha = t.sigma * log_eps * std::pow(nd, t.p - 2.0);
    const double growth = t.sigma * t.sigma * std::pow(nd, 2.0 * t.p - 2.0);
    out.L = family == MapFamily::PhiS ? 1.0 + growth : std::sqrt(0.25 + growth);
  }
  return out;
}

/// (alpha, L) at degree n. Throws AlphaFloorViolation if alpha < 0.005.
inline ScheduledParams params_for(const ParameterRegime& regime, MapFamily family, std::size_t n) {
  const ScheduledParams out = schedule(regime, family, n);
  if (out.alpha && *out.alpha < kAlphaFloor) throw AlphaFloorViolation(*out.alpha);
  return out;
}

/// Map and truncation for degree n under the schedule.
inline TransplantSpec make_spec(const ParameterRegime& regime, MapFamily family, std::size_t n) {
  const ScheduledParams params = params_for(regime, family, n);
  return {MapInstance(family, params.alpha.value_or(1.0)), params.L, n};
}

/// Largest n whose scheduled alpha stays at or above the floor. Unbounded
/// (SIZE_MAX) when alpha does not shrink with n.
inline std::size_t max_admissible_n(const ParameterRegime& regime, MapFamily family) {
  detail::validate(regime, family);
  if (std::holds_alternative<FixedAlphaGrowingL>(regime) || !has_alpha(family)) {
    return std::numeric_limits<std::size_t>::max();
  }
  // alpha(n) is decreasing, so bisect on the floor check itself.
  auto ok = [&](std::size_t n) {
    try {
      params_for(regime, family, n);
      return true;
    } catch (const AlphaFloorViolation&) {
      return false;
    }
  };
  if (!ok(1)) return 0;
  std::size_t lo = 1, hi = 2;
  while (ok(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// Analyticity data of the function being approximated.
struct AnalyticityProfile {
  std::optional<double> d;     ///< parabolic region parameter (growing-L, semi-infinite)
  std::optional<double> tau;   ///< endpoint Hoelder exponent
  std::optional<double> beta;  ///< strip half-width of analyticity (growing-L, infinite)
};

/// Envelope C^{-n^index}.
struct ConvergencePrediction {
  double C = 1.0;
  double index = 1.0;
  /// Set when d (PhiS) or beta (PsiS) was clamped to the map's own limit.
  std::optional<double> clamped_from;

  double envelope(double n) const { return std::exp(-std::log(C) * std::pow(n, index)); }
};

namespace detail {

inline double need(const std::optional<double>& v, const char* name) {
  if (!v) throw MissingProfileField(std::string("analyticity profile needs ") + name);
  if (!(*v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  return *v;
}

}  // namespace detail

/// Predicted base C and index of the error envelope for the schedule.
///
/// tau may be +inf, in which case the endpoint branch drops out of the min.
inline ConvergencePrediction predicted_C(const ParameterRegime& regime, MapFamily family,
                                         const AnalyticityProfile& profile) {
  using std::exp;
  using std::min;
  using std::sqrt;
  detail::validate(regime, family);
  const double pi = std::numbers::pi;
  const double tau = detail::need(profile.tau, "tau");
  ConvergencePrediction out;

  if (const auto* g = std::get_if<FixedAlphaGrowingL>(&regime)) {
    const double c = g->c;
    switch (family) {
      case MapFamily::PhiE: {
        const double d = detail::need(profile.d, "d");
        out.C = min(exp(sqrt(2.0 * d / c)), exp(tau * c));
        out.index = 2.0 / 3.0;
        break;
      }
      case MapFamily::PhiS: {
        double d = detail::need(profile.d, "d");
        const double gam = gamma(g->alpha);
        const double cap = -gam + sqrt(gam * gam + g->alpha * g->alpha);
        if (d > cap) {
          out.clamped_from = d;
          d = cap;
        }
        out.C = min(exp(sqrt(2.0 * d / c)), exp(pi * tau * c / g->alpha));
        out.index = 2.0 / 3.0;
        break;
      }
      case MapFamily::PsiE: {
        const double beta = detail::need(profile.beta, "beta");
        out.C = min(exp(beta / c), exp(tau * c));
        out.index = 0.5;
        break;
      }
      case MapFamily::PsiS: {
        double beta = detail::need(profile.beta, "beta");
        if (beta > g->alpha) {
          out.clamped_from = beta;
          beta = g->alpha;
        }
        out.C = min(exp(beta / c), exp(pi * tau * c / g->alpha));
        out.index = 0.5;
        break;
      }
    }
    return out;
  }

  if (const auto* f = std::get_if<FixedLShrinkingAlpha>(&regime)) {
    const double a0 = f->alpha0;
    const double l0 = f->L0;
    const double width = family == MapFamily::PhiS ? sqrt(l0) : sqrt(l0 * (1.0 + l0));
    out.C = min(exp(a0 / width), exp(pi * tau * l0 / a0));
    out.index = 0.5;
    return out;
  }

  const auto& t = std::get<ToleranceDriven>(regime);
  const double log_eps = std::abs(std::log(t.epsilon));
  out.index = t.p;
  if (t.p < 1.0) {
    out.C = exp(pi * tau * t.sigma / log_eps);
  } else {
    out.C = exp(pi * tau * (sqrt(0.25 + t.sigma * t.sigma) - 0.5) / (t.sigma * log_eps));
  }
  return out;
}

}  // namespace vtmap
