#pragma once

/// \file
/// Measured delta-resolution of e^{2 pi i omega x} and the predicted
/// points-per-wavelength laws n ~ coefficient * omega^power.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "vtmap/approximant.hpp"
#include "vtmap/errors.hpp"
#include "vtmap/maps.hpp"
#include "vtmap/strategies.hpp"

namespace vtmap {

/// One resolution measurement: scan n_grid in order, stop at the first n whose
/// sup error for e^{2 pi i omega x} drops below delta.
struct ResolutionQuery {
  double omega = 0.0;
  double delta = 0.5;
  std::vector<std::size_t> n_grid;
  MapFamily family = MapFamily::PhiE;
  ParameterRegime regime;
  std::optional<std::size_t> grid_size;  ///< nullopt: default_grid_size(n)
};

namespace detail {

inline void validate(const ResolutionQuery& q) {
  if (!(q.delta > 0.0 && q.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!std::isfinite(q.omega)) throw ConfigError("omega must be finite");
  if (q.n_grid.empty()) throw ConfigError("n grid is empty");
  for (std::size_t i = 0; i < q.n_grid.size(); ++i) {
    if (q.n_grid[i] == 0) throw ConfigError("n grid entries must be positive");
    if (i > 0 && q.n_grid[i] <= q.n_grid[i - 1]) throw ConfigError("n grid must be strictly increasing");
  }
}

}  // namespace detail

/// Smallest n in q.n_grid with sup error < delta; nullopt if none does.
inline std::optional<std::size_t> measure_resolution(const ResolutionQuery& q) {
  detail::validate(q);
  const TestFunction f = TestFunction::exp_i_omega(q.omega);
  for (std::size_t n : q.n_grid) {
    const PiecewiseApproximant p = build(f, make_spec(q.regime, q.family, n));
    const ErrorGrid grid = error_grid(p, q.grid_size.value_or(default_grid_size(n)));
    if (!error_reaches(f, p, grid, q.delta)) return n;
  }
  return std::nullopt;
}

/// Left side of 2 alpha (1 + exp(-pi xi^2/(4 alpha) + pi gamma/alpha)) = pi xi^2
/// minus the right side.
inline double xi_r_residual(double alpha, double xi) {
  const double pi = std::numbers::pi;
  const double e = -pi * xi * xi / (4.0 * alpha) + pi * gamma(alpha) / alpha;
  const double grow = e > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(e);
  return 2.0 * alpha * (1.0 + grow) - pi * xi * xi;
}

/// Unique positive root of xi_r_residual(alpha, .). It exceeds sqrt(2 alpha / pi).
inline double xi_r(double alpha) {
  if (!(alpha >= kAlphaFloor) || !std::isfinite(alpha)) {
    throw DomainError("xi_r: alpha must be finite and >= 0.005");
  }
  double lo = std::sqrt(2.0 * alpha / std::numbers::pi);
  double hi = 2.0 * lo;
  int doublings = 0;
  while (xi_r_residual(alpha, hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200) throw BracketFailure("xi_r: no sign change found");
  }
  if (!(xi_r_residual(alpha, lo) > 0.0)) throw BracketFailure("xi_r: lower bracket is not positive");
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (xi_r_residual(alpha, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// sinh(pi/(2 alpha)) / (1 + cosh(pi/(2 alpha))), i.e. tanh(pi/(4 alpha)).
inline double B(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("B: alpha must be positive");
  return std::tanh(std::numbers::pi / (4.0 * alpha));
}

/// Required-n law n ~ coefficient * omega^power.
struct PpwPrediction {
  MapFamily family = MapFamily::PhiE;
  std::string regime;
  double coefficient = 0.0;
  double power = 1.0;
  std::optional<double> xi_r;     ///< phi-s, growing L
  std::optional<double> B_alpha;  ///< psi-s, growing L
  /// Resolution constant in points per wavelength; +inf when power > 1.
  double r = std::numeric_limits<double>::infinity();

  double predicted_n(double omega) const { return coefficient * std::pow(std::abs(omega), power); }
};

inline PpwPrediction predict_ppw(MapFamily family, const ParameterRegime& regime) {
  detail::validate(regime, family);
  const double pi = std::numbers::pi;
  PpwPrediction out;
  out.family = family;
  out.regime = std::string(regime_tag(regime));

  if (const auto* g = std::get_if<FixedAlphaGrowingL>(&regime)) {
    const double c = g->c;
    switch (family) {
      case MapFamily::PhiE:
        out.coefficient = std::pow(pi, 1.5) * std::pow(2.0 * c / std::numbers::e, 0.75);
        out.power = 1.5;
        break;
      case MapFamily::PhiS: {
        const double xi = xi_r(g->alpha);
        out.xi_r = xi;
        out.coefficient = std::pow(std::sqrt(c) * pi * (1.0 - 2.0 * g->alpha / (pi * xi * xi)) * xi, 1.5);
        out.power = 1.5;
        break;
      }
      case MapFamily::PsiE:
        out.coefficient = std::pow(pi * c / 2.0, 2.0);
        out.power = 2.0;
        break;
      case MapFamily::PsiS: {
        const double b = B(g->alpha);
        out.B_alpha = b;
        out.coefficient = std::pow(2.0 * pi * c * b, 2.0);
        out.power = 2.0;
        break;
      }
    }
    return out;
  }

  out.power = 1.0;
  if (const auto* f = std::get_if<FixedLShrinkingAlpha>(&regime)) {
    out.coefficient = family == MapFamily::PhiS ? pi * (1.0 + f->L0) : 2.0 * pi * (0.5 + f->L0);
  } else {
    // L tends to 1 (phi-s) or 1/2 (psi-s); both give pi.
    out.coefficient = pi;
  }
  out.r = out.coefficient;
  return out;
}

/// Linear scan with step max(1, round(predicted/200)) up to 3x the predicted
/// n, cut at the largest n the schedule admits.
inline std::vector<std::size_t> default_n_grid(const PpwPrediction& pred, double omega,
                                               const ParameterRegime& regime, MapFamily family) {
  const double target = std::max(1.0, pred.predicted_n(omega));
  const auto step = static_cast<std::size_t>(std::max(1.0, std::round(target / 200.0)));
  auto stop = static_cast<std::size_t>(std::ceil(3.0 * target));
  stop = std::min(stop, max_admissible_n(regime, family));
  std::vector<std::size_t> grid;
  for (std::size_t n = step; n <= stop; n += step) grid.push_back(n);
  if (grid.empty() && stop >= 1) grid.push_back(stop);
  return grid;
}

}  // namespace vtmap
