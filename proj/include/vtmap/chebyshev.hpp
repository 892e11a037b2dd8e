#pragma once

/// \file
/// Chebyshev points of the second kind, interpolation to aliased Chebyshev
/// coefficients, Clenshaw evaluation and Bernstein-ellipse utilities.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vtmap/errors.hpp"

namespace vtmap {

using complex = std::complex<double>;

/// n+1 Chebyshev points y_j = cos(j pi / n), from 1 down to -1.
struct ChebGrid {
  std::size_t n = 0;
  std::vector<double> nodes;
};

inline ChebGrid cheb_points(std::size_t n) {
  ChebGrid grid{n, std::vector<double>(n + 1)};
  if (n == 0) {
    grid.nodes[0] = 1.0;
    return grid;
  }
  // sin form keeps y_j == -y_{n-j} bit for bit.
  const double m = static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) {
    const double k = m - 2.0 * static_cast<double>(j);
    grid.nodes[j] = std::sin(std::numbers::pi * k / (2.0 * m));
  }
  return grid;
}

/// Degree-n interpolant sum_k c_k T_k(y) on [-1, 1].
class ChebInterpolant {
 public:
  ChebInterpolant() : coeffs_(1, complex{0.0, 0.0}) {}
  explicit ChebInterpolant(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidLength("ChebInterpolant needs at least one coefficient");
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const complex> coeffs() const noexcept { return coeffs_; }

  /// Clenshaw recurrence. |y| may exceed 1 by at most 1e-14, in which case it
  /// is clamped.
  complex operator()(double y) const {
    if (!(std::abs(y) <= 1.0 + kSlack)) {
      throw DomainError("ChebInterpolant: y = " + std::to_string(y) + " outside [-1, 1]");
    }
    y = std::clamp(y, -1.0, 1.0);
    return clenshaw(y);
  }

  static constexpr double kSlack = 1e-14;

 private:
  complex clenshaw(double y) const {
    const std::size_t n = coeffs_.size() - 1;
    if (n == 0) return coeffs_[0];
    const double two_y = 2.0 * y;
    double b1r = 0.0, b1i = 0.0, b2r = 0.0, b2i = 0.0;
    for (std::size_t k = n; k >= 1; --k) {
      const double br = coeffs_[k].real() + two_y * b1r - b2r;
      const double bi = coeffs_[k].imag() + two_y * b1i - b2i;
      b2r = b1r;
      b2i = b1i;
      b1r = br;
      b1i = bi;
    }
    return {coeffs_[0].real() + y * b1r - b2r, coeffs_[0].imag() + y * b1i - b2i};
  }

  std::vector<complex> coeffs_;
};

inline complex evaluate(const ChebInterpolant& p, double y) { return p(y); }

namespace detail {

/// Below this degree the coefficients are summed directly.
inline constexpr std::size_t kDctCutoff = 16;

inline void check_samples(std::span<const complex> samples) {
  if (samples.empty()) throw InvalidLength("interpolate: need at least one sample");
  for (const auto& v : samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFiniteSample("interpolate: non-finite sample");
    }
  }
}

/// O(n^2) reference route: c_k = (2/n) sum'' f_j cos(pi j k / n).
inline ChebInterpolant interpolate_direct(std::span<const complex> samples) {
  check_samples(samples);
  const std::size_t n = samples.size() - 1;
  if (n == 0) return ChebInterpolant({samples[0]});
  std::vector<complex> c(n + 1);
  const std::size_t period = 2 * n;
  for (std::size_t k = 0; k <= n; ++k) {
    complex acc{0.0, 0.0};
    for (std::size_t j = 0; j <= n; ++j) {
      const std::size_t idx = (j * k) % period;
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      acc += w * samples[j] * std::cos(std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n));
    }
    c[k] = acc * (2.0 / static_cast<double>(n));
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return ChebInterpolant(std::move(c));
}

// FFTW planning is not thread safe; execution on a private plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class Dct1Plan {
 public:
  explicit Dct1Plan(std::size_t size) : size_(size) {
    std::lock_guard lock(fftw_planner_mutex());
    in_ = fftw_alloc_real(size);
    out_ = fftw_alloc_real(size);
    plan_ = fftw_plan_r2r_1d(static_cast<int>(size), in_, out_, FFTW_REDFT00, FFTW_ESTIMATE);
  }
  ~Dct1Plan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Dct1Plan(const Dct1Plan&) = delete;
  Dct1Plan& operator=(const Dct1Plan&) = delete;

  double* in() noexcept { return in_; }
  const double* out() const noexcept { return out_; }
  void execute() { fftw_execute(plan_); }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
  double* in_ = nullptr;
  double* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

/// O(n log n) route through a type-I DCT (FFTW REDFT00).
inline ChebInterpolant interpolate_dct(std::span<const complex> samples) {
  check_samples(samples);
  const std::size_t n = samples.size() - 1;
  if (n == 0) return ChebInterpolant({samples[0]});
  bool has_imag = false;
  for (const auto& v : samples) has_imag = has_imag || v.imag() != 0.0;

  Dct1Plan plan(n + 1);
  std::vector<complex> c(n + 1);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) plan.in()[j] = samples[j].real();
  plan.execute();
  for (std::size_t k = 0; k <= n; ++k) c[k] = {plan.out()[k] * scale, 0.0};
  if (has_imag) {
    for (std::size_t j = 0; j <= n; ++j) plan.in()[j] = samples[j].imag();
    plan.execute();
    for (std::size_t k = 0; k <= n; ++k) c[k].imag(plan.out()[k] * scale);
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return ChebInterpolant(std::move(c));
}

}  // namespace detail

/// Aliased Chebyshev coefficients of the samples taken at cheb_points(n).
inline ChebInterpolant interpolate(std::span<const complex> samples) {
  if (samples.size() < detail::kDctCutoff + 1) return detail::interpolate_direct(samples);
  return detail::interpolate_dct(samples);
}

/// Ellipse with foci +-1 and semi-axes cosh(mu), sinh(mu).
struct BernsteinEllipse {
  double mu = 0.0;

  double semi_major() const { return std::cosh(mu); }
  double semi_minor() const { return std::sinh(mu); }
};

/// (4/mu) m e^{-mu n}: interpolation error bound for a function analytic
/// inside E_mu and bounded by m there.
inline double bernstein_bound(double mu, double m, double n) {
  if (!(mu > 0.0) || !(m > 0.0) || !(n >= 0.0)) {
    throw DomainError("bernstein_bound: need mu > 0, m > 0, n >= 0");
  }
  return 4.0 / mu * m * std::exp(-mu * n);
}

/// Bernstein ellipse passing through y1 + i y2.
inline BernsteinEllipse ellipse_param(double y1, double y2) {
  const double r2 = y1 * y1 + y2 * y2;
  const double disc = (1.0 - r2) * (1.0 - r2) + 4.0 * y2 * y2;
  const double root = std::sqrt(disc);
  // Conjugate form inside the unit circle avoids cancellation.
  const double sinh2 = r2 >= 1.0 ? 0.5 * (r2 - 1.0 + root) : 2.0 * y2 * y2 / (root + 1.0 - r2);
  if (!(sinh2 > 0.0)) {
    throw DegeneratePoint("ellipse_param: point lies on [-1, 1]");
  }
  return {std::asinh(std::sqrt(sinh2))};
}

}  // namespace vtmap
