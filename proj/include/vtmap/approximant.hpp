#pragma once

/// \file
/// Piecewise approximant on [0,1]: transplant through a map, truncate to
/// [-L,0] or [-L,L], interpolate, extend by constants beyond the cut.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "vtmap/chebyshev.hpp"
#include "vtmap/errors.hpp"
#include "vtmap/maps.hpp"

namespace vtmap {

namespace detail {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Builtin functions on [0,1]: sqrt(x), x^tau, e^{2 pi i omega x}, constants.
class TestFunction {
 public:
  struct Sqrt {};
  struct PowTau {
    double tau;
  };
  struct ExpIOmega {
    double omega;
  };
  struct Constant {
    complex value;
  };
  using Kind = std::variant<Sqrt, PowTau, ExpIOmega, Constant>;

  static TestFunction sqrt() { return TestFunction(Sqrt{}); }
  static TestFunction pow_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("x^tau needs tau > 0");
    return TestFunction(PowTau{tau});
  }
  static TestFunction exp_i_omega(double omega) {
    if (!std::isfinite(omega)) throw DomainError("e^{2 pi i omega x} needs finite omega");
    return TestFunction(ExpIOmega{omega});
  }
  static TestFunction constant(complex v) { return TestFunction(Constant{v}); }

  const Kind& kind() const noexcept { return kind_; }

  complex operator()(double x) const {
    return std::visit(
        [x](const auto& k) -> complex {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Sqrt>) {
            return {std::sqrt(x), 0.0};
          } else if constexpr (std::is_same_v<K, PowTau>) {
            if (k.tau == 0.5) return {std::sqrt(x), 0.0};
            return {std::pow(x, k.tau), 0.0};
          } else if constexpr (std::is_same_v<K, ExpIOmega>) {
            if (k.omega == 0.0) return {1.0, 0.0};
            double t = k.omega * x;
            t -= std::nearbyint(t);
            const double angle = 2.0 * std::numbers::pi * t;
            return {std::cos(angle), std::sin(angle)};
          } else {
            return k.value;
          }
        },
        kind_);
  }

  /// CLI spelling: sqrt, xpow:TAU, expi:OMEGA, const, const:V.
  std::string tag() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Sqrt>) {
            return "sqrt";
          } else if constexpr (std::is_same_v<K, PowTau>) {
            return "xpow:" + detail::format_double(k.tau);
          } else if constexpr (std::is_same_v<K, ExpIOmega>) {
            return "expi:" + detail::format_double(k.omega);
          } else {
            if (k.value == complex{1.0, 0.0}) return "const";
            return "const:" + detail::format_double(k.value.real());
          }
        },
        kind_);
  }

 private:
  explicit TestFunction(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// Map, truncation length L and interpolation degree n.
struct TransplantSpec {
  MapInstance map;
  double L;
  std::size_t n;
};

/// The full approximant on [0,1].
///
/// On the semi-infinite maps the core covers [x_left, 1] and x < x_left takes
/// tail_left. On the infinite maps the core covers [x_left, x_right] with
/// x_right = 1 - x_left, and x > x_right takes tail_right. x_left may
/// underflow to 0 for extreme (alpha, L), in which case the left tail is
/// empty apart from x = 0 itself.
class PiecewiseApproximant {
 public:
  PiecewiseApproximant(TransplantSpec spec, ChebInterpolant core, std::vector<double> node_x,
                       double x_left, double x_right, complex tail_left, complex tail_right)
      : spec_(std::move(spec)),
        core_(std::move(core)),
        node_x_(std::move(node_x)),
        tail_left_(tail_left),
        tail_right_(tail_right),
        x_left_(x_left),
        x_right_(x_right) {}

  const TransplantSpec& spec() const noexcept { return spec_; }
  const ChebInterpolant& core() const noexcept { return core_; }
  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_right_; }
  complex tail_left() const noexcept { return tail_left_; }
  complex tail_right() const noexcept { return tail_right_; }
  /// x-images of the Chebyshev nodes, from x_right down to x_left.
  std::span<const double> node_images() const noexcept { return node_x_; }
  bool infinite() const noexcept { return spec_.map.kind() == DomainKind::Infinite; }

  enum class Piece { LeftTail, Core, RightTail };

  /// Which piece of the definition x falls in. The core wins within 1 ulp of
  /// either cut.
  Piece piece(double x) const {
    if (x <= 0.0) return Piece::LeftTail;
    if (x < std::nextafter(x_left_, 0.0)) return Piece::LeftTail;
    if (infinite()) {
      if (x >= 1.0) return Piece::RightTail;
      if (x > std::nextafter(x_right_, 2.0)) return Piece::RightTail;
    }
    return Piece::Core;
  }

  /// Core coordinate y in [-1, 1] of an x in the core piece.
  double core_coordinate(double x) const {
    const double s = spec_.map.forward(x);
    return infinite() ? s / spec_.L : 2.0 * s / spec_.L + 1.0;
  }

  complex operator()(double x) const { return evaluate(x).first; }

  /// Value together with the piece that produced it.
  std::pair<complex, Piece> evaluate(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("evaluate_px: x = " + std::to_string(x) + " outside [0, 1]");
    }
    Piece where = piece(x);
    if (where == Piece::Core) {
      if (!infinite() && x == 1.0) return {core_(1.0), Piece::Core};
      const double y = core_coordinate(x);
      // Rounding in forward() can push y just past +-1 near a cut.
      if (y < -1.0 - ChebInterpolant::kSlack) return {tail_left_, Piece::LeftTail};
      if (y > 1.0 + ChebInterpolant::kSlack) return {tail_right_, Piece::RightTail};
      return {core_(std::clamp(y, -1.0, 1.0)), Piece::Core};
    }
    return {where == Piece::LeftTail ? tail_left_ : tail_right_, where};
  }

 private:
  TransplantSpec spec_;
  ChebInterpolant core_;
  std::vector<double> node_x_;
  complex tail_left_;
  complex tail_right_;
  double x_left_ = 0.0;
  double x_right_ = 1.0;
};

/// x-image of the core coordinate y under the spec's scaling and inverse map.
inline double core_to_x(const TransplantSpec& spec, double y) {
  if (spec.map.kind() == DomainKind::Infinite) return spec.map.inverse(spec.L * y);
  return spec.map.inverse(std::min(0.5 * spec.L * (y - 1.0), 0.0));
}

/// Sample f at the images of the Chebyshev nodes and interpolate.
inline PiecewiseApproximant build(const TestFunction& f, const TransplantSpec& spec) {
  if (!(spec.L > 0.0) || !std::isfinite(spec.L)) throw DomainError("build: L must be positive");
  const ChebGrid grid = cheb_points(spec.n);
  std::vector<double> node_x(grid.nodes.size());
  std::vector<complex> samples(grid.nodes.size());
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    node_x[j] = core_to_x(spec, grid.nodes[j]);
    samples[j] = f(node_x[j]);
    if (!std::isfinite(samples[j].real()) || !std::isfinite(samples[j].imag())) {
      throw NonFiniteSample("build: f is not finite at x = " + std::to_string(node_x[j]));
    }
  }
  const bool inf = spec.map.kind() == DomainKind::Infinite;
  const double x_left = spec.map.truncation_point(spec.L);
  const double x_right = inf ? spec.map.inverse(spec.L) : 1.0;
  // With n >= 1 the end nodes sit exactly on the cuts; n = 0 has only y = 1.
  const complex left = spec.n == 0 ? f(x_left) : samples.back();
  const complex right = inf ? samples.front() : complex{};
  return PiecewiseApproximant(spec, interpolate(samples), std::move(node_x), x_left, x_right, left,
                              right);
}

inline complex evaluate_px(const PiecewiseApproximant& p, double x) { return p(x); }

/// Points at which the sup-norm error is sampled.
///
/// The union of: grid_size equispaced points on [0,1]; grid_size points
/// geometrically spaced over [x_left/10, 10 x_left] (mirrored about 1/2 on
/// the infinite maps); the Chebyshev node images; and the images of
/// grid_size points equispaced in the core coordinate y. The last set
/// resolves the core error in regions that the x-equispaced points skip
/// over when x_left is tiny.
struct ErrorGrid {
  std::vector<double> x;
};

inline std::size_t default_grid_size(std::size_t n) { return std::max<std::size_t>(2048, 20 * n); }

inline ErrorGrid error_grid(const PiecewiseApproximant& p, std::size_t grid_size) {
  if (grid_size < 2) throw DomainError("error grid needs grid_size >= 2");
  const auto& spec = p.spec();
  const bool inf = p.infinite();
  std::vector<double> xs;
  xs.reserve(4 * grid_size + spec.n + 1);
  const double g1 = static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) xs.push_back(static_cast<double>(i) / g1);

  const double xl = p.x_left();
  const double lo = xl / 10.0;
  if (lo > std::numeric_limits<double>::min()) {
    const double hi = std::min(10.0 * xl, inf ? 0.5 : 1.0);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (std::size_t i = 0; i < grid_size; ++i) {
      const double x = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / g1);
      if (x > 0.0 && x < 1.0) {
        xs.push_back(x);
        if (inf) xs.push_back(1.0 - x);
      }
    }
  }
  for (double x : p.node_images()) xs.push_back(x);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double y = -1.0 + 2.0 * static_cast<double>(i) / g1;
    xs.push_back(core_to_x(spec, y));
  }
  std::erase_if(xs, [](double x) { return !(x >= 0.0 && x <= 1.0); });
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return {std::move(xs)};
}

/// Largest |f - p| on each piece of the approximant.
struct ErrorBreakdown {
  double core = 0.0;
  double left_tail = 0.0;
  double right_tail = 0.0;

  double total() const { return std::max({core, left_tail, right_tail}); }
};

inline ErrorBreakdown error_breakdown(const TestFunction& f, const PiecewiseApproximant& p,
                                      const ErrorGrid& grid) {
  ErrorBreakdown out;
  for (double x : grid.x) {
    const auto [value, where] = p.evaluate(x);
    const double err = std::abs(f(x) - value);
    switch (where) {
      case PiecewiseApproximant::Piece::LeftTail: out.left_tail = std::max(out.left_tail, err); break;
      case PiecewiseApproximant::Piece::Core: out.core = std::max(out.core, err); break;
      case PiecewiseApproximant::Piece::RightTail: out.right_tail = std::max(out.right_tail, err); break;
    }
  }
  return out;
}

inline ErrorBreakdown error_breakdown(const TestFunction& f, const PiecewiseApproximant& p,
                                      std::size_t grid_size) {
  return error_breakdown(f, p, error_grid(p, grid_size));
}

/// Estimate of ||f - p||_inf on [0,1] over error_grid(p, grid_size).
inline double sup_error(const TestFunction& f, const PiecewiseApproximant& p, std::size_t grid_size) {
  return error_breakdown(f, p, grid_size).total();
}

inline double sup_error(const TestFunction& f, const PiecewiseApproximant& p) {
  return sup_error(f, p, default_grid_size(p.spec().n));
}

/// True iff |f - p| >= threshold somewhere on the grid, i.e. iff the
/// sup_error over the same grid is >= threshold. Points are visited
/// coarse-to-fine so that a large error is found after few evaluations.
inline bool error_reaches(const TestFunction& f, const PiecewiseApproximant& p, const ErrorGrid& grid,
                          double threshold) {
  const std::size_t size = grid.x.size();
  std::size_t stride = 1;
  while (stride * 8 < size) stride *= 8;
  std::size_t previous = 0;
  for (; stride >= 1; stride /= 8) {
    for (std::size_t i = 0; i < size; i += stride) {
      if (previous != 0 && i % previous == 0) continue;
      if (std::abs(f(grid.x[i]) - p(grid.x[i])) >= threshold) return true;
    }
    previous = stride;
    if (stride == 1) break;
  }
  return false;
}

}  // namespace vtmap
