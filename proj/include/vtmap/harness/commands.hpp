#pragma once

// The four CLI commands. Each writes CSV to `out` and diagnostics to `err`
// and throws vtmap::Error on bad input; run_guarded turns that into an exit
// status.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vtmap/approximant.hpp"
#include "vtmap/errors.hpp"
#include "vtmap/harness/parallel.hpp"
#include "vtmap/harness/parse.hpp"
#include "vtmap/harness/record.hpp"
#include "vtmap/harness/svg.hpp"
#include "vtmap/maps.hpp"
#include "vtmap/resolution.hpp"
#include "vtmap/strategies.hpp"

namespace vtmap::harness {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2 };

/// Flags shared by all commands. Unset optionals mean "not given".
struct SweepConfig {
  MapFamily family = MapFamily::PhiE;
  std::optional<std::string> regime;  ///< grow-l | fixed-l | tolerance
  std::optional<double> alpha, alpha0, L, L0, c, sigma, p, epsilon;
  std::vector<std::size_t> n;
  std::vector<double> omega;
  double delta = 0.5;
  std::optional<std::string> fn;
  std::optional<std::size_t> grid_size;
  std::optional<double> d, tau, beta;
};

inline double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw ConfigError(std::string("missing ") + flag);
  return *v;
}

/// Regime named by --regime. Maps without a strip width default to grow-l.
/// With fixed-l, --L may stand in for --L0.
inline std::optional<ParameterRegime> regime_from(const SweepConfig& cfg) {
  std::string tag;
  if (cfg.regime) {
    tag = *cfg.regime;
  } else if (!has_alpha(cfg.family) && cfg.c) {
    tag = "grow-l";
  } else {
    return std::nullopt;
  }
  if (tag == "grow-l") {
    FixedAlphaGrowingL g;
    g.c = require(cfg.c, "--c");
    if (has_alpha(cfg.family)) g.alpha = require(cfg.alpha, "--alpha");
    return g;
  }
  if (tag == "fixed-l") {
    FixedLShrinkingAlpha f;
    f.alpha0 = require(cfg.alpha0, "--alpha0");
    if (cfg.L0) {
      f.L0 = *cfg.L0;
    } else if (cfg.L) {
      f.L0 = *cfg.L - (cfg.family == MapFamily::PsiS ? 0.5 : 1.0);
    } else {
      throw ConfigError("missing --L0 (or --L)");
    }
    return f;
  }
  if (tag == "tolerance") {
    ToleranceDriven t;
    if (cfg.sigma) t.sigma = *cfg.sigma;
    if (cfg.p) t.p = *cfg.p;
    if (cfg.epsilon) t.epsilon = *cfg.epsilon;
    return t;
  }
  throw ConfigError("unknown regime '" + tag + "'");
}

/// Spec at degree n: from the regime if one is given, else from --alpha/--L.
inline TransplantSpec spec_from(const SweepConfig& cfg, const std::optional<ParameterRegime>& regime,
                                std::size_t n) {
  if (regime) return make_spec(*regime, cfg.family, n);
  const MapInstance map = has_alpha(cfg.family) ? MapInstance(cfg.family, require(cfg.alpha, "--alpha"))
                                                : MapInstance(cfg.family);
  const double L = require(cfg.L, "--L");
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("--L must be positive");
  return {map, L, n};
}

inline TestFunction function_from(const SweepConfig& cfg) {
  if (!cfg.fn) throw ConfigError("missing --fn");
  return parse_function(*cfg.fn);
}

inline std::string regime_label(const std::optional<ParameterRegime>& regime) {
  return regime ? std::string(regime_tag(*regime)) : std::string("fixed");
}

/// Samples f and p on the error grid: x,f_re,f_im,p_re,p_im,abs_err.
inline int cmd_approx(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto regime = regime_from(cfg);
  if (cfg.n.size() != 1) throw ConfigError("approx takes a single --n");
  const TransplantSpec spec = spec_from(cfg, regime, cfg.n.front());
  const TestFunction f = function_from(cfg);
  const PiecewiseApproximant p = build(f, spec);
  const ErrorGrid grid = error_grid(p, cfg.grid_size.value_or(default_grid_size(spec.n)));
  out << "x,f_re,f_im,p_re,p_im,abs_err\n";
  double worst = 0.0;
  for (double x : grid.x) {
    const complex fx = f(x);
    const complex px = p(x);
    const double e = std::abs(fx - px);
    worst = std::max(worst, e);
    write_row(out, {fmt(x), fmt(fx.real()), fmt(fx.imag()), fmt(px.real()), fmt(px.imag()), fmt(e)});
  }
  err << "sup error " << fmt(worst) << " over " << grid.x.size() << " points\n";
  return kOk;
}

/// Error against n, one RunRecord per n.
inline std::vector<RunRecord> converge_records(const SweepConfig& cfg) {
  const auto regime = regime_from(cfg);
  if (cfg.n.empty()) throw ConfigError("missing --n");
  const TestFunction f = function_from(cfg);
  // Validate every point up front so a floor violation fails fast.
  for (std::size_t n : cfg.n) spec_from(cfg, regime, n);
  auto rows = parallel_map(cfg.n, [&](std::size_t n) {
    const TransplantSpec spec = spec_from(cfg, regime, n);
    const PiecewiseApproximant p = build(f, spec);
    RunRecord r;
    r.map = std::string(to_string(cfg.family));
    r.regime = regime_label(regime);
    r.n = n;
    r.alpha = spec.map.alpha();
    r.L = spec.L;
    r.function = f.tag();
    r.error = sup_error(f, p, cfg.grid_size.value_or(default_grid_size(n)));
    return r;
  });
  std::sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) { return a.n < b.n; });
  return rows;
}

/// Writes the run records; optionally the envelope C^{-n^index} and an SVG.
inline int cmd_converge(const SweepConfig& cfg, std::ostream& out, std::ostream& err,
                        std::ostream* envelope = nullptr, std::ostream* svg = nullptr) {
  const auto rows = converge_records(cfg);
  out << RunRecord::kHeader << '\n';
  for (const auto& r : rows) out << r.to_csv() << '\n';

  std::optional<ConvergencePrediction> pred;
  if (envelope || (svg && cfg.tau)) {
    const auto regime = regime_from(cfg);
    if (!regime) throw ConfigError("the envelope needs --regime");
    pred = predicted_C(*regime, cfg.family, {cfg.d, cfg.tau, cfg.beta});
    if (pred->clamped_from) err << "note: analyticity parameter clamped to the map's limit\n";
  }
  if (envelope) {
    *envelope << "n,envelope\n";
    for (const auto& r : rows) write_row(*envelope, {std::to_string(r.n), fmt(pred->envelope(double(r.n)))});
  }
  if (svg) {
    Series measured{rows.empty() ? "" : rows.front().function, {}, false};
    for (const auto& r : rows) measured.points.emplace_back(double(r.n), r.error);
    std::vector<Series> series{measured};
    if (pred) {
      // Anchor the slope at the first point.
      Series slope{"predicted slope", {}, true};
      if (!rows.empty()) {
        const double n0 = double(rows.front().n);
        const double scale = rows.front().error / pred->envelope(n0);
        for (const auto& r : rows) slope.points.emplace_back(double(r.n), scale * pred->envelope(double(r.n)));
      }
      series.push_back(slope);
    }
    write_svg(*svg, {std::string(to_string(cfg.family)) + " " + regime_label(regime_from(cfg)), "n", "sup error", true},
              series);
  }
  return kOk;
}

inline std::vector<ResolutionRecord> resolve_records(const SweepConfig& cfg, std::vector<std::string>& warnings) {
  const auto regime = regime_from(cfg);
  if (!regime) throw ConfigError("resolve needs --regime");
  if (cfg.omega.empty()) throw ConfigError("missing --omega");
  const PpwPrediction pred = predict_ppw(cfg.family, *regime);
  if (!cfg.n.empty()) {
    for (std::size_t n : cfg.n) make_spec(*regime, cfg.family, n);
  }
  auto rows = parallel_map(cfg.omega, [&](double omega) {
    ResolutionQuery q;
    q.omega = omega;
    q.delta = cfg.delta;
    q.family = cfg.family;
    q.regime = *regime;
    q.grid_size = cfg.grid_size;
    q.n_grid = cfg.n.empty() ? default_n_grid(pred, omega, *regime, cfg.family) : cfg.n;
    ResolutionRecord r;
    r.map = std::string(to_string(cfg.family));
    r.regime = std::string(regime_tag(*regime));
    r.omega = omega;
    r.delta = cfg.delta;
    r.n_step = q.n_grid.size() > 1 ? q.n_grid[1] - q.n_grid[0] : 1;
    r.measured_R = measure_resolution(q);
    r.predicted_n = pred.predicted_n(omega);
    return r;
  });
  std::sort(rows.begin(), rows.end(),
            [](const ResolutionRecord& a, const ResolutionRecord& b) { return a.omega < b.omega; });
  for (const auto& r : rows) {
    if (!r.measured_R) warnings.push_back("omega = " + fmt(r.omega) + " not resolved on the n grid");
  }
  return rows;
}

/// One row per omega: measured first crossing and predicted n.
inline int cmd_resolve(const SweepConfig& cfg, std::ostream& out, std::ostream& err, std::ostream* svg = nullptr) {
  std::vector<std::string> warnings;
  const auto rows = resolve_records(cfg, warnings);
  out << ResolutionRecord::kHeader << '\n';
  for (const auto& r : rows) out << r.to_csv() << '\n';
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (svg) {
    Series measured{"measured", {}, false}, predicted{"predicted", {}, true};
    for (const auto& r : rows) {
      if (r.measured_R) measured.points.emplace_back(r.omega, double(*r.measured_R));
      predicted.points.emplace_back(r.omega, r.predicted_n);
    }
    write_svg(*svg, {std::string(to_string(cfg.family)) + " resolution", "omega", "n", false}, {measured, predicted});
  }
  return kOk;
}

namespace detail {

inline std::string dof_law(double power) {
  if (power == 1.0) return "O(omega)";
  if (power == 1.5) return "O(omega^{3/2})";
  return "O(omega^2)";
}

inline std::string index_text(double index) {
  if (std::abs(index - 2.0 / 3.0) < 1e-15) return "2/3";
  if (index == 0.5) return "1/2";
  return fmt(index);
}

}  // namespace detail

/// Prints the summary row for the chosen map and schedule; CSV goes to `csv`.
inline int cmd_predict(const SweepConfig& cfg, std::ostream& out, std::ostream& err, std::ostream* csv = nullptr) {
  const auto regime = regime_from(cfg);
  if (!regime) throw ConfigError("predict needs --regime");
  const ConvergencePrediction conv = predicted_C(*regime, cfg.family, {cfg.d, cfg.tau, cfg.beta});
  const PpwPrediction ppw = predict_ppw(cfg.family, *regime);
  if (conv.clamped_from) {
    err << "note: " << (cfg.family == MapFamily::PhiS ? "d" : "beta") << " = " << fmt(*conv.clamped_from)
        << " clamped to the map's limit\n";
  }

  std::string r_text = "inf";
  if (const auto* f = std::get_if<FixedLShrinkingAlpha>(&*regime)) {
    r_text = cfg.family == MapFamily::PhiS ? "(1+L0)pi = " + fmt(1.0 + f->L0) + "pi"
                                            : "(1+2L0)pi = " + fmt(1.0 + 2.0 * f->L0) + "pi";
    r_text += " = " + fmt(ppw.r);
  } else if (std::holds_alternative<ToleranceDriven>(*regime)) {
    r_text = "pi = " + fmt(ppw.r);
  }

  out << "map: " << to_string(cfg.family) << "\n";
  out << "regime: " << regime_tag(*regime) << "\n";
  out << "convergence: C^(-n^" << detail::index_text(conv.index) << "), C = " << fmt(conv.C) << "\n";
  out << "d.o.f.: " << detail::dof_law(ppw.power) << ", n ~ " << fmt(ppw.coefficient) << " omega^"
      << fmt(ppw.power) << "\n";
  if (ppw.xi_r) out << "xi_r: " << fmt(*ppw.xi_r) << "\n";
  if (ppw.B_alpha) out << "B(alpha): " << fmt(*ppw.B_alpha) << "\n";
  out << "r: " << r_text << "\n";

  if (csv) {
    *csv << "map,regime,C,index,clamped_from,coefficient,power,r,xi_r,B_alpha\n";
    write_row(*csv, {std::string(to_string(cfg.family)), std::string(regime_tag(*regime)), fmt(conv.C),
                     fmt(conv.index), fmt(conv.clamped_from), fmt(ppw.coefficient), fmt(ppw.power), fmt(ppw.r),
                     fmt(ppw.xi_r), fmt(ppw.B_alpha)});
  }
  return kOk;
}

/// Runs body and maps library exceptions to exit codes, printing the message.
inline int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace vtmap::harness
