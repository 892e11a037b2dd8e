#pragma once

// CSV rows written by the CLI. Doubles use the shortest round-trip
// spelling, so parse followed by emit reproduces a row byte for byte.

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vtmap/approximant.hpp"
#include "vtmap/errors.hpp"
#include "vtmap/harness/parse.hpp"

namespace vtmap::harness {

inline std::string fmt(double v) { return vtmap::detail::format_double(v); }
inline std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

inline std::optional<double> parse_optional(std::string_view text) {
  if (text.empty()) return std::nullopt;
  return parse_double(text);
}

inline std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

/// One CSV line, LF terminated.
inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  out << join(fields) << '\n';
}

/// One point of a convergence sweep.
struct RunRecord {
  std::string map;
  std::string regime;
  std::size_t n = 0;
  std::optional<double> alpha;
  double L = 0.0;
  std::string function;
  double error = 0.0;
  std::optional<double> predicted_n;

  static constexpr std::string_view kHeader = "map,regime,n,alpha,L,function,error,predicted_n";

  std::vector<std::string> fields() const {
    return {map, regime, std::to_string(n), fmt(alpha), fmt(L), function, fmt(error), fmt(predicted_n)};
  }

  std::string to_csv() const { return join(fields()); }

  static RunRecord from_csv(std::string_view line) {
    const auto parts = split(line, ',');
    if (parts.size() != 8) throw ConfigError("run record needs 8 fields");
    RunRecord r;
    r.map = std::string(parts[0]);
    r.regime = std::string(parts[1]);
    r.n = parse_size(parts[2]);
    r.alpha = parse_optional(parts[3]);
    r.L = parse_double(parts[4]);
    r.function = std::string(parts[5]);
    r.error = parse_double(parts[6]);
    r.predicted_n = parse_optional(parts[7]);
    if (!(r.error >= 0.0) || !std::isfinite(r.error) || !std::isfinite(r.L)) {
      throw ConfigError("run record has a non-finite or negative field");
    }
    return r;
  }

  bool operator==(const RunRecord&) const = default;
};

/// One omega of a resolution sweep. measured_R is empty when not resolved.
struct ResolutionRecord {
  std::string map;
  std::string regime;
  double omega = 0.0;
  double delta = 0.5;
  std::size_t n_step = 1;
  std::optional<std::size_t> measured_R;
  double predicted_n = 0.0;

  static constexpr std::string_view kHeader = "map,regime,omega,delta,n_step,measured_R,predicted_n";

  std::vector<std::string> fields() const {
    return {map,
            regime,
            fmt(omega),
            fmt(delta),
            std::to_string(n_step),
            measured_R ? std::to_string(*measured_R) : std::string(),
            fmt(predicted_n)};
  }

  std::string to_csv() const { return join(fields()); }

  static ResolutionRecord from_csv(std::string_view line) {
    const auto parts = split(line, ',');
    if (parts.size() != 7) throw ConfigError("resolution record needs 7 fields");
    ResolutionRecord r;
    r.map = std::string(parts[0]);
    r.regime = std::string(parts[1]);
    r.omega = parse_double(parts[2]);
    r.delta = parse_double(parts[3]);
    r.n_step = parse_size(parts[4]);
    if (!parts[5].empty()) r.measured_R = parse_size(parts[5]);
    r.predicted_n = parse_double(parts[6]);
    return r;
  }

  bool operator==(const ResolutionRecord&) const = default;
};

}  // namespace vtmap::harness
