#pragma once

// Text parsers for the CLI: ranges, lists, function tags, tolerances.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vtmap/approximant.hpp"
#include "vtmap/errors.hpp"

namespace vtmap::harness {

inline double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || first == last) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

inline std::size_t parse_size(std::string_view text) {
  std::size_t v = 0;
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(text.data(), last, v);
  if (res.ec != std::errc{} || res.ptr != last || text.empty()) {
    throw ConfigError("not a nonnegative integer: '" + std::string(text) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

/// "start:step:stop" (stop included when hit exactly) or a single integer.
inline std::vector<std::size_t> parse_n_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_size(parts[0])};
  if (parts.size() != 3) throw ConfigError("n range must be start:step:stop");
  const std::size_t start = parse_size(parts[0]);
  const std::size_t step = parse_size(parts[1]);
  const std::size_t stop = parse_size(parts[2]);
  if (step == 0) throw ConfigError("n range step must be positive");
  if (stop < start) throw ConfigError("n range is empty");
  std::vector<std::size_t> out;
  for (std::size_t n = start; n <= stop; n += step) out.push_back(n);
  return out;
}

/// "start:step:stop", "a,b,c" or a single value.
inline std::vector<double> parse_real_list(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    const double start = parse_double(parts[0]);
    const double step = parse_double(parts[1]);
    const double stop = parse_double(parts[2]);
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    if (stop < start) throw ConfigError("range is empty");
    const double count = std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9);
    std::vector<double> out;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(count); ++k) {
      out.push_back(start + static_cast<double>(k) * step);
    }
    return out;
  }
  if (parts.size() != 1) throw ConfigError("expected start:step:stop or a comma list");
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(parse_double(item));
  return out;
}

/// Plain number or "B^E", e.g. 2^-52.
inline double parse_epsilon(std::string_view text) {
  const std::size_t caret = text.find('^');
  if (caret == std::string_view::npos) return parse_double(text);
  const double base = parse_double(text.substr(0, caret));
  const double exponent = parse_double(text.substr(caret + 1));
  if (base == 2.0 && exponent == std::floor(exponent)) {
    return std::ldexp(1.0, static_cast<int>(exponent));
  }
  return std::pow(base, exponent);
}

/// sqrt | xpow:TAU | expi:OMEGA | const | const:V
inline TestFunction parse_function(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const bool has_arg = colon != std::string_view::npos;
  const std::string_view arg = has_arg ? text.substr(colon + 1) : std::string_view{};
  if (head == "sqrt" && !has_arg) return TestFunction::sqrt();
  if (head == "xpow" && has_arg) return TestFunction::pow_tau(parse_double(arg));
  if (head == "expi" && has_arg) return TestFunction::exp_i_omega(parse_double(arg));
  if (head == "const") return TestFunction::constant({has_arg ? parse_double(arg) : 1.0, 0.0});
  throw ConfigError("unknown function '" + std::string(text) + "'");
}

}  // namespace vtmap::harness
