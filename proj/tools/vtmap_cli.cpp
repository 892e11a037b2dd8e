// vtmap: approximation builds, convergence and resolution sweeps, predictions.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "vtmap/harness/commands.hpp"

namespace {

using namespace vtmap;
using namespace vtmap::harness;

struct RawFlags {
  std::string map = "phi-e";
  std::optional<std::string> regime, alpha, alpha0, L, L0, c, sigma, p, epsilon, n, omega, delta, fn,
      grid_size, out, svg, envelope, d, tau, beta;
};

void add_flags(CLI::App* cmd, RawFlags& f) {
  cmd->add_option("--map", f.map, "phi-e | phi-s | psi-e | psi-s")->required();
  cmd->add_option("--regime", f.regime, "grow-l | fixed-l | tolerance");
  cmd->add_option("--alpha", f.alpha, "strip half-width");
  cmd->add_option("--alpha0", f.alpha0, "alpha = alpha0/sqrt(n)");
  cmd->add_option("--L", f.L, "truncation length");
  cmd->add_option("--L0", f.L0, "L = 1 + L0 (phi-s) or 1/2 + L0 (psi-s)");
  cmd->add_option("--c", f.c, "L = c n^{2/3} (phi) or c sqrt(n) (psi)");
  cmd->add_option("--sigma", f.sigma, "tolerance schedule sigma (3.5)");
  cmd->add_option("--p", f.p, "tolerance schedule rate p (2/3)");
  cmd->add_option("--epsilon", f.epsilon, "target tolerance, e.g. 2^-52");
  cmd->add_option("--n", f.n, "degree or start:step:stop");
  cmd->add_option("--omega", f.omega, "frequencies: start:step:stop or a,b,c");
  cmd->add_option("--delta", f.delta, "resolution threshold (0.5)");
  cmd->add_option("--fn", f.fn, "sqrt | xpow:TAU | expi:OMEGA | const");
  cmd->add_option("--grid-size", f.grid_size, "error grid size (max(2048, 20n))");
  cmd->add_option("--out", f.out, "CSV output path (stdout if absent)");
  cmd->add_option("--svg", f.svg, "SVG plot path");
  cmd->add_option("--envelope", f.envelope, "converge: predicted envelope CSV path");
  cmd->add_option("--d", f.d, "parabolic analyticity parameter d");
  cmd->add_option("--tau", f.tau, "endpoint Hoelder exponent tau");
  cmd->add_option("--beta", f.beta, "strip half-width of analyticity beta");
}

std::optional<double> real(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return parse_double(*s);
}

SweepConfig to_config(const RawFlags& f) {
  SweepConfig cfg;
  const auto family = parse_map_family(f.map);
  if (!family) throw ConfigError("unknown map '" + f.map + "'");
  cfg.family = *family;
  cfg.regime = f.regime;
  cfg.alpha = real(f.alpha);
  cfg.alpha0 = real(f.alpha0);
  cfg.L = real(f.L);
  cfg.L0 = real(f.L0);
  cfg.c = real(f.c);
  cfg.sigma = real(f.sigma);
  cfg.p = real(f.p);
  if (f.epsilon) cfg.epsilon = parse_epsilon(*f.epsilon);
  if (f.n) cfg.n = parse_n_range(*f.n);
  if (f.omega) cfg.omega = parse_real_list(*f.omega);
  if (f.delta) cfg.delta = parse_double(*f.delta);
  cfg.fn = f.fn;
  if (f.grid_size) cfg.grid_size = parse_size(*f.grid_size);
  cfg.d = real(f.d);
  cfg.tau = real(f.tau);
  cfg.beta = real(f.beta);
  return cfg;
}

std::unique_ptr<std::ofstream> open_file(const std::optional<std::string>& path) {
  if (!path) return nullptr;
  auto file = std::make_unique<std::ofstream>(*path, std::ios::binary);
  if (!*file) throw ConfigError("cannot open '" + *path + "' for writing");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential variable-transform approximation harness"};
  app.require_subcommand(1);
  RawFlags flags;
  auto* approx = app.add_subcommand("approx", "build one approximant and sample its error");
  auto* converge = app.add_subcommand("converge", "sup error over a range of n");
  auto* resolve = app.add_subcommand("resolve", "measured and predicted resolution per omega");
  auto* predict = app.add_subcommand("predict", "predicted convergence and resolution constants");
  for (auto* cmd : {approx, converge, resolve, predict}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  return run_guarded(std::cerr, [&] {
    const SweepConfig cfg = to_config(flags);
    auto out_file = open_file(flags.out);
    auto svg_file = open_file(flags.svg);
    std::ostream& out = out_file ? static_cast<std::ostream&>(*out_file) : std::cout;
    if (approx->parsed()) return cmd_approx(cfg, out, std::cerr);
    if (converge->parsed()) {
      auto env_file = open_file(flags.envelope);
      return cmd_converge(cfg, out, std::cerr, env_file.get(), svg_file.get());
    }
    if (resolve->parsed()) return cmd_resolve(cfg, out, std::cerr, svg_file.get());
    return cmd_predict(cfg, std::cout, std::cerr, out_file.get());
  });
}
