#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "vtmap/harness/commands.hpp"

using namespace vtmap;
using namespace vtmap::harness;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(VTMAP_CLI) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

SweepConfig converge_config() {
  SweepConfig cfg;
  cfg.family = MapFamily::PhiS;
  cfg.regime = "grow-l";
  cfg.alpha = 1.0;
  cfg.c = 0.9;
  cfg.n = parse_n_range("10:15:100");
  cfg.fn = "sqrt";
  return cfg;
}

}  // namespace

TEST(Parse, Ranges) {
  EXPECT_EQ(parse_n_range("10:5:30"), (std::vector<std::size_t>{10, 15, 20, 25, 30}));
  EXPECT_EQ(parse_n_range("10:5:32"), (std::vector<std::size_t>{10, 15, 20, 25, 30}));
  EXPECT_EQ(parse_n_range("64"), (std::vector<std::size_t>{64}));
  EXPECT_THROW(parse_n_range("10:0:30"), ConfigError);
  EXPECT_THROW(parse_n_range("30:1:10"), ConfigError);
  EXPECT_THROW(parse_n_range("1:2"), ConfigError);
  EXPECT_THROW(parse_n_range("x"), ConfigError);
  EXPECT_EQ(parse_real_list("100:50:350"), (std::vector<double>{100, 150, 200, 250, 300, 350}));
  EXPECT_EQ(parse_real_list("0.1:0.1:0.3").size(), 3u);
  EXPECT_EQ(parse_real_list("100,200,350"), (std::vector<double>{100, 200, 350}));
  EXPECT_THROW(parse_real_list("1,,2"), ConfigError);
}

TEST(Parse, EpsilonAndFunctions) {
  EXPECT_EQ(parse_epsilon("2^-52"), 0x1p-52);
  EXPECT_EQ(parse_epsilon("1e-10"), 1e-10);
  EXPECT_NEAR(parse_epsilon("10^-8"), 1e-8, 1e-22);
  EXPECT_EQ(parse_function("sqrt").tag(), "sqrt");
  EXPECT_EQ(parse_function("xpow:0.3").tag(), "xpow:0.3");
  EXPECT_EQ(parse_function("expi:350").tag(), "expi:350");
  EXPECT_EQ(parse_function("const").tag(), "const");
  EXPECT_EQ(parse_function("const:2").tag(), "const:2");
  EXPECT_THROW(parse_function("sin"), ConfigError);
  EXPECT_THROW(parse_function("expi"), ConfigError);
}

TEST(Records, RoundTrip) {
  std::ostringstream out, err;
  cmd_converge(converge_config(), out, err);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.front(), RunRecord::kHeader);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto r = RunRecord::from_csv(rows[i]);
    EXPECT_EQ(r.to_csv(), rows[i]);
    EXPECT_GE(r.error, 0.0);
  }
  const ResolutionRecord rr{"psi-s", "fixed-l", 100, 0.5, 2, 442, 439.822971502571};
  EXPECT_EQ(ResolutionRecord::from_csv(rr.to_csv()), rr);
  ResolutionRecord none = rr;
  none.measured_R.reset();
  EXPECT_EQ(ResolutionRecord::from_csv(none.to_csv()), none);
  EXPECT_THROW(RunRecord::from_csv("a,b,1"), ConfigError);
  EXPECT_THROW(RunRecord::from_csv("phi-e,grow-l,3,,1,sqrt,-1,"), ConfigError);
}

TEST(Commands, ApproxMaxEqualsSupError) {
  SweepConfig cfg;
  cfg.family = MapFamily::PhiE;
  cfg.L = 10.0;
  cfg.n = {32};
  cfg.fn = "sqrt";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_approx(cfg, out, err), kOk);
  const auto rows = lines(out.str());
  EXPECT_EQ(rows.front(), "x,f_re,f_im,p_re,p_im,abs_err");
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) worst = std::max(worst, parse_double(split(rows[i], ',')[5]));
  const auto f = TestFunction::sqrt();
  EXPECT_EQ(worst, sup_error(f, build(f, {MapInstance::phi_e(), 10.0, 32})));
}

TEST(Commands, ApproxShrinkingAlphaReachesTolerance) {
  SweepConfig cfg;
  cfg.family = MapFamily::PhiS;
  cfg.regime = "fixed-l";
  cfg.alpha0 = 1.0;
  cfg.L = 1.8;
  cfg.n = {200};
  cfg.fn = "sqrt";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_approx(cfg, out, err), kOk);
  double worst = 0.0;
  const auto rows = lines(out.str());
  for (std::size_t i = 1; i < rows.size(); ++i) worst = std::max(worst, parse_double(split(rows[i], ',')[5]));
  EXPECT_LT(worst, 1e-6);
}

TEST(Commands, ConstantConvergesExactly) {
  auto cfg = converge_config();
  cfg.fn = "const";
  std::ostringstream out, err;
  cmd_converge(cfg, out, err);
  const auto rows = lines(out.str());
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(RunRecord::from_csv(rows[i]).error, 1e-14);
}

TEST(Commands, ConvergeEnvelopeAndSvg) {
  auto cfg = converge_config();
  cfg.tau = 0.5;
  cfg.d = 0.3;
  std::ostringstream out, err, env, svg;
  cmd_converge(cfg, out, err, &env, &svg);
  const auto e = lines(env.str());
  EXPECT_EQ(e.front(), "n,envelope");
  EXPECT_EQ(e.size(), 8u);
  EXPECT_NE(svg.str().find("<polyline"), std::string::npos);
  cfg.tau.reset();
  std::ostringstream env2;
  EXPECT_EQ(run_guarded(err, [&] { return cmd_converge(cfg, out, err, &env2); }), kUsage);
}

TEST(Commands, ResolveZeroOmegaAndNotResolved) {
  SweepConfig cfg;
  cfg.family = MapFamily::PsiS;
  cfg.regime = "fixed-l";
  cfg.alpha0 = 0.8;
  cfg.L0 = 0.2;
  cfg.omega = {50.0, 0.0};
  cfg.n = parse_n_range("5:5:40");
  std::ostringstream out, err;
  cmd_resolve(cfg, out, err);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], ResolutionRecord::kHeader);
  const auto zero = ResolutionRecord::from_csv(rows[1]);
  EXPECT_EQ(zero.omega, 0.0);
  EXPECT_EQ(zero.measured_R, 5u);
  EXPECT_EQ(zero.n_step, 5u);
  EXPECT_FALSE(ResolutionRecord::from_csv(rows[2]).measured_R.has_value());
  EXPECT_NE(err.str().find("not resolved"), std::string::npos);
}

TEST(Commands, PredictTableRows) {
  SweepConfig cfg;
  cfg.family = MapFamily::PhiS;
  cfg.regime = "fixed-l";
  cfg.alpha0 = 1.0;
  cfg.L0 = 0.2;
  cfg.tau = 0.5;
  std::ostringstream out, err, csv;
  cmd_predict(cfg, out, err, &csv);
  EXPECT_NE(out.str().find("r: (1+L0)pi = 1.2pi"), std::string::npos);
  cfg.family = MapFamily::PsiS;
  out.str("");
  cmd_predict(cfg, out, err);
  EXPECT_NE(out.str().find("r: (1+2L0)pi = 1.4pi"), std::string::npos);

  SweepConfig e;
  e.family = MapFamily::PhiE;
  e.c = 0.15;
  e.d = 0.5;
  e.tau = 0.5;
  out.str("");
  cmd_predict(e, out, err);
  EXPECT_NE(out.str().find("r: inf"), std::string::npos);
  EXPECT_NE(out.str().find("d.o.f.: O(omega^{3/2})"), std::string::npos);
  e.d.reset();
  EXPECT_EQ(run_guarded(err, [&] { return cmd_predict(e, out, err); }), kUsage);
}

TEST(Commands, ExitCodes) {
  std::ostringstream out, err;
  SweepConfig cfg;
  cfg.family = MapFamily::PsiS;
  cfg.alpha = 0.004;
  cfg.L = 1.0;
  cfg.n = {10};
  cfg.fn = "sqrt";
  EXPECT_EQ(run_guarded(err, [&] { return cmd_approx(cfg, out, err); }), kNumeric);
  EXPECT_NE(err.str().find("floor"), std::string::npos);
  cfg.alpha = 0.5;
  cfg.fn.reset();
  EXPECT_EQ(run_guarded(err, [&] { return cmd_approx(cfg, out, err); }), kUsage);
  cfg.fn = "sqrt";
  cfg.regime = "sideways";
  EXPECT_EQ(run_guarded(err, [&] { return cmd_approx(cfg, out, err); }), kUsage);
  cfg.regime = "fixed-l";
  cfg.family = MapFamily::PhiE;
  cfg.alpha0 = 1.0;
  cfg.L0 = 0.2;
  EXPECT_EQ(run_guarded(err, [&] { return cmd_approx(cfg, out, err); }), kUsage);
}

TEST(Parallel, OrderAndThreadIndependence) {
  std::vector<int> in(50);
  for (int i = 0; i < 50; ++i) in[i] = i;
  setenv("VTMAP_THREADS", "4", 1);
  const auto a = parallel_map(in, [](int v) { return v * v; });
  setenv("VTMAP_THREADS", "1", 1);
  const auto b = parallel_map(in, [](int v) { return v * v; });
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[7], 49);
  EXPECT_THROW(parallel_map(in, [](int v) { return v == 13 ? throw ConfigError("x"), 0 : v; }), ConfigError);

  auto cfg = converge_config();
  std::ostringstream one, four, err;
  cmd_converge(cfg, one, err);
  setenv("VTMAP_THREADS", "4", 1);
  cmd_converge(cfg, four, err);
  unsetenv("VTMAP_THREADS");
  EXPECT_EQ(one.str(), four.str());
}

TEST(Cli, ExitCodesAndDeterminism) {
  EXPECT_EQ(run_cli("approx --map phi-e --L 10 --n 32 --fn sqrt --out /dev/null"), 0);
  EXPECT_EQ(run_cli("approx --map psi-s --alpha 0.004 --L 1 --n 10 --fn sqrt --out /dev/null"), 2);
  EXPECT_EQ(run_cli("approx --map nope --L 1 --n 10 --fn sqrt"), 1);
  EXPECT_EQ(run_cli("approx --map phi-e --n 10 --fn sqrt --bogus 3"), 1);
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("predict --map phi-e --c 0.15 > /dev/null"), 1);
  EXPECT_EQ(run_cli("converge --map phi-s --regime tolerance --n 1000:1000:3000 --fn sqrt --out /dev/null"), 2);

  const std::string dir = ::testing::TempDir();
  const std::string runs[] = {
      "converge --map psi-s --regime fixed-l --alpha0 1.1 --L 1.3 --n 10:30:250 --fn sqrt",
      "resolve --map phi-s --regime fixed-l --alpha0 0.7 --L0 0.2 --omega 20:20:60",
      "approx --map psi-e --L 5 --n 40 --fn expi:7",
      "predict --map psi-s --regime grow-l --alpha 0.5 --c 0.3 --tau 0.5 --beta 0.4",
  };
  int k = 0;
  for (const auto& args : runs) {
    const std::string a = dir + "/det_a" + std::to_string(k) + ".csv";
    const std::string b = dir + "/det_b" + std::to_string(k) + ".csv";
    ++k;
    ASSERT_EQ(run_cli(args + " --out " + a + " > /dev/null"), 0) << args;
    ASSERT_EQ(run_cli(args + " --out " + b + " > /dev/null"), 0) << args;
    const std::string first = slurp(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(b)) << args;
    EXPECT_EQ(first.find('\r'), std::string::npos);
  }
}
