#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "vtmap/approximant.hpp"

using vtmap::complex;
using vtmap::MapInstance;
using vtmap::PiecewiseApproximant;
using vtmap::TestFunction;
using vtmap::TransplantSpec;

namespace {

std::vector<TransplantSpec> specs() {
  return {{MapInstance::phi_e(), 10.0, 32},   {MapInstance::phi_s(1.0), 1.8, 100},
          {MapInstance::psi_e(), 6.0, 64},    {MapInstance::psi_s(0.3), 0.9, 80},
          {MapInstance::phi_s(0.05), 1.3, 17}, {MapInstance::psi_s(2.0), 3.0, 5}};
}

}  // namespace

TEST(TestFunction, Tags) {
  EXPECT_EQ(TestFunction::sqrt().tag(), "sqrt");
  EXPECT_EQ(TestFunction::pow_tau(0.25).tag(), "xpow:0.25");
  EXPECT_EQ(TestFunction::exp_i_omega(100).tag(), "expi:100");
  EXPECT_EQ(TestFunction::constant({1, 0}).tag(), "const");
  EXPECT_EQ(TestFunction::constant({-2.5, 0}).tag(), "const:-2.5");
  EXPECT_THROW(TestFunction::pow_tau(0.0), vtmap::DomainError);
}

TEST(TestFunction, Equivalences) {
  for (double x : {0.0, 1e-300, 1e-7, 0.3, 0.77, 1.0}) {
    EXPECT_EQ(TestFunction::sqrt()(x), TestFunction::pow_tau(0.5)(x));
    EXPECT_EQ(TestFunction::exp_i_omega(0)(x), TestFunction::constant({1, 0})(x));
  }
  const auto e = TestFunction::exp_i_omega(3.0)(0.25);
  EXPECT_NEAR(std::abs(e - complex{0, -1}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(TestFunction::exp_i_omega(350.0)(1.0) - complex{1, 0}), 0.0, 1e-15);
}

TEST(Build, ConstantIsExact) {
  for (const auto& spec : specs()) {
    for (const auto& f : {TestFunction::constant({1, 0}), TestFunction::exp_i_omega(0.0)}) {
      const auto p = vtmap::build(f, spec);
      EXPECT_LE(vtmap::sup_error(f, p), 1e-15);
      EXPECT_EQ(p(0.0), complex(1, 0));
      EXPECT_EQ(p(1.0), complex(1, 0));
    }
  }
}

TEST(Build, Geometry) {
  for (const auto& spec : specs()) {
    const auto p = vtmap::build(TestFunction::sqrt(), spec);
    EXPECT_EQ(p.x_left(), spec.map.truncation_point(spec.L));
    EXPECT_GT(p.x_left(), 0.0);
    EXPECT_LT(p.x_left(), p.x_right());
    EXPECT_LE(p.x_right(), 1.0);
    if (p.infinite()) {
      EXPECT_NEAR(p.x_right(), 1.0 - p.x_left(), 1e-15);
      EXPECT_EQ(p.tail_right(), TestFunction::sqrt()(p.x_right()));
    } else {
      EXPECT_EQ(p.x_right(), 1.0);
    }
    EXPECT_EQ(p.tail_left(), TestFunction::sqrt()(p.x_left()));
    EXPECT_EQ(p.node_images().size(), spec.n + 1);
  }
}

TEST(Build, DegreeZero) {
  const TransplantSpec spec{MapInstance::phi_e(), 4.0, 0};
  const auto p = vtmap::build(TestFunction::sqrt(), spec);
  EXPECT_EQ(p.core().degree(), 0u);
  EXPECT_EQ(p(1.0), complex(1, 0));
  EXPECT_NEAR(p.tail_left().real(), std::exp(-2.0), 1e-16);
  EXPECT_TRUE(std::isfinite(vtmap::sup_error(TestFunction::sqrt(), p, 64)));
}

TEST(Build, Errors) {
  EXPECT_THROW(vtmap::build(TestFunction::sqrt(), {MapInstance::phi_e(), 0.0, 8}), vtmap::DomainError);
  EXPECT_THROW(vtmap::build(TestFunction::pow_tau(1.0), {MapInstance::phi_e(), -1.0, 8}), vtmap::DomainError);
}

TEST(Evaluate, PiecewiseDefinition) {
  const auto f = TestFunction::sqrt();
  const auto p = vtmap::build(f, {MapInstance::phi_e(), 10.0, 32});
  EXPECT_EQ(p(0.0), p.tail_left());
  EXPECT_EQ(p(0.5 * p.x_left()), p.tail_left());
  EXPECT_NEAR(std::abs(p(1.0) - f(1.0)), 0.0, 4e-16);
  EXPECT_EQ(p.evaluate(1.0).second, PiecewiseApproximant::Piece::Core);
  EXPECT_THROW(p(-0.1), vtmap::DomainError);
  EXPECT_THROW(p(1.1), vtmap::DomainError);

  const auto q = vtmap::build(f, {MapInstance::psi_s(0.5), 1.0, 40});
  EXPECT_EQ(q(1.0), q.tail_right());
  EXPECT_EQ(q(0.0), q.tail_left());
  EXPECT_EQ(q.evaluate(0.5 * (1.0 + q.x_right())).second, PiecewiseApproximant::Piece::RightTail);
}

TEST(Evaluate, MatchesDirectComposition) {
  const auto f = TestFunction::exp_i_omega(3.3);
  for (const auto& spec : specs()) {
    const auto p = vtmap::build(f, spec);
    for (int i = 1; i < 50; ++i) {
      const double x = p.x_left() + (p.x_right() - p.x_left()) * i / 50.0;
      const double s = spec.map.forward(x);
      const double y = p.infinite() ? s / spec.L : 2.0 * s / spec.L + 1.0;
      EXPECT_NEAR(std::abs(p(x) - p.core()(y)), 0.0, 1e-14);
    }
  }
}

TEST(Evaluate, NodeReproduction) {
  for (const auto& f : {TestFunction::sqrt(), TestFunction::exp_i_omega(20.0), TestFunction::pow_tau(0.1)}) {
    for (const auto& spec : specs()) {
      const auto p = vtmap::build(f, spec);
      const auto nodes = vtmap::cheb_points(spec.n).nodes;
      double fmax = 0.0;
      for (double x : p.node_images()) fmax = std::max(fmax, std::abs(f(x)));
      // Coefficients of under-resolved oscillatory data carry ~1.6 n eps of
      // roundoff whichever transform computes them.
      const double factor = f.tag() == "expi:20" ? 2.0 : 1.0;
      const double tol = factor * (spec.n + 2) * 0x1p-52 * fmax;
      for (std::size_t j = 0; j <= spec.n; ++j) {
        const double x = p.node_images()[j];
        EXPECT_LE(std::abs(p.core()(nodes[j]) - f(x)), tol) << f.tag() << " y=" << nodes[j];
        // Through x the node is only known to a few ulps of x, which f' amplifies.
        double slope = 0.0;
        if (f.tag() == "expi:20") slope = 2.0 * std::numbers::pi * 20.0;
        const double ulp = std::nextafter(x, 2.0) - x;
        EXPECT_LE(std::abs(p(x) - f(x)), tol + 8.0 * slope * ulp) << f.tag() << " x=" << x;
      }
    }
  }
}

TEST(Evaluate, ContinuousAtCuts) {
  const auto f = TestFunction::sqrt();
  for (const auto& spec : specs()) {
    const auto p = vtmap::build(f, spec);
    const double xl = p.x_left();
    EXPECT_NEAR(std::abs(p(xl) - p.tail_left()), 0.0, 1e-14 * (1 + std::abs(p.tail_left())));
  }
}

TEST(SupError, EqualsMaxOfPieces) {
  const auto f = TestFunction::sqrt();
  for (const auto& spec : specs()) {
    const auto p = vtmap::build(f, spec);
    const auto b = vtmap::error_breakdown(f, p, 2048);
    const double total = vtmap::sup_error(f, p, 2048);
    EXPECT_EQ(total, std::max({b.core, b.left_tail, b.right_tail}));
    EXPECT_GE(total, b.core);
    EXPECT_GE(total, b.left_tail);
    EXPECT_GE(total, b.right_tail);
    if (!p.infinite()) {
      EXPECT_EQ(b.right_tail, 0.0);
    }
  }
}

TEST(SupError, PhiELeftTailBound) {
  const auto f = TestFunction::sqrt();
  for (double L : {2.0, 5.0, 10.0, 20.0}) {
    const auto p = vtmap::build(f, {MapInstance::phi_e(), L, 40});
    const auto b = vtmap::error_breakdown(f, p, 4096);
    EXPECT_LE(b.left_tail, 2.0 * std::sqrt(p.x_left()));
    EXPECT_GE(b.left_tail, 0.9 * std::sqrt(p.x_left()));  // the grid reaches down to x_L/10
  }
}

TEST(SupError, AgreesWithDenseIndependentGrid) {
  // sqrt on phi-s(1), L = 1.8, n = 100: dense log-spaced reference.
  const auto f = TestFunction::sqrt();
  const auto p = vtmap::build(f, {MapInstance::phi_s(1.0), 1.8, 100});
  double dense = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = std::pow(10.0, -12.0 + 12.0 * i / 200000.0);
    dense = std::max(dense, std::abs(f(x) - p(x)));
  }
  const double measured = vtmap::sup_error(f, p);
  EXPECT_NEAR(measured / dense, 1.0, 0.02);
}

TEST(SupError, GridSelfConvergence) {
  const auto f = TestFunction::sqrt();
  const std::vector<TransplantSpec> fig4 = {
      {MapInstance::phi_s(1.0), 0.23 * std::pow(200.0, 2.0 / 3.0), 200},
      {MapInstance::phi_s(1.0), 2.7 * std::pow(300.0, 2.0 / 3.0), 300},
      {MapInstance::phi_s(1.0 / std::sqrt(150.0)), 1.8, 150},
      {MapInstance::phi_s(4.0 / std::sqrt(400.0)), 1.8, 400},
  };
  for (const auto& spec : fig4) {
    const auto p = vtmap::build(f, spec);
    const double a = vtmap::sup_error(f, p, 10 * spec.n);
    const double b = vtmap::sup_error(f, p, 20 * spec.n);
    EXPECT_NEAR(b / a, 1.0, 0.05) << spec.n;
  }
}

TEST(ErrorReaches, MatchesSupError) {
  for (const auto& f : {TestFunction::exp_i_omega(30.0), TestFunction::sqrt()}) {
    for (const auto& spec : specs()) {
      const auto p = vtmap::build(f, spec);
      const auto grid = vtmap::error_grid(p, 2048);
      const double err = vtmap::error_breakdown(f, p, grid).total();
      for (double t : {0.5 * err, err, std::nextafter(err, 1.0), 2.0 * err, 1e-3, 0.5}) {
        EXPECT_EQ(vtmap::error_reaches(f, p, grid, t), err >= t) << f.tag() << " " << t;
      }
    }
  }
}

TEST(ErrorGrid, ContainsRequiredSets) {
  const auto p = vtmap::build(TestFunction::sqrt(), {MapInstance::psi_e(), 6.0, 64});
  const auto g = vtmap::error_grid(p, 256);
  EXPECT_TRUE(std::is_sorted(g.x.begin(), g.x.end()));
  EXPECT_EQ(g.x.front(), 0.0);
  EXPECT_EQ(g.x.back(), 1.0);
  for (double x : p.node_images()) EXPECT_TRUE(std::binary_search(g.x.begin(), g.x.end(), x));
  const auto below = std::count_if(g.x.begin(), g.x.end(), [&](double x) { return x > 0 && x < p.x_left(); });
  const auto above = std::count_if(g.x.begin(), g.x.end(), [&](double x) { return x > p.x_right() && x < 1; });
  EXPECT_GT(below, 50);
  EXPECT_GT(above, 50);
  EXPECT_THROW(vtmap::error_grid(p, 1), vtmap::DomainError);
}
