#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "balsa/aiweno.hpp"

using namespace balsa;
using aiweno::InterpOffset;
using aiweno::Stencil5;

namespace {

Stencil5 sample(double (*f)(double), double xc, double dx) {
  Stencil5 s;
  for (int l = -2; l <= 2; ++l) s[static_cast<std::size_t>(l + 2)] = f(xc + l * dx);
  return s;
}

}  // namespace

TEST(LinearWeights, HalfPointValuesMatchMomentSystem) {
  const auto g = aiweno::linear_weights(InterpOffset::PlusHalf);
  EXPECT_NEAR(g[0], 1.0 / 16.0, 1e-14);
  EXPECT_NEAR(g[1], 10.0 / 16.0, 1e-14);
  EXPECT_NEAR(g[2], 5.0 / 16.0, 1e-14);
  const auto gm = aiweno::linear_weights(InterpOffset::MinusHalf);
  EXPECT_NEAR(gm[0], 5.0 / 16.0, 1e-14);
  EXPECT_NEAR(gm[1], 10.0 / 16.0, 1e-14);
  EXPECT_NEAR(gm[2], 1.0 / 16.0, 1e-14);
}

TEST(LinearWeights, QuarterPointsAreMirrorSymmetricAndNormalized) {
  const auto gp = aiweno::linear_weights(InterpOffset::PlusQuarter);
  const auto gm = aiweno::linear_weights(InterpOffset::MinusQuarter);
  EXPECT_NEAR(gp[0] + gp[1] + gp[2], 1.0, 1e-14);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(gp[static_cast<std::size_t>(i)], gm[static_cast<std::size_t>(2 - i)], 1e-14);
    EXPECT_GT(gp[static_cast<std::size_t>(i)], 0.0);
  }
}

// The weighted combination of sub-stencil quadratics must equal the unique
// degree-4 interpolant on arbitrary data.
TEST(LinearWeights, CombinationReproducesDegree4OnRandomData) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (auto s : {InterpOffset::MinusHalf, InterpOffset::MinusQuarter, InterpOffset::PlusQuarter,
                 InterpOffset::PlusHalf}) {
    const auto g = aiweno::linear_weights(s);
    const double sv = aiweno::offset_value(s);
    for (int trial = 0; trial < 200; ++trial) {
      Stencil5 f;
      for (auto& v : f) v = dist(rng);
      double combo = 0.0;
      for (int i = 0; i < 3; ++i)
        combo += g[static_cast<std::size_t>(i)] * aiweno::sub_quadratic(i, f, sv);
      EXPECT_NEAR(combo, aiweno::degree4(f, sv), 1e-11);
    }
  }
}

TEST(SmoothnessIndicators, ConstantAndLinearStencils) {
  const auto bc = aiweno::smoothness_indicators({3.0, 3.0, 3.0, 3.0, 3.0});
  EXPECT_EQ(bc[0], 0.0);
  EXPECT_EQ(bc[1], 0.0);
  EXPECT_EQ(bc[2], 0.0);
  const auto bl = aiweno::smoothness_indicators({-2.0, -1.0, 0.0, 1.0, 2.0});
  EXPECT_NEAR(bl[0], 1.0, 1e-15);
  EXPECT_NEAR(bl[1], 1.0, 1e-15);
  EXPECT_NEAR(bl[2], 1.0, 1e-15);
}

TEST(SmoothnessIndicators, SpikeStencil) {
  const auto b = aiweno::smoothness_indicators({0.0, 0.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(b[0], 13.0 / 12.0 + 9.0 / 4.0, 1e-14);
  EXPECT_NEAR(b[1], 13.0 / 3.0, 1e-14);
  EXPECT_NEAR(b[2], 13.0 / 12.0 + 9.0 / 4.0, 1e-14);
}

TEST(Interpolate, ConstantConsistency) {
  for (auto s : {InterpOffset::MinusHalf, InterpOffset::MinusQuarter, InterpOffset::PlusQuarter,
                 InterpOffset::PlusHalf}) {
    EXPECT_DOUBLE_EQ(aiweno::interpolate({4.25, 4.25, 4.25, 4.25, 4.25}, s), 4.25);
  }
}

TEST(Interpolate, LinearDataExact) {
  const double dx = 0.1, x0 = 2.0;
  Stencil5 f;
  for (int l = -2; l <= 2; ++l) f[static_cast<std::size_t>(l + 2)] = 3.0 * (x0 + l * dx) - 1.0;
  EXPECT_NEAR(aiweno::interpolate(f, InterpOffset::PlusHalf), 3.0 * (x0 + 0.5 * dx) - 1.0, 1e-12);
  EXPECT_NEAR(aiweno::interpolate(f, InterpOffset::MinusQuarter), 3.0 * (x0 - 0.25 * dx) - 1.0,
              1e-12);
}

TEST(Interpolate, SmoothQuarticNearDegree4) {
  // On well-resolved quartic data the nonlinear weights sit close enough to
  // the linear ones that the degree-4 (exact) value is hit to 1e-12.
  auto quartic = [](double x) { return x * x * x * x; };
  const double dx = 0.01, xc = 0.7;
  const auto f = sample(quartic, xc, dx);
  const double got = aiweno::interpolate(f, InterpOffset::PlusQuarter);
  EXPECT_NEAR(got, quartic(xc + 0.25 * dx), 1e-12 * std::max(1.0, std::abs(got)));
}

TEST(Interpolate, AffineEquivariance) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (double lambda : {1e-8, 1.0, 1e8}) {
    for (int trial = 0; trial < 100; ++trial) {
      Stencil5 f;
      for (auto& v : f) v = dist(rng);
      const double c = dist(rng);
      for (auto s : {InterpOffset::MinusHalf, InterpOffset::PlusQuarter}) {
        const double base = aiweno::interpolate(f, s);
        Stencil5 g;
        for (int i = 0; i < 5; ++i)
          g[static_cast<std::size_t>(i)] = lambda * f[static_cast<std::size_t>(i)] + c;
        const double mapped = aiweno::interpolate(g, s);
        const double expect = lambda * base + c;
        EXPECT_NEAR(mapped, expect, 1e-12 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST(Interpolate, FifthOrderOnSine) {
  double prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double dx = 1.0 / (20 << k);
    double err = 0.0;
    for (int j = 0; j < 200; ++j) {
      const double xc = 0.005 + j * 0.005;
      const auto f = sample([](double x) { return std::sin(x); }, xc, dx);
      err = std::max(err, std::abs(aiweno::interpolate(f, InterpOffset::PlusHalf) -
                                   std::sin(xc + 0.5 * dx)));
    }
    if (k > 0) {
      const double factor = prev / err;
      EXPECT_GE(factor, 25.0);
      EXPECT_LE(factor, 40.0);
    }
    prev = err;
  }
}

TEST(Interpolate, StaysNearStencilRangeAndFinite) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    Stencil5 f;
    for (auto& v : f) v = dist(rng);
    double lo = f[0], hi = f[0];
    for (double v : f) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (auto s : {InterpOffset::MinusHalf, InterpOffset::PlusHalf}) {
      const double v = aiweno::interpolate(f, s);
      ASSERT_TRUE(std::isfinite(v));
      // Degree-4 overshoot bound on [-1/2, 1/2] stays within ~2.5x the range.
      const double margin = 2.5 * (hi - lo) + 1e-12;
      EXPECT_GE(v, lo - margin);
      EXPECT_LE(v, hi + margin);
    }
  }
}

TEST(Interpolate, RejectsNonFiniteInput) {
  EXPECT_THROW(aiweno::interpolate({1.0, 2.0, std::nan(""), 0.0, 1.0}, InterpOffset::PlusHalf),
               input_error);
  EXPECT_THROW(
      aiweno::interpolate({1.0, 2.0, std::numeric_limits<double>::infinity(), 0.0, 1.0},
                          InterpOffset::MinusHalf),
      input_error);
}
