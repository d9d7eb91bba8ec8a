#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "balsa/quadrature.hpp"

using namespace balsa;

namespace {

// Fill the integrand field (ghosts included) from a function of x.
Field1D<double> sample_field(const GridSpec1D& grid, double (*f)(double)) {
  Field1D<double> out(grid.n);
  for (int j = -kGhostWidth; j < grid.n + kGhostWidth; ++j) out(j) = f(grid.x_center(j));
  return out;
}

double quartic(double x) { return x * x * x * x; }
double quartic_prim(double x) { return x * x * x * x * x / 5.0; }

}  // namespace

TEST(Rules, WeightSumsEqualIntervalLengths) {
  // f == 1: the seed covers half a cell, the advance rule one full cell.
  EXPECT_DOUBLE_EQ(quadrature::seed_integral(0.2, 1, 1, 1, 1, 1), 0.1);
  EXPECT_DOUBLE_EQ(quadrature::advance(0.2, 1, 1, 1, 1, 1), 0.2);
  EXPECT_DOUBLE_EQ(quadrature::seed_integral(0.2, 0, 0, 0, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(quadrature::advance(0.5, 0, 0, 0, 0, 0), 0.0);
}

TEST(Rules, ExactOnQuartic) {
  // Nodes of the advance rule: a, a+dx/4, ..., a+dx.
  const double a = 0.3, dx = 0.4;
  const double got = quadrature::advance(dx, quartic(a), quartic(a + 0.25 * dx),
                                         quartic(a + 0.5 * dx), quartic(a + 0.75 * dx),
                                         quartic(a + dx));
  const double expect = quartic_prim(a + dx) - quartic_prim(a);
  EXPECT_NEAR(got, expect, 1e-13 * std::abs(expect));

  // Seed rule: integrate over [a, a + dx/2] from the same five nodes.
  const double got_seed = quadrature::seed_integral(dx, quartic(a), quartic(a + 0.25 * dx),
                                                    quartic(a + 0.5 * dx), quartic(a + 0.75 * dx),
                                                    quartic(a + dx));
  const double expect_seed = quartic_prim(a + 0.5 * dx) - quartic_prim(a);
  EXPECT_NEAR(got_seed, expect_seed, 1e-13 * std::abs(expect_seed));
}

TEST(Ladders, ZeroAndConstantIntegrands) {
  GridSpec1D grid(0.0, 1.0, 16);
  {
    auto f = sample_field(grid, [](double) { return 0.0; });
    const auto s = quadrature::sample_integrand(f);
    const auto I = quadrature::build_ladders(grid, f, s);
    for (int i = -3; i <= grid.n + 2; ++i) EXPECT_DOUBLE_EQ(I.iface[i], 0.0);
    for (int j = -kGhostWidth; j < grid.n + kGhostWidth; ++j) EXPECT_DOUBLE_EQ(I.center[j], 0.0);
  }
  {
    auto f = sample_field(grid, [](double) { return 1.0; });
    const auto s = quadrature::sample_integrand(f);
    const auto I = quadrature::build_ladders(grid, f, s);
    for (int i = -2; i <= grid.n + 2; ++i)
      EXPECT_NEAR(I.iface[i] - I.iface[i - 1], grid.dx, 1e-15);
    // Center ladder spacing is dx as well; the seed is half a cell.
    EXPECT_NEAR(I.center[-3], 0.5 * grid.dx, 1e-15);
    for (int j = -4; j < grid.n + kGhostWidth - 1; ++j)
      EXPECT_NEAR(I.center[j + 1] - I.center[j], grid.dx, 1e-14);
  }
}

// On parabolic data the WENO-Z weights are exactly linear (tau = 0), so the
// whole sampled ladder inherits the rules' polynomial exactness.
TEST(Ladders, QuadraticDataExactEverywhere) {
  GridSpec1D grid(0.0, 2.0, 10);
  auto quad = [](double x) { return 0.7 * x * x - 0.3 * x + 1.1; };
  auto quad_prim = [](double x) { return 0.7 * x * x * x / 3.0 - 0.15 * x * x + 1.1 * x; };
  Field1D<double> f(grid.n);
  for (int j = -kGhostWidth; j < grid.n + kGhostWidth; ++j) f(j) = quad(grid.x_center(j));
  const auto s = quadrature::sample_integrand(f);
  const auto I = quadrature::build_ladders(grid, f, s);
  const double anchor = grid.x_iface(-3);
  for (int i = -3; i <= grid.n + 2; ++i) {
    const double expect = quad_prim(grid.x_iface(i)) - quad_prim(anchor);
    EXPECT_NEAR(I.iface[i], expect, 1e-13 * std::max(1.0, std::abs(expect)));
  }
  for (int j = -kGhostWidth; j < grid.n + kGhostWidth; ++j) {
    const double expect = quad_prim(grid.x_center(j)) - quad_prim(anchor);
    EXPECT_NEAR(I.center[j], expect, 1e-13 * std::max(1.0, std::abs(expect)));
  }
}

// The ghost-extension increments integrate the degree-4 polynomial through
// exact cell samples, so they are quartic-exact on their own.
TEST(Ladders, GhostExtensionIncrementsQuarticExact) {
  GridSpec1D grid(0.0, 2.0, 10);
  auto f = sample_field(grid, quartic);
  const auto s = quadrature::sample_integrand(f);
  const auto I = quadrature::build_ladders(grid, f, s);
  const int n = grid.n;
  const double left1 = quartic_prim(grid.x_center(-3)) - quartic_prim(grid.x_center(-4));
  const double left2 = quartic_prim(grid.x_center(-4)) - quartic_prim(grid.x_center(-5));
  EXPECT_NEAR(I.center[-3] - I.center[-4], left1, 1e-13 * std::max(1.0, std::abs(left1)));
  EXPECT_NEAR(I.center[-4] - I.center[-5], left2, 1e-13 * std::max(1.0, std::abs(left2)));
  const double right1 = quartic_prim(grid.x_center(n + 3)) - quartic_prim(grid.x_center(n + 2));
  const double right2 = quartic_prim(grid.x_center(n + 4)) - quartic_prim(grid.x_center(n + 3));
  EXPECT_NEAR(I.center[n + 3] - I.center[n + 2], right1, 1e-13 * std::abs(right1));
  EXPECT_NEAR(I.center[n + 4] - I.center[n + 3], right2, 1e-13 * std::abs(right2));
}

TEST(Ladders, FifthOrderOnSine) {
  // The interface ladder converges at (better than) fifth order until it
  // bottoms out at round-off.
  double prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int n = 20 << k;
    GridSpec1D grid(0.0, 1.0, n);
    auto f = sample_field(grid, [](double x) { return std::sin(x); });
    const auto s = quadrature::sample_integrand(f);
    const auto I = quadrature::build_ladders(grid, f, s);
    const double anchor = grid.x_iface(-3);
    const double exact = std::cos(anchor) - std::cos(grid.x_iface(n + 2));
    const double err = std::abs(I.iface[n + 2] - exact);
    if (k > 0 && err > 1e-15) EXPECT_GT(prev / err, 24.0);
    prev = err;
  }
  EXPECT_LT(prev, 1e-14);
}

TEST(Ladders, CenterAndInterfaceLaddersConsistent) {
  // |I_center(j) - interface ladder at the adjacent interface| = O(dx) but
  // their half-cell difference is a fifth-order quantity on smooth data.
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int n = 20 << k;
    GridSpec1D grid(0.0, 1.0, n);
    auto f = sample_field(grid, [](double x) { return std::sin(3.0 * x); });
    const auto s = quadrature::sample_integrand(f);
    const auto I = quadrature::build_ladders(grid, f, s);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const double exact_half = (std::cos(3.0 * grid.x_iface(j)) - std::cos(3.0 * grid.x_center(j))) / 3.0;
      worst = std::max(worst, std::abs((I.center[j] - I.iface[j]) - exact_half));
    }
    if (k > 0) EXPECT_GT(prev / worst, 20.0);
    prev = worst;
  }
}

TEST(GradQuad, VanishesOnConstantEExactly) {
  std::array<Mat<2>, 5> M;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (auto& m : M)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = dist(rng);
  const Vec<2> e = {2.5, -1.75};
  const std::array<Vec<2>, 5> E = {e, e, e, e, e};
  const Vec<2> q = quadrature::grad_quad_increment(M, E, e);
  EXPECT_EQ(q[0], 0.0);
  EXPECT_EQ(q[1], 0.0);
}

TEST(GradQuad, ConstantMGivesEndpointDifference) {
  std::array<Mat<1>, 5> M;
  for (auto& m : M) m(0, 0) = 2.0;
  std::array<Vec<1>, 5> E;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& e : E) e[0] = dist(rng);
  const Vec<1> q = quadrature::grad_quad_increment(M, E, E[2]);
  EXPECT_NEAR(q[0], 2.0 * (E[4][0] - E[0][0]), 1e-13);
}

TEST(GradQuad, MatchesAnalyticProductIntegral) {
  // M(x) = x on the unit cell nodes, E(x) = x^2: int_{-1/2}^{1/2} x d(x^2) = 1/6.
  std::array<Mat<1>, 5> M;
  std::array<Vec<1>, 5> E;
  const double nodes[5] = {-0.5, -0.25, 0.0, 0.25, 0.5};
  for (int a = 0; a < 5; ++a) {
    M[static_cast<std::size_t>(a)](0, 0) = nodes[a];
    E[static_cast<std::size_t>(a)][0] = nodes[a] * nodes[a];
  }
  const Vec<1> q = quadrature::grad_quad_increment(M, E, E[2]);
  EXPECT_NEAR(q[0], 1.0 / 6.0, 1e-14);
}
