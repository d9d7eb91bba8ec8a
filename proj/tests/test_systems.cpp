#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "balsa/systems/euler.hpp"
#include "balsa/systems/nozzle.hpp"
#include "balsa/systems/saint_venant.hpp"
#include "balsa/systems/two_layer.hpp"

using namespace balsa;

namespace {
constexpr double kGammaAir = 1.4;

template <int N>
void expect_vec_near(const Vec<N>& a, const Vec<N>& b, double tol) {
  for (int c = 0; c < N; ++c) EXPECT_NEAR(a[c], b[c], tol * std::max(1.0, std::abs(b[c])));
}
}  // namespace

// ---------------------------------------------------------------------------
// Saint-Venant
// ---------------------------------------------------------------------------

TEST(SaintVenant, LakeAtRestEquilibrium) {
  SaintVenantModel m(9.812, 0.0);
  const double C = 3.0;
  for (double z : {0.0, 0.4, 1.1}) {
    const auto e = m.equilibrium({C - z, 0.0}, z, {0.0});
    EXPECT_DOUBLE_EQ(e[0], 0.0);
    EXPECT_NEAR(e[1], 9.812 * C, 1e-12);
  }
}

TEST(SaintVenant, RestRecoveryDegeneratesToLinear) {
  SaintVenantModel m(9.812, 0.0);
  const auto u = m.recover({0.0, 9.812 * 2.0}, 0.0, {0.0}, {1.0, 0.0});
  EXPECT_NEAR(u[0], 2.0, 1e-13);
}

TEST(SaintVenant, CMatrixAndSpeeds) {
  SaintVenantModel m(1.0, 0.0);
  const Vec<2> u = {1.0, 2.0};  // h=1, q=2 -> u=2
  const auto C = m.c_matrix(u, 0.0);
  EXPECT_DOUBLE_EQ(C(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(C(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(C(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(C(1, 1), 2.0);
  const auto b = m.char_basis(u, 0.0);
  EXPECT_NEAR(b.lambda[0], 1.0, 1e-14);
  EXPECT_NEAR(b.lambda[1], 3.0, 1e-14);
  const auto s = m.speeds({1.0, 0.0}, 0.0);
  EXPECT_NEAR(s.first, -1.0, 1e-14);
  EXPECT_NEAR(s.second, 1.0, 1e-14);
  const auto f = m.flux({1.0, 0.0}, 0.0);
  EXPECT_DOUBLE_EQ(f[0], 0.0);
  EXPECT_NEAR(f[1], 0.5, 1e-14);
}

TEST(SaintVenant, AnalyticBasisDiagonalizesC) {
  SaintVenantModel m(9.812, 0.1);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dh(0.2, 3.0), dq(-4.0, 4.0);
  for (int t = 0; t < 200; ++t) {
    const Vec<2> u = {dh(rng), dq(rng)};
    const auto b = m.char_basis(u, 0.0);
    const auto C = m.c_matrix(u, 0.0);
    Mat<2> L;
    L(0, 0) = b.lambda[0];
    L(1, 1) = b.lambda[1];
    EXPECT_LT((b.Q * L * b.Qinv - C).max_abs(), 1e-11 * (1.0 + C.max_abs()));
    EXPECT_LT((b.Q * b.Qinv - Mat<2>::identity()).max_abs(), 1e-12);
  }
}

TEST(SaintVenant, RoundTripRandomStates) {
  SaintVenantModel m(9.812, 0.15);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dh(0.1, 4.0), dq(-6.0, 6.0), dz(-1.0, 1.0), di(-0.5, 0.5);
  for (int t = 0; t < 2000; ++t) {
    const Vec<2> u = {dh(rng), dq(rng)};
    const double z = dz(rng);
    const std::array<double, 1> I = {di(rng)};
    const auto e = m.equilibrium(u, z, I);
    const auto back = m.recover(e, z, I, u);
    expect_vec_near<2>(back, u, 1e-12);
  }
}

TEST(SaintVenant, Example4SteadyRoundTrip) {
  SaintVenantModel m(9.812, 0.15);
  const Vec<2> u = {2.0, 4.42};
  const auto e = m.equilibrium(u, 0.0, {0.3});
  const auto back = m.recover(e, 0.0, {0.3}, {1.9, 4.42});
  EXPECT_NEAR(back[0], 2.0, 1e-12);
}

TEST(SaintVenant, HattedRecoveryContinuousTopography) {
  SaintVenantModel m(9.812, 0.0);
  const Vec<2> u = {1.3, 2.1};
  const auto e = m.equilibrium(u, 0.7, {0.0});
  // Z+ == Z-: the averaged-topography depth equals the one-sided depth.
  const auto hat = m.recover(e, 0.7, {0.0}, u);
  expect_vec_near<2>(hat, u, 1e-13);
}

TEST(SaintVenant, FrictionIntegrandFormula) {
  SaintVenantModel m(9.812, 0.4);
  const Vec<2> u = {0.8, -1.5};
  const double expect = 9.812 * 0.16 * (-1.5) * 1.5 * std::pow(0.8, -10.0 / 3.0);
  EXPECT_NEAR(m.integrand(u, 0.0)[0], expect, 1e-13 * std::abs(expect));
  SaintVenantModel frictionless(9.812, 0.0);
  EXPECT_DOUBLE_EQ(frictionless.integrand(u, 0.0)[0], 0.0);
}

// ---------------------------------------------------------------------------
// Nozzle
// ---------------------------------------------------------------------------

TEST(Nozzle, RestRecoveryClosedForm) {
  NozzleModel m(kGammaAir, 1.0);
  const double sigma = 1.3, E = 5.0;
  const auto u = m.recover({0.0, E}, sigma, {}, {1.0, 0.0});
  const double rho = std::pow((kGammaAir - 1.0) * E / (kGammaAir), 1.0 / (kGammaAir - 1.0));
  EXPECT_NEAR(u[0], sigma * rho, 1e-12);
}

TEST(Nozzle, Example1EquilibriumRoundTrip) {
  NozzleModel m(kGammaAir, 1.0);
  const double q = 8.0, E = 21.9230562619897;
  for (double sigma : {0.2285, 0.976, 1.723}) {
    for (bool super : {true, false}) {
      const double a_sonic =
          std::pow(q * q * std::pow(sigma, kGammaAir - 1.0) / kGammaAir, 1.0 / (kGammaAir + 1.0));
      const Vec<2> ref = {super ? 0.5 * a_sonic : 2.0 * a_sonic, q};
      const auto u = m.recover({q, E}, sigma, {}, ref);
      const auto e = m.equilibrium(u, sigma, {});
      EXPECT_NEAR(e[1], E, 1e-12 * E);
      EXPECT_EQ(u[0] < a_sonic, super);
    }
  }
}

TEST(Nozzle, RecoveryContinuityUnderSmallEPerturbation) {
  NozzleModel m(kGammaAir, 1.0);
  const double q = 8.0, E = 21.9230562619897, sigma = 1.0;
  const auto u0 = m.recover({q, E}, sigma, {}, {40.0, q});
  const auto u1 = m.recover({q, E + 1e-6}, sigma, {}, {40.0, q});
  EXPECT_LT(std::abs(u1[0] - u0[0]), 1e-3);
  EXPECT_GT(std::abs(u1[0] - u0[0]), 0.0);
}

TEST(Nozzle, RoundTripRandomStates) {
  NozzleModel m(kGammaAir, 1.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> da(0.2, 5.0), du(-3.0, 3.0), ds(0.3, 2.0);
  for (int t = 0; t < 2000; ++t) {
    const double sigma = ds(rng);
    const Vec<2> u = {da(rng), da(rng) * du(rng)};
    const auto e = m.equilibrium(u, sigma, {});
    const auto back = m.recover(e, sigma, {}, u);
    expect_vec_near<2>(back, u, 1e-11);
  }
}

TEST(Nozzle, AnalyticBasisDiagonalizesC) {
  NozzleModel m(kGammaAir, 1.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> da(0.2, 5.0), dq(-6.0, 6.0), ds(0.3, 2.0);
  for (int t = 0; t < 200; ++t) {
    const Vec<2> u = {da(rng), dq(rng)};
    const double sigma = ds(rng);
    const auto b = m.char_basis(u, sigma);
    const auto C = m.c_matrix(u, sigma);
    Mat<2> L;
    L(0, 0) = b.lambda[0];
    L(1, 1) = b.lambda[1];
    EXPECT_LT((b.Q * L * b.Qinv - C).max_abs(), 1e-10 * (1.0 + C.max_abs()));
  }
}

// ---------------------------------------------------------------------------
// Two-layer
// ---------------------------------------------------------------------------

TEST(TwoLayer, RestRecoveryClosedForm) {
  TwoLayerModel m(10.0, 0.98);
  const Vec<4> u = {1.2, 0.0, 0.8, 0.0};
  const double z = -1.0;
  const auto e = m.equilibrium(u, z, {});
  const auto back = m.recover(e, z, {}, {1.0, 0.0, 1.0, 0.0});
  expect_vec_near<4>(back, u, 1e-12);
}

TEST(TwoLayer, Example5StateIsEquilibriumAtGTen) {
  TwoLayerModel m(10.0, 0.98);
  const Vec<4> left = {1.22373355048230, 12.0, 0.968329515483846, 10.0};
  const Vec<4> right = {1.44970064153589, 12.0, 1.12439026921484, 10.0};
  const auto el = m.equilibrium(left, -2.0, {});
  const auto er = m.equilibrium(right, -1.0, {});
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(el[c], er[c], 1e-11 * std::max(1.0, std::abs(el[c])));
  // Round trip the left state through its own equilibrium values.
  const auto back = m.recover(el, -2.0, {}, left);
  expect_vec_near<4>(back, left, 1e-12);
}

TEST(TwoLayer, RoundTripRandomStates) {
  TwoLayerModel m(10.0, 0.98);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dh(0.3, 2.5), dq(-2.0, 2.0), dz(-2.0, 0.0);
  int recovered = 0;
  for (int t = 0; t < 2000; ++t) {
    const Vec<4> u = {dh(rng), dq(rng), dh(rng), dq(rng)};
    const double z = dz(rng);
    const auto e = m.equilibrium(u, z, {});
    bool fb = false;
    const auto back = m.recover(e, z, {}, u, &fb);
    ASSERT_FALSE(fb);
    expect_vec_near<4>(back, u, 1e-11);
    ++recovered;
  }
  EXPECT_EQ(recovered, 2000);
}

TEST(TwoLayer, JacobianConsistencyUnderSymmetricPerturbation) {
  TwoLayerModel m(10.0, 0.98);
  const Vec<4> u = {1.1, 0.9, 0.7, -0.4};
  const double z = -0.5;
  const auto e = m.equilibrium(u, z, {});
  const double d = 1e-8;
  Vec<4> ep = e;
  ep[1] += d;
  ep[3] += d;
  const auto up = m.recover(ep, z, {}, u);
  // Finite difference of the forward map along the recovered direction.
  const auto echeck = m.equilibrium(up, z, {});
  EXPECT_NEAR(echeck[1] - e[1], d, 1e-11);
  EXPECT_NEAR(echeck[3] - e[3], d, 1e-11);
}

TEST(TwoLayer, SpeedsBracketSingleLayerForSmallRatio) {
  // r -> 0 decouples the layers up to the one-way h2 forcing; the extreme
  // eigenvalues approach the single-layer bounds of the faster layer.
  TwoLayerModel m(9.812, 1e-6);
  const Vec<4> u = {1.0, 0.5, 2.0, -0.8};
  const auto s = m.speeds(u, 0.0);
  const double c1 = std::sqrt(9.812 * 1.0), c2 = std::sqrt(9.812 * 2.0);
  const double lo = std::min(0.5 / 1.0 - c1, -0.8 / 2.0 - c2);
  const double hi = std::max(0.5 / 1.0 + c1, -0.8 / 2.0 + c2);
  EXPECT_NEAR(s.first, lo, 1e-3);
  EXPECT_NEAR(s.second, hi, 1e-3);
}

TEST(TwoLayer, LargeShearLosesHyperbolicity) {
  TwoLayerModel m(9.812, 0.98);
  // Nearly equal densities with strong shear: internal eigenvalues go complex.
  const Vec<4> u = {1.0, 3.0, 1.0, -3.0};
  EXPECT_THROW(m.char_basis(u, 0.0), hyperbolicity_error);
}

TEST(TwoLayer, CMatrixMatchesFiniteDifferenceProduct) {
  // C = dE/dU * M for the local equilibrium function.
  TwoLayerModel m(10.0, 0.98);
  const Vec<4> u = {1.3, 0.7, 0.9, -0.2};
  const double z = -0.3;
  const auto C = m.c_matrix(u, z);
  const auto M = m.m_matrix(u, z);
  const double d = 1e-7;
  Mat<4> dEdU;
  for (int c = 0; c < 4; ++c) {
    Vec<4> up = u, um = u;
    up[c] += d;
    um[c] -= d;
    const auto ep = m.equilibrium(up, z, {});
    const auto em = m.equilibrium(um, z, {});
    for (int r = 0; r < 4; ++r) dEdU(r, c) = (ep[r] - em[r]) / (2.0 * d);
  }
  EXPECT_LT((dEdU * M - C).max_abs(), 1e-5);
}

// ---------------------------------------------------------------------------
// Euler 1-D
// ---------------------------------------------------------------------------

namespace {
Vec<3> euler_state(double rho, double u, double p, double phi, double gamma) {
  return {rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u + rho * phi};
}
}  // namespace

TEST(Euler1D, PrintedCMatrixAtRest) {
  Euler1DModel m(kGammaAir);
  const auto u = euler_state(1.0, 0.0, 1.0, 0.0, kGammaAir);
  const auto C = m.c_matrix(u, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(C(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(C(0, 1), 1.0);
  EXPECT_NEAR(C(1, 0), 1.4, 1e-14);  // c^2
  EXPECT_DOUBLE_EQ(C(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(C(1, 2), 0.0);  // (gamma-1) m with m = 0
  EXPECT_NEAR(C(2, 0), 1.4, 1e-14);
  EXPECT_DOUBLE_EQ(C(2, 1), 0.0);
  EXPECT_DOUBLE_EQ(C(2, 2), 0.0);
}

TEST(Euler1D, AnalyticBasisDiagonalizesC) {
  Euler1DModel m(kGammaAir);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dr(0.3, 3.0), du(-2.0, 2.0), dp(0.4, 3.0), dphi(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double phi = dphi(rng);
    const auto u = euler_state(dr(rng), du(rng), dp(rng), phi, kGammaAir);
    const GravityPoint g{phi, 1.0};
    const auto b = m.char_basis(u, g);
    const auto C = m.c_matrix(u, g);
    Mat<3> L;
    for (int i = 0; i < 3; ++i) L(i, i) = b.lambda[i];
    EXPECT_LT((b.Q * L * b.Qinv - C).max_abs(), 1e-10 * (1.0 + C.max_abs()));
    EXPECT_LT((b.Q * b.Qinv - Mat<3>::identity()).max_abs(), 1e-11);
    EXPECT_LE(b.lambda[0], b.lambda[1]);
    EXPECT_LE(b.lambda[1], b.lambda[2]);
  }
}

TEST(Euler1D, QuadraticIdentityHoldsForwardBackward) {
  Euler1DModel m(kGammaAir);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dr(0.3, 3.0), du(-2.0, 2.0), dp(0.4, 3.0), dI(-0.4, 0.4);
  for (int t = 0; t < 2000; ++t) {
    const double phi = 0.3, I = dI(rng);
    const auto u = euler_state(dr(rng), du(rng), dp(rng), phi, kGammaAir);
    const auto e = m.equilibrium(u, {phi, 1.0}, {I});
    // identity: (g-1)(L-phi) rho^2 - g(K-I) rho + (g+1) m^2/2 == 0
    const double resid = (kGammaAir - 1.0) * (e[2] - phi) * u[0] * u[0] -
                         kGammaAir * (e[1] - I) * u[0] + 0.5 * (kGammaAir + 1.0) * e[0] * e[0];
    EXPECT_NEAR(resid, 0.0, 1e-10 * std::max(1.0, std::abs(e[1]) * u[0]));
    const auto back = m.recover(e, {phi, 1.0}, {I}, u);
    expect_vec_near<3>(back, u, 1e-11);
  }
}

TEST(Euler1D, RestRecoveryDegenerateRoot) {
  Euler1DModel m(kGammaAir);
  const double phi = 0.4, I = 0.1;
  const auto u = euler_state(1.2, 0.0, 0.9, phi, kGammaAir);
  const auto e = m.equilibrium(u, {phi, 1.0}, {I});
  const double rho = kGammaAir * (e[1] - I) / ((kGammaAir - 1.0) * (e[2] - phi));
  EXPECT_NEAR(rho, 1.2, 1e-12);
}

TEST(Euler1D, SpeedsAtSodLeftState) {
  Euler1DModel m(kGammaAir);
  const auto u = euler_state(1.0, 0.0, 1.0, 0.0, kGammaAir);
  const auto s = m.speeds(u, {0.0, 1.0});
  EXPECT_NEAR(s.second, std::sqrt(1.4), 1e-13);
  EXPECT_NEAR(s.first, -std::sqrt(1.4), 1e-13);
}

// ---------------------------------------------------------------------------
// Euler 2-D sweeps
// ---------------------------------------------------------------------------

namespace {
Vec<4> euler2d_state(double rho, double u, double v, double p, double phi, double gamma) {
  return {rho, rho * u, rho * v, p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v) + rho * phi};
}
}  // namespace

TEST(Euler2D, NumericCMatrixMatchesFiniteDifferenceProduct) {
  EulerXSweep mx(kGammaAir);
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> dr(0.5, 2.0), dv(-1.0, 1.0), dp(0.5, 2.0);
  for (int t = 0; t < 50; ++t) {
    const double phi = 0.7;
    const auto u = euler2d_state(dr(rng), dv(rng), dv(rng), dp(rng), phi, kGammaAir);
    const GravityPoint g{phi, 1.0};
    const auto C = mx.c_matrix(u, g);
    const auto M = mx.m_matrix(u, g);
    const double d = 1e-7;
    Mat<4> dWdU;
    for (int c = 0; c < 4; ++c) {
      Vec<4> up = u, um = u;
      up[c] += d;
      um[c] -= d;
      auto W = [&](const Vec<4>& s) {
        const double p = mx.pressure(s, g);
        return Vec<4>{s[1], s[2], s[1] * s[1] / s[0] + p, (s[3] + p) / s[0]};
      };
      const auto wp = W(up), wm = W(um);
      for (int r = 0; r < 4; ++r) dWdU(r, c) = (wp[r] - wm[r]) / (2.0 * d);
    }
    EXPECT_LT((dWdU * M - C).max_abs(), 2e-5 * (1.0 + C.max_abs()));
  }
}

TEST(Euler2D, HydrostaticEquilibriumConstancy) {
  EulerXSweep mx(kGammaAir);
  // rho = 1.21 exp(-1.21 phi), p = exp(-1.21 phi): K^x with the exact
  // integral is constant and L is linear in phi.
  auto hydro = [&](double x, double y) {
    const double phi = x + y;
    return euler2d_state(1.21 * std::exp(-1.21 * phi), 0.0, 0.0, std::exp(-1.21 * phi), phi,
                         kGammaAir);
  };
  const double y = 0.3;
  double K0 = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double x = 0.05 + 0.1 * j;
    const double phi = x + y;
    // Exact running integral of rho phi_x from the anchor x=0.
    const double I = -std::exp(-1.21 * phi) + std::exp(-1.21 * y);
    const auto e = mx.equilibrium(hydro(x, y), {phi, 1.0}, {I});
    EXPECT_NEAR(e[0], 0.0, 1e-15);
    EXPECT_NEAR(e[1], 0.0, 1e-15);
    if (j == 0) K0 = e[2];
    EXPECT_NEAR(e[2], K0, 1e-13);
    EXPECT_NEAR(e[3], kGammaAir / (1.21 * (kGammaAir - 1.0)) + phi, 1e-12);
  }
}

TEST(Euler2D, HydrostaticRecoveryRoundTrip) {
  EulerXSweep mx(kGammaAir);
  EulerYSweep my(kGammaAir);
  const double x = 0.4, y = 0.6, phi = x + y;
  const auto u = euler2d_state(1.21 * std::exp(-1.21 * phi), 0.0, 0.0, std::exp(-1.21 * phi), phi,
                               kGammaAir);
  const double I = 0.05;
  const auto ex = mx.equilibrium(u, {phi, 1.0}, {I});
  const auto bx = mx.recover(ex, {phi, 1.0}, {I}, u);
  expect_vec_near<4>(bx, u, 1e-12);
  const auto ey = my.equilibrium(u, {phi, 1.0}, {I});
  const auto by = my.recover(ey, {phi, 1.0}, {I}, u);
  expect_vec_near<4>(by, u, 1e-12);
}

TEST(Euler2D, RoundTripRandomStates) {
  EulerXSweep mx(kGammaAir);
  EulerYSweep my(kGammaAir);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dr(0.3, 3.0), dv(-1.5, 1.5), dp(0.4, 3.0), dI(-0.3, 0.3);
  for (int t = 0; t < 2000; ++t) {
    const double phi = 0.5;
    const auto u = euler2d_state(dr(rng), dv(rng), dv(rng), dp(rng), phi, kGammaAir);
    const std::array<double, 1> I = {dI(rng)};
    const auto ex = mx.equilibrium(u, {phi, 1.0}, I);
    expect_vec_near<4>(mx.recover(ex, {phi, 1.0}, I, u), u, 1e-11);
    const auto ey = my.equilibrium(u, {phi, 1.0}, I);
    expect_vec_near<4>(my.recover(ey, {phi, 1.0}, I, u), u, 1e-11);
  }
}

TEST(Euler2D, StateErrorOnNonphysicalL) {
  EulerXSweep mx(kGammaAir);
  EXPECT_THROW(mx.recover({0.1, 0.0, 1.0, 0.2}, {0.5, 1.0}, {0.0}, {1.0, 0.0, 0.0, 2.0}),
               state_error);
}
