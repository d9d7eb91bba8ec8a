//! \file quadrature.hpp
//  \brief Recursive fifth-order running integrals of pointwise integrands
//         (cell-center and interface ladders) and the product-derivative
//         cell quadrature used by the global-flux ladder.

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "balsa/aiweno.hpp"
#include "balsa/core.hpp"
#include "balsa/grid.hpp"

namespace balsa {
namespace quadrature {

// Integral over the left half-cell [x_a, x_a + dx/2] from the five in-cell
// samples (left interface, -1/4, center, +1/4, right interface).
inline double seed_integral(double dx, double f_left, double f_mq, double f_c, double f_pq,
                            double f_right) {
  return dx / 360.0 * (29.0 * f_left + 124.0 * f_mq + 24.0 * f_c + 4.0 * f_pq - f_right);
}

// Boole increment over one full dx interval from its five equispaced samples.
inline double advance(double dx, double f0, double f1, double f2, double f3, double f4) {
  return dx / 90.0 * (7.0 * f0 + 32.0 * f1 + 12.0 * f2 + 32.0 * f3 + 7.0 * f4);
}

// ---------------------------------------------------------------------------
// Sub-cell samples of a scalar integrand: one-sided interface values and
// quarter-point values, all from the cell's own five-point stencil.
// ---------------------------------------------------------------------------

struct IntegrandSamples {
  // Indexed over cells [-3, n+2]; entry j holds the values produced by cell
  // j's stencil. half[i] is the averaged interface value, i in [-2, n+2].
  OffsetArray<double> left, right, quarter_m, quarter_p;
  OffsetArray<double> half;
};

inline IntegrandSamples sample_integrand(const Field1D<double>& f) {
  const int n = f.n();
  IntegrandSamples s;
  s.left = OffsetArray<double>(-3, n + 2);
  s.right = OffsetArray<double>(-3, n + 2);
  s.quarter_m = OffsetArray<double>(-3, n + 2);
  s.quarter_p = OffsetArray<double>(-3, n + 2);
  s.half = OffsetArray<double>(-2, n + 2);
  for (int j = -3; j <= n + 2; ++j) {
    const aiweno::Stencil5 st = {f(j - 2), f(j - 1), f(j), f(j + 1), f(j + 2)};
    s.left[j] = aiweno::interpolate(st, aiweno::InterpOffset::MinusHalf);
    s.right[j] = aiweno::interpolate(st, aiweno::InterpOffset::PlusHalf);
    s.quarter_m[j] = aiweno::interpolate(st, aiweno::InterpOffset::MinusQuarter);
    s.quarter_p[j] = aiweno::interpolate(st, aiweno::InterpOffset::PlusQuarter);
  }
  for (int i = -2; i <= n + 2; ++i) s.half[i] = 0.5 * (s.right[i - 1] + s.left[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Running-integral ladders, anchored at the interface three cells into the
// ghost layer (x_hat), where both ladders start from zero.
// ---------------------------------------------------------------------------

struct RunningIntegrals {
  OffsetArray<double> center;  // cells [-g, n+g)
  OffsetArray<double> iface;   // interfaces [-3, n+2], iface[-3] = 0
};

namespace detail {

// Integral of the degree-4 polynomial through nodes {0,1,2,3,4} over
// [a, b] (node units); weights for each node value. 3-point Gauss is exact
// for the quartic Lagrange basis.
inline std::array<double, 5> poly5_weights(double a, double b) {
  static const double gx[3] = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::array<double, 5> w{};
  for (int k = 0; k < 5; ++k) {
    double acc = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
      double l = 1.0;
      for (int j = 0; j < 5; ++j)
        if (j != k) l *= (t - j) / double(k - j);
      acc += gw[q] * l;
    }
    w[static_cast<std::size_t>(k)] = 0.5 * (b - a) * acc;
  }
  return w;
}

}  // namespace detail

// Build both ladders for one scalar integrand field (ghost cells included in
// f). The center ladder is seeded over the half cell at the anchor and
// advanced cell-center to cell-center; the interface ladder is advanced
// interface to interface. The outermost two cells per side, which the paper's
// recursion does not reach but the interpolation stencils do, are covered by
// integrating the degree-4 polynomial through the nearest five cell centers.
inline RunningIntegrals build_ladders(const GridSpec1D& grid, const Field1D<double>& f,
                                      const IntegrandSamples& s) {
  const int n = grid.n;
  const double dx = grid.dx;
  RunningIntegrals out;
  out.center = OffsetArray<double>(-kGhostWidth, n + kGhostWidth - 1);
  out.iface = OffsetArray<double>(-3, n + 2);

  // Interface ladder: I[-3] = 0; step over cell c = i-1.
  out.iface[-3] = 0.0;
  for (int i = -2; i <= n + 2; ++i) {
    const int c = i - 1;
    out.iface[i] = out.iface[i - 1] +
                   advance(dx, s.left[c], s.quarter_m[c], f(c), s.quarter_p[c], s.right[c]);
  }

  // Center ladder: seed over [x_hat, x_hat + dx/2] inside cell -3.
  out.center[-3] = seed_integral(dx, s.left[-3], s.quarter_m[-3], f(-3), s.quarter_p[-3], s.right[-3]);
  for (int c = -2; c <= n + 2; ++c) {
    out.center[c] = out.center[c - 1] +
                    advance(dx, f(c - 1), s.quarter_p[c - 1], s.half[c], s.quarter_m[c], f(c));
  }

  // Ghost extensions beyond the recursion's reach.
  static const auto w01 = detail::poly5_weights(0.0, 1.0);
  static const auto w12 = detail::poly5_weights(1.0, 2.0);
  static const auto w23 = detail::poly5_weights(2.0, 3.0);
  static const auto w34 = detail::poly5_weights(3.0, 4.0);
  auto dot5 = [&](const std::array<double, 5>& w, int c0) {
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += w[static_cast<std::size_t>(k)] * f(c0 + k);
    return dx * acc;
  };
  out.center[-4] = out.center[-3] - dot5(w12, -kGhostWidth);
  out.center[-5] = out.center[-4] - dot5(w01, -kGhostWidth);
  out.center[n + 3] = out.center[n + 2] + dot5(w23, n);
  out.center[n + 4] = out.center[n + 3] + dot5(w34, n);
  return out;
}

// ---------------------------------------------------------------------------
// Product-derivative cell quadrature: integral over one cell of M(x) E'(x)
// where both factors are degree-4 fits through the five in-cell nodes
// {-1/2, -1/4, 0, 1/4, 1/2}. G has exact zero row sums, so the increment
// vanishes identically for constant E samples; the E values enter in
// difference form against the center sample to keep that exact in floating
// point.
// ---------------------------------------------------------------------------

namespace detail {

struct GradQuadTable {
  double G[5][5];
  GradQuadTable() {
    static const double nodes[5] = {-0.5, -0.25, 0.0, 0.25, 0.5};
    // 4-point Gauss-Legendre on [-1/2, 1/2]; exact for degree 7.
    const double r1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double r2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
    const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
    const double gx[4] = {-r2, -r1, r1, r2};
    const double gw[4] = {wb, wa, wa, wb};
    auto lag = [&](int k, double t) {
      double l = 1.0;
      for (int j = 0; j < 5; ++j)
        if (j != k) l *= (t - nodes[j]) / (nodes[k] - nodes[j]);
      return l;
    };
    auto dlag = [&](int k, double t) {
      double sum = 0.0;
      for (int m = 0; m < 5; ++m) {
        if (m == k) continue;
        double p = 1.0 / (nodes[k] - nodes[m]);
        for (int j = 0; j < 5; ++j)
          if (j != k && j != m) p *= (t - nodes[j]) / (nodes[k] - nodes[j]);
        sum += p;
      }
      return sum;
    };
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        double acc = 0.0;
        for (int q = 0; q < 4; ++q) acc += gw[q] * lag(a, 0.5 * gx[q]) * dlag(b, 0.5 * gx[q]);
        G[a][b] = 0.5 * acc;
      }
  }
};

inline const GradQuadTable& grad_quad_table() {
  static const GradQuadTable t;
  return t;
}

}  // namespace detail

// M sampled at the five in-cell nodes, E likewise; returns int M dE over the
// cell (scale-free: the dx of the measure cancels against the derivative).
template <int N>
Vec<N> grad_quad_increment(const std::array<Mat<N>, 5>& M, const std::array<Vec<N>, 5>& E,
                           const Vec<N>& E_center) {
  const auto& T = detail::grad_quad_table();
  Vec<N> out;
  for (int a = 0; a < 5; ++a) {
    Vec<N> acc;
    for (int b = 0; b < 5; ++b) {
      const Vec<N> dE = E[static_cast<std::size_t>(b)] - E_center;
      for (int c = 0; c < N; ++c) acc[c] += T.G[a][b] * dE[c];
    }
    out += M[static_cast<std::size_t>(a)] * acc;
  }
  return out;
}

}  // namespace quadrature
}  // namespace balsa
