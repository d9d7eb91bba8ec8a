//! \file aiweno.hpp
//  \brief Fifth-order affine-invariant WENO-Z interpolation of point values
//         at the half- and quarter-point offsets used by the scheme.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "balsa/core.hpp"

namespace balsa {
namespace aiweno {

using Stencil5 = std::array<double, 5>;  // values at offsets -2..+2 (units of dx)

enum class InterpOffset { MinusHalf, MinusQuarter, PlusQuarter, PlusHalf };

inline double offset_value(InterpOffset s) {
  switch (s) {
    case InterpOffset::MinusHalf: return -0.5;
    case InterpOffset::MinusQuarter: return -0.25;
    case InterpOffset::PlusQuarter: return 0.25;
    case InterpOffset::PlusHalf: return 0.5;
  }
  throw config_error("aiweno: unsupported interpolation offset");
}

inline constexpr double kWenoEps = 1e-12;   // on normalized data
inline constexpr double kAiFloor = 1e-14;   // max-deviation floor

// Quadratic interpolant of sub-stencil i (nodes {-2,-1,0}, {-1,0,1}, {0,1,2})
// evaluated at offset s.
inline double sub_quadratic(int i, const Stencil5& f, double s) {
  switch (i) {
    case 0: {
      const double l0 = 0.5 * s * (s + 1.0);
      const double l1 = -s * (s + 2.0);
      const double l2 = 0.5 * (s + 1.0) * (s + 2.0);
      return l0 * f[0] + l1 * f[1] + l2 * f[2];
    }
    case 1: {
      const double l0 = 0.5 * s * (s - 1.0);
      const double l1 = 1.0 - s * s;
      const double l2 = 0.5 * s * (s + 1.0);
      return l0 * f[1] + l1 * f[2] + l2 * f[3];
    }
    default: {
      const double l0 = 0.5 * (s - 1.0) * (s - 2.0);
      const double l1 = -s * (s - 2.0);
      const double l2 = 0.5 * s * (s - 1.0);
      return l0 * f[2] + l1 * f[3] + l2 * f[4];
    }
  }
}

// Unique degree-4 interpolant through all five points, evaluated at s.
inline double degree4(const Stencil5& f, double s) {
  static constexpr int node[5] = {-2, -1, 0, 1, 2};
  double r = 0.0;
  for (int k = 0; k < 5; ++k) {
    double l = 1.0;
    for (int j = 0; j < 5; ++j) {
      if (j != k) l *= (s - node[j]) / double(node[k] - node[j]);
    }
    r += l * f[static_cast<std::size_t>(k)];
  }
  return r;
}

namespace detail {

// Linear weights from the 3x3 moment-matching system: the gamma-weighted
// combination of the sub-stencil quadratics must reproduce x^3 and x^4 at s
// (lower degrees are automatic) and sum to one. Solved once at startup
// instead of hard-coding the quarter-point values.
inline std::array<double, 3> solve_linear_weights(double s) {
  Stencil5 x3, x4;
  for (int l = -2; l <= 2; ++l) {
    x3[static_cast<std::size_t>(l + 2)] = double(l * l * l);
    x4[static_cast<std::size_t>(l + 2)] = double(l * l * l * l);
  }
  double A[3][3], b[3];
  for (int i = 0; i < 3; ++i) {
    A[0][i] = sub_quadratic(i, x3, s);
    A[1][i] = sub_quadratic(i, x4, s);
    A[2][i] = 1.0;
  }
  b[0] = s * s * s;
  b[1] = s * s * s * s;
  b[2] = 1.0;
  // Cramer on the 3x3 system.
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(A);
  if (std::abs(d) < 1e-14) throw numeric_error("aiweno: singular weight system");
  std::array<double, 3> g{};
  for (int c = 0; c < 3; ++c) {
    double M[3][3];
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) M[r][k] = (k == c) ? b[r] : A[r][k];
    g[static_cast<std::size_t>(c)] = det3(M) / d;
  }
  return g;
}

struct WeightTable {
  std::array<std::array<double, 3>, 4> g;
  WeightTable() {
    g[0] = solve_linear_weights(-0.5);
    g[1] = solve_linear_weights(-0.25);
    g[2] = solve_linear_weights(0.25);
    g[3] = solve_linear_weights(0.5);
  }
};

inline const WeightTable& weight_table() {
  static const WeightTable t;
  return t;
}

inline int offset_index(InterpOffset s) {
  switch (s) {
    case InterpOffset::MinusHalf: return 0;
    case InterpOffset::MinusQuarter: return 1;
    case InterpOffset::PlusQuarter: return 2;
    case InterpOffset::PlusHalf: return 3;
  }
  throw config_error("aiweno: unsupported interpolation offset");
}

}  // namespace detail

inline std::array<double, 3> linear_weights(InterpOffset s) {
  return detail::weight_table().g[static_cast<std::size_t>(detail::offset_index(s))];
}

// Jiang-Shu smoothness indicators of the three quadratic sub-stencils.
inline std::array<double, 3> smoothness_indicators(const Stencil5& f) {
  auto sq = [](double x) { return x * x; };
  const double b0 = (13.0 / 12.0) * sq(f[0] - 2.0 * f[1] + f[2]) + 0.25 * sq(f[0] - 4.0 * f[1] + 3.0 * f[2]);
  const double b1 = (13.0 / 12.0) * sq(f[1] - 2.0 * f[2] + f[3]) + 0.25 * sq(f[1] - f[3]);
  const double b2 = (13.0 / 12.0) * sq(f[2] - 2.0 * f[3] + f[4]) + 0.25 * sq(3.0 * f[2] - 4.0 * f[3] + f[4]);
  return {b0, b1, b2};
}

// Affine-invariant WENO-Z interpolation at offset s. The stencil is shifted
// and scaled by (mean, max-deviation) before the nonlinear weights are
// formed, so the result is exactly equivariant under f -> lambda f + c.
inline double interpolate(const Stencil5& f, InterpOffset offset) {
  for (double x : f)
    if (!std::isfinite(x)) throw input_error("aiweno: non-finite stencil value");
  const double s = offset_value(offset);

  double mu = 0.0;
  for (double x : f) mu += x;
  mu *= 0.2;
  double sig = 0.0;
  for (double x : f) sig = std::max(sig, std::abs(x - mu));
  if (sig <= kAiFloor * (1.0 + std::abs(mu))) return degree4(f, s);

  Stencil5 z;
  for (int i = 0; i < 5; ++i) z[static_cast<std::size_t>(i)] = (f[static_cast<std::size_t>(i)] - mu) / sig;

  const auto beta = smoothness_indicators(z);
  const double tau = std::abs(beta[0] - beta[2]);
  const auto g = detail::weight_table().g[static_cast<std::size_t>(detail::offset_index(offset))];

  double w[3], wsum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double r = tau / (beta[static_cast<std::size_t>(i)] + kWenoEps);
    w[i] = g[static_cast<std::size_t>(i)] * (1.0 + r * r);
    wsum += w[i];
  }
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += (w[i] / wsum) * sub_quadratic(i, z, s);
  return mu + sig * acc;
}

}  // namespace aiweno
}  // namespace balsa
