//! \file saint_venant.hpp
//  \brief Saint-Venant shallow water with Manning friction: U = (h, q) over
//         bottom topography Z(x). The friction integral feeds the energy
//         equilibrium variable through the running-integral ladders.

#pragma once

#include <cmath>

#include "balsa/core.hpp"
#include "balsa/lcd.hpp"
#include "balsa/systems/geometry.hpp"

namespace balsa {

// Closed-form roots of g h^3 + b h^2 + d = 0 (the energy-depth cubic).
// Returns the number of real roots found (1 or 3); complex pair reported via
// re/im of the remaining pair when there is a single real root.
struct CubicRoots {
  int n_real = 0;
  double r[3] = {0, 0, 0};
  double pair_re = 0.0;  // real part of the complex pair (n_real == 1)
};

inline CubicRoots depth_cubic_roots(double g, double b, double d) {
  const double B = b / g, D = d / g;
  const double p = -B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 + D;
  const double shift = -B / 3.0;
  CubicRoots out;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double t = std::cbrt(-0.5 * q + s) + std::cbrt(-0.5 * q - s);
    out.n_real = 1;
    out.r[0] = t + shift;
    out.pair_re = -0.5 * t + shift;
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    out.n_real = 3;
    for (int k = 0; k < 3; ++k)
      out.r[k] = m * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift;
  }
  return out;
}

class SaintVenantModel {
 public:
  static constexpr int dim = 2;
  static constexpr int n_integrals = 1;  // friction integral, feeds E[1]
  using State = Vec<2>;  // (h, q)
  using EVec = Vec<2>;   // (q, E)
  using IVec = std::array<double, 1>;
  using Geom = double;   // Z
  // E = (q, E): the discharge component mirrors the state's q; energy is derived.
  static constexpr std::array<int, 2> kEquilibriumSlots = {1, -1};

  SaintVenantModel(double g, double manning_n) : g_(g), n_(manning_n) {}

  double gravity() const { return g_; }
  double manning() const { return n_; }

  void validate(const State& u) const {
    if (!(u[0] > 0.0) || !u.finite()) throw state_error("saint-venant: nonpositive or non-finite depth");
  }

  State flux(const State& u, Geom) const {
    return {u[1], u[1] * u[1] / u[0] + 0.5 * g_ * u[0] * u[0]};
  }

  std::pair<double, double> speeds(const State& u, Geom) const {
    const double vel = u[1] / u[0];
    const double c = std::sqrt(g_ * u[0]);
    return {vel - c, vel + c};
  }

  EVec equilibrium(const State& u, Geom z, const IVec& I) const {
    const double vel = u[1] / u[0];
    return {u[1], 0.5 * vel * vel + g_ * (u[0] + z) + I[0]};
  }

  // Depth from (q, E): g h^3 + (g Z + I - E) h^2 + q^2/2 = 0, root on the
  // reference side of the critical depth.
  State recover(const EVec& e, Geom z, const IVec& I, const State& ref, bool* fallback = nullptr) const {
    const double q = e[0], E = e[1];
    if (q == 0.0) {
      const double h = (E - I[0] - g_ * z) / g_;
      if (!(h > 0.0)) {
        if (fallback) *fallback = true;
        return {1e-12, 0.0};
      }
      return {h, 0.0};
    }
    const double b = g_ * z + I[0] - E;
    const auto roots = depth_cubic_roots(g_, b, 0.5 * q * q);
    const double h_crit = std::cbrt(q * q / g_);
    const bool want_sub = ref[0] >= h_crit;
    double best = -1.0;
    for (int k = 0; k < roots.n_real; ++k) {
      const double h = roots.r[k];
      if (!(h > 0.0)) continue;
      if ((h >= h_crit) != want_sub) continue;
      if (best < 0.0 || std::abs(h - ref[0]) < std::abs(best - ref[0])) best = h;
    }
    if (best < 0.0) {
      // No admissible root on the branch: fall back to the closest root,
      // clamped positive (near-critical data).
      if (fallback) *fallback = true;
      double cand = roots.n_real == 1 ? std::max(roots.r[0], roots.pair_re) : roots.r[0];
      for (int k = 0; k < roots.n_real; ++k)
        if (std::abs(roots.r[k] - ref[0]) < std::abs(cand - ref[0])) cand = roots.r[k];
      best = std::max(cand, 1e-12);
    } else {
      // Newton polish of the closed-form root (it stays on its branch).
      for (int it = 0; it < 2; ++it) {
        const double r = ((g_ * best + b) * best) * best + 0.5 * q * q;
        const double d = (3.0 * g_ * best + 2.0 * b) * best;
        if (d == 0.0) break;
        const double next = best - r / d;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        best = next;
      }
    }
    return {best, q};
  }

  Mat<2> m_matrix(const State& u, Geom) const {
    Mat<2> m;
    m(0, 0) = 1.0;
    m(1, 0) = u[1] / u[0];
    m(1, 1) = u[0];
    return m;
  }

  Mat<2> c_matrix(const State& u, Geom) const {
    Mat<2> m;
    m(0, 0) = u[1] / u[0];
    m(0, 1) = u[0];
    m(1, 0) = g_;
    m(1, 1) = u[1] / u[0];
    return m;
  }

  Mat<2> a_matrix(const State& u, Geom) const {
    const double vel = u[1] / u[0];
    Mat<2> m;
    m(0, 1) = 1.0;
    m(1, 0) = g_ * u[0] - vel * vel;
    m(1, 1) = 2.0 * vel;
    return m;
  }

  lcd::CharBasis<2> char_basis(const State& u, Geom) const {
    const double vel = u[1] / u[0];
    const double sh = std::sqrt(u[0]);
    const double sg = std::sqrt(g_);
    const double c = std::sqrt(g_ * u[0]);
    lcd::CharBasis<2> b;
    b.lambda = {vel - c, vel + c};
    b.Q(0, 0) = sh;
    b.Q(0, 1) = sh;
    b.Q(1, 0) = -sg;
    b.Q(1, 1) = sg;
    const double den = 2.0 * sg * sh;
    b.Qinv(0, 0) = sg / den;
    b.Qinv(0, 1) = -sh / den;
    b.Qinv(1, 0) = sg / den;
    b.Qinv(1, 1) = sh / den;
    return b;
  }

  // Pointwise friction integrand g S_f = g n^2 q |q| h^(-10/3).
  IVec integrand(const State& u, Geom) const {
    if (n_ == 0.0) return {0.0};
    return {g_ * n_ * n_ * u[1] * std::abs(u[1]) * std::pow(u[0], -10.0 / 3.0)};
  }

  State clamp_sample(State u) const {
    if (!(u[0] > 1e-12)) u[0] = 1e-12;
    return u;
  }

 private:
  double g_;
  double n_;
};

}  // namespace balsa
