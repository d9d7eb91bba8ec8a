//! \file two_layer.hpp
//  \brief Two-layer shallow water: U = (h1, q1, h2, q2) with density ratio
//         r < 1 and a nonconservative coupling between the layers.

#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "balsa/core.hpp"
#include "balsa/lcd.hpp"
#include "balsa/systems/geometry.hpp"

namespace balsa {

class TwoLayerModel {
 public:
  static constexpr int dim = 4;
  static constexpr int n_integrals = 0;
  using State = Vec<4>;  // (h1, q1, h2, q2)
  using EVec = Vec<4>;   // (q1, E1, q2, E2)
  using IVec = std::array<double, 0>;
  using Geom = double;   // Z
  static constexpr std::array<int, 4> kEquilibriumSlots = {1, -1, 3, -1};

  TwoLayerModel(double g, double density_ratio) : g_(g), r_(density_ratio) {
    if (!(r_ > 0.0) || !(r_ < 1.0)) throw config_error("two-layer: need 0 < r < 1");
  }

  double gravity() const { return g_; }
  double ratio() const { return r_; }

  void validate(const State& u) const {
    if (!(u[0] > 0.0) || !(u[2] > 0.0) || !u.finite())
      throw state_error("two-layer: nonpositive or non-finite depth");
  }

  State flux(const State& u, Geom) const {
    const double u1 = u[1] / u[0], u2 = u[3] / u[2];
    return {u[1], u[1] * u1 + 0.5 * g_ * u[0] * u[0], u[3], u[3] * u2 + 0.5 * g_ * u[2] * u[2]};
  }

  std::pair<double, double> speeds(const State& u, Geom z) const {
    using M4 = Eigen::Matrix4d;
    const Mat<4> a = a_matrix(u, z);
    M4 A;
    for (int rr = 0; rr < 4; ++rr)
      for (int cc = 0; cc < 4; ++cc) A(rr, cc) = a(rr, cc);
    const auto ev = A.eigenvalues();
    double lo = ev(0).real(), hi = ev(0).real(), im = 0.0;
    for (int i = 0; i < 4; ++i) {
      lo = std::min(lo, ev(i).real());
      hi = std::max(hi, ev(i).real());
      im = std::max(im, std::abs(ev(i).imag()));
    }
    // Complex pair (loss of hyperbolicity): widen by the imaginary part.
    return {lo - im, hi + im};
  }

  EVec equilibrium(const State& u, Geom z, const IVec&) const {
    const double u1 = u[1] / u[0], u2 = u[3] / u[2];
    return {u[1], 0.5 * u1 * u1 + g_ * (u[0] + u[2] + z),
            u[3], 0.5 * u2 * u2 + g_ * (r_ * u[0] + u[2] + z)};
  }

  // Coupled depths from (q1, E1, q2, E2) by damped Newton from the reference;
  // the q1 = q2 = 0 case is the linear 2x2 system, used directly.
  State recover(const EVec& e, Geom z, const IVec&, const State& ref, bool* fallback = nullptr) const {
    const double q1 = e[0], E1 = e[1], q2 = e[2], E2 = e[3];
    if (q1 == 0.0 && q2 == 0.0) {
      const double h1 = (E1 - E2) / (g_ * (1.0 - r_));
      const double h2 = (E1 - g_ * z) / g_ - h1;
      if (h1 > 0.0 && h2 > 0.0) return {h1, 0.0, h2, 0.0};
      if (fallback) *fallback = true;
      return {ref[0], 0.0, ref[2], 0.0};
    }
    double h1 = ref[0], h2 = ref[2];
    bool converged = false;
    const double scale = std::max({1.0, std::abs(E1), std::abs(E2)});
    for (int it = 0; it < 200; ++it) {
      const double r1 = 0.5 * q1 * q1 / (h1 * h1) + g_ * (h1 + h2 + z) - E1;
      const double r2 = 0.5 * q2 * q2 / (h2 * h2) + g_ * (r_ * h1 + h2 + z) - E2;
      if (std::abs(r1) <= 1e-13 * scale && std::abs(r2) <= 1e-13 * scale) {
        converged = true;
        break;
      }
      const double j11 = -q1 * q1 / (h1 * h1 * h1) + g_;
      const double j12 = g_;
      const double j21 = r_ * g_;
      const double j22 = -q2 * q2 / (h2 * h2 * h2) + g_;
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) break;
      double d1 = (r1 * j22 - r2 * j12) / det;
      double d2 = (j11 * r2 - j21 * r1) / det;
      // Halve the step while a depth would leave the admissible region.
      double step = 1.0;
      while ((h1 - step * d1 <= 0.0 || h2 - step * d2 <= 0.0) && step > 1e-8) step *= 0.5;
      h1 -= step * d1;
      h2 -= step * d2;
      if (!(std::isfinite(h1) && std::isfinite(h2))) break;
    }
    if (!converged || !(h1 > 0.0) || !(h2 > 0.0)) {
      if (fallback) *fallback = true;
      return ref;  // keep the run alive; the caller records the fallback
    }
    return {h1, q1, h2, q2};
  }

  Mat<4> m_matrix(const State& u, Geom) const {
    Mat<4> m;
    m(0, 0) = 1.0;
    m(1, 0) = u[1] / u[0];
    m(1, 1) = u[0];
    m(2, 2) = 1.0;
    m(3, 2) = u[3] / u[2];
    m(3, 3) = u[2];
    return m;
  }

  Mat<4> c_matrix(const State& u, Geom) const {
    const double u1 = u[1] / u[0], u2 = u[3] / u[2];
    Mat<4> m;
    m(0, 0) = u1;  m(0, 1) = u[0];
    m(1, 0) = g_;  m(1, 1) = u1;   m(1, 2) = g_;
    m(2, 2) = u2;  m(2, 3) = u[2];
    m(3, 0) = r_ * g_;  m(3, 2) = g_;  m(3, 3) = u2;
    return m;
  }

  Mat<4> a_matrix(const State& u, Geom) const {
    const double u1 = u[1] / u[0], u2 = u[3] / u[2];
    Mat<4> m;
    m(0, 1) = 1.0;
    m(1, 0) = g_ * u[0] - u1 * u1;
    m(1, 1) = 2.0 * u1;
    m(1, 2) = g_ * u[0];  // -B contribution
    m(2, 3) = 1.0;
    m(3, 0) = r_ * g_ * u[2];
    m(3, 2) = g_ * u[2] - u2 * u2;
    m(3, 3) = 2.0 * u2;
    return m;
  }

  lcd::CharBasis<4> char_basis(const State& u, Geom z) const {
    return lcd::eigendecompose(c_matrix(u, z));  // may throw hyperbolicity_error
  }

  IVec integrand(const State&, Geom) const { return {}; }

  State clamp_sample(State u) const {
    if (!(u[0] > 1e-12)) u[0] = 1e-12;
    if (!(u[2] > 1e-12)) u[2] = 1e-12;
    return u;
  }

 private:
  double g_;
  double r_;
};

}  // namespace balsa
