//! \file euler.hpp
//  \brief Compressible Euler equations with gravitation, 1-D and the x/y
//         sweep models of the 2-D system. The state carries the modified
//         energy cE = E + rho phi; the gravity integral feeds the momentum
//         equilibrium variable K.

#pragma once

#include <cmath>

#include "balsa/core.hpp"
#include "balsa/lcd.hpp"
#include "balsa/systems/geometry.hpp"

namespace balsa {

struct GravityPoint {
  double phi = 0.0;
  double phi_x = 0.0;  // derivative along the sweep direction
};

inline GravityPoint geom_mid(const GravityPoint& a, const GravityPoint& b) {
  return {0.5 * (a.phi + b.phi), 0.5 * (a.phi_x + b.phi_x)};
}

namespace euler_detail {

// Density branch of the interface quadratic
//   (g-1)(L - phi) rho^2 - g (K - I) rho + (g+1) m^2/2 - (g-1) n2/2 = 0,
// root nearest the reference; vertex when the discriminant dips negative.
inline double solve_density(double gamma, double L, double phi, double K, double I, double m,
                            double n_sq_half_term, double rho_ref) {
  const double A = (gamma - 1.0) * (L - phi);
  if (!(A > 0.0)) throw state_error("euler recover: L - phi <= 0");
  const double B = -gamma * (K - I);
  const double C = 0.5 * (gamma + 1.0) * m * m - n_sq_half_term;
  const double disc = B * B - 4.0 * A * C;
  double rho;
  if (disc < 0.0) {
    rho = -B / (2.0 * A);
  } else {
    // Cancellation-free pairing of the two roots.
    const double s = std::sqrt(disc);
    const double qf = -0.5 * (B + std::copysign(s, B));
    const double r1 = qf / A;
    const double r2 = (qf != 0.0) ? C / qf : -B / (2.0 * A);
    rho = (std::abs(r1 - rho_ref) <= std::abs(r2 - rho_ref)) ? r1 : r2;
    if (!(rho > 0.0)) rho = std::max(r1, r2);
    // One Newton step sharpens the root to full precision.
    const double deriv = 2.0 * A * rho + B;
    if (deriv != 0.0) {
      const double next = rho - ((A * rho + B) * rho + C) / deriv;
      if (next > 0.0 && std::isfinite(next)) rho = next;
    }
  }
  if (!(rho > 0.0)) throw recovery_error("euler recover: nonpositive density root");
  return rho;
}

}  // namespace euler_detail

class Euler1DModel {
 public:
  static constexpr int dim = 3;
  static constexpr int n_integrals = 1;  // gravity integral, feeds K = E[1]
  using State = Vec<3>;  // (rho, m, cE)
  using EVec = Vec<3>;   // (m, K, L)
  using IVec = std::array<double, 1>;
  using Geom = GravityPoint;
  static constexpr std::array<int, 3> kEquilibriumSlots = {1, -1, -1};

  explicit Euler1DModel(double gamma) : gamma_(gamma) {}

  double gamma() const { return gamma_; }

  double pressure(const State& u, const Geom& g) const {
    return (gamma_ - 1.0) * (u[2] - u[0] * g.phi - 0.5 * u[1] * u[1] / u[0]);
  }

  void validate(const State& u) const {
    if (!(u[0] > 0.0) || !u.finite()) throw state_error("euler1d: nonpositive or non-finite density");
  }

  State flux(const State& u, const Geom& g) const {
    const double vel = u[1] / u[0];
    const double p = pressure(u, g);
    return {u[1], u[1] * vel + p, vel * (u[2] + p)};
  }

  std::pair<double, double> speeds(const State& u, const Geom& g) const {
    const double p = pressure(u, g);
    if (!(p > 0.0)) throw state_error("euler1d: nonpositive pressure");
    const double vel = u[1] / u[0];
    const double c = std::sqrt(gamma_ * p / u[0]);
    return {vel - c, vel + c};
  }

  EVec equilibrium(const State& u, const Geom& g, const IVec& I) const {
    const double p = pressure(u, g);
    return {u[1], u[1] * u[1] / u[0] + p + I[0], (u[2] + p) / u[0]};
  }

  State recover(const EVec& e, const Geom& g, const IVec& I, const State& ref,
                bool* = nullptr) const {
    const double m = e[0], K = e[1], L = e[2];
    const double rho = euler_detail::solve_density(gamma_, L, g.phi, K, I[0], m, 0.0, ref[0]);
    const double p = (gamma_ - 1.0) / gamma_ * (rho * (L - g.phi) - 0.5 * m * m / rho);
    return {rho, m, rho * L - p};
  }

  Mat<3> m_matrix(const State& u, const Geom& g) const {
    Mat<3> m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 0) = (u[2] + pressure(u, g)) / u[0];  // L
    m(2, 2) = u[1];
    return m;
  }

  Mat<3> c_matrix(const State& u, const Geom& g) const {
    const double vel = u[1] / u[0];
    const double p = pressure(u, g);
    const double c2 = gamma_ * p / u[0];
    Mat<3> m;
    m(0, 1) = 1.0;
    m(1, 0) = (gamma_ - 2.0) * vel * vel + c2;
    m(1, 1) = (3.0 - gamma_) * vel;
    m(1, 2) = (gamma_ - 1.0) * u[1];
    m(2, 0) = ((gamma_ - 1.0) * vel * vel + c2) / u[0];
    m(2, 1) = (1.0 - gamma_) * vel / u[0];
    m(2, 2) = gamma_ * vel;
    return m;
  }

  Mat<3> a_matrix(const State& u, const Geom& g) const {
    const double vel = u[1] / u[0];
    const double p = pressure(u, g);
    const double L = (u[2] + p) / u[0];
    Mat<3> m;
    m(0, 1) = 1.0;
    m(1, 0) = 0.5 * (gamma_ - 3.0) * vel * vel + (1.0 - gamma_) * g.phi;
    m(1, 1) = (3.0 - gamma_) * vel;
    m(1, 2) = gamma_ - 1.0;
    m(2, 0) = vel * (0.5 * (gamma_ - 1.0) * vel * vel - L - (gamma_ - 1.0) * g.phi);
    m(2, 1) = L + (1.0 - gamma_) * vel * vel;
    m(2, 2) = gamma_ * vel;
    return m;
  }

  // Analytic basis with eigenvalues reordered ascending (u-c, u, u+c).
  lcd::CharBasis<3> char_basis(const State& u, const Geom& g) const {
    const double rho = u[0], m = u[1];
    const double vel = m / rho;
    const double p = pressure(u, g);
    if (!(p > 0.0)) throw state_error("euler1d: nonpositive pressure in char_basis");
    const double c = std::sqrt(gamma_ * p / rho);
    const double gm1 = gamma_ - 1.0;
    lcd::CharBasis<3> b;
    b.lambda = {vel - c, vel, vel + c};
    // Columns: (u - c), (u), (u + c).
    b.Q(0, 0) = -rho / c;        b.Q(0, 1) = -gm1 * m / (c * c);        b.Q(0, 2) = rho / c;
    b.Q(1, 0) = rho - m / c;     b.Q(1, 1) = -gm1 * m * m / (c * c * rho);  b.Q(1, 2) = rho + m / c;
    b.Q(2, 0) = 1.0;             b.Q(2, 1) = 1.0;                        b.Q(2, 2) = 1.0;
    b.Qinv(0, 0) = -gm1 * vel * vel / (2.0 * c * rho) - (vel + c) / (2.0 * rho);
    b.Qinv(0, 1) = gm1 * vel / (2.0 * c * rho) + 1.0 / (2.0 * rho);
    b.Qinv(0, 2) = -gm1 * vel / (2.0 * c);
    b.Qinv(1, 0) = vel / rho;
    b.Qinv(1, 1) = -1.0 / rho;
    b.Qinv(1, 2) = 1.0;
    b.Qinv(2, 0) = gm1 * vel * vel / (2.0 * c * rho) - (vel - c) / (2.0 * rho);
    b.Qinv(2, 1) = (1.0 - gamma_) * vel / (2.0 * c * rho) + 1.0 / (2.0 * rho);
    b.Qinv(2, 2) = gm1 * vel / (2.0 * c);
    return b;
  }

  IVec integrand(const State& u, const Geom& g) const { return {u[0] * g.phi_x}; }

  State clamp_sample(State u) const {
    if (!(u[0] > 1e-12)) u[0] = 1e-12;
    return u;
  }

 private:
  double gamma_;
};

// ---------------------------------------------------------------------------
// 2-D Euler sweep models. State (rho, m, n, cE); the x sweep uses
// E^x = (m, n, K^x, L), the y sweep E^y = (m, n, K^y, L). C matrices are
// built numerically from the printed dW/dU and M products.
// ---------------------------------------------------------------------------

template <bool XDir>
class EulerSweepModel {
 public:
  static constexpr int dim = 4;
  static constexpr int n_integrals = 1;
  using State = Vec<4>;  // (rho, m, n, cE)
  using EVec = Vec<4>;   // (m, n, K, L)
  using IVec = std::array<double, 1>;
  using Geom = GravityPoint;  // phi and its derivative along the sweep
  static constexpr std::array<int, 4> kEquilibriumSlots = {1, 2, -1, -1};

  explicit EulerSweepModel(double gamma) : gamma_(gamma) {}

  double gamma() const { return gamma_; }

  double pressure(const State& u, const Geom& g) const {
    return (gamma_ - 1.0) *
           (u[3] - u[0] * g.phi - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
  }

  void validate(const State& u) const {
    if (!(u[0] > 0.0) || !u.finite()) throw state_error("euler2d: nonpositive or non-finite density");
  }

  State flux(const State& u, const Geom& g) const {
    const double p = pressure(u, g);
    const double vx = u[1] / u[0], vy = u[2] / u[0];
    if constexpr (XDir) {
      return {u[1], u[1] * vx + p, u[1] * vy, vx * (u[3] + p)};
    } else {
      return {u[2], u[2] * vx, u[2] * vy + p, vy * (u[3] + p)};
    }
  }

  std::pair<double, double> speeds(const State& u, const Geom& g) const {
    const double p = pressure(u, g);
    if (!(p > 0.0)) throw state_error("euler2d: nonpositive pressure");
    const double c = std::sqrt(gamma_ * p / u[0]);
    const double vel = (XDir ? u[1] : u[2]) / u[0];
    return {vel - c, vel + c};
  }

  EVec equilibrium(const State& u, const Geom& g, const IVec& I) const {
    const double p = pressure(u, g);
    const double sweep_m = XDir ? u[1] : u[2];
    return {u[1], u[2], sweep_m * sweep_m / u[0] + p + I[0], (u[3] + p) / u[0]};
  }

  State recover(const EVec& e, const Geom& g, const IVec& I, const State& ref,
                bool* = nullptr) const {
    const double m = e[0], n = e[1], K = e[2], L = e[3];
    const double sweep_m = XDir ? m : n;
    const double trans_m = XDir ? n : m;
    const double rho = euler_detail::solve_density(gamma_, L, g.phi, K, I[0], sweep_m,
                                                   0.5 * (gamma_ - 1.0) * trans_m * trans_m, ref[0]);
    const double p =
        (gamma_ - 1.0) / gamma_ * (rho * (L - g.phi) - 0.5 * (m * m + n * n) / rho);
    return {rho, m, n, rho * L - p};
  }

  Mat<4> m_matrix(const State& u, const Geom& g) const {
    const double rho = u[0], m = u[1], n = u[2];
    const double vx = m / rho, vy = n / rho;
    const double L = (u[3] + pressure(u, g)) / rho;
    const double gp1 = gamma_ + 1.0, gm1 = gamma_ - 1.0;
    Mat<4> M;
    if constexpr (XDir) {
      const double den = gm1 * (2.0 * rho * rho * L + n * n) - gp1 * m * m;
      const double psi = (den != 0.0) ? 2.0 * m * n / den : 0.0;
      M(0, 0) = 1.0;
      M(1, 2) = 1.0;
      M(2, 0) = vy + gp1 * vx * psi;
      M(2, 1) = vx + (1.0 - gamma_) * vy * psi;
      M(2, 2) = -gamma_ * psi;
      M(2, 3) = gm1 * rho * psi;
      M(3, 0) = L;
      M(3, 3) = m;
    } else {
      const double den = gm1 * (2.0 * rho * rho * L + m * m) - gp1 * n * n;
      const double psi = (den != 0.0) ? 2.0 * m * n / den : 0.0;
      M(0, 1) = 1.0;
      M(1, 0) = vy + (1.0 - gamma_) * vx * psi;
      M(1, 1) = vx + gp1 * vy * psi;
      M(1, 2) = -gamma_ * psi;
      M(1, 3) = gm1 * rho * psi;
      M(2, 2) = 1.0;
      M(3, 1) = L;
      M(3, 3) = n;
    }
    return M;
  }

  // Jacobian of the local part W = (m, n, rho u^2 + p, L) (x sweep; v^2 in y).
  Mat<4> dW_dU(const State& u, const Geom& g) const {
    const double rho = u[0];
    const double vx = u[1] / rho, vy = u[2] / rho;
    const double gm1 = gamma_ - 1.0;
    Mat<4> J;
    J(0, 1) = 1.0;
    J(1, 2) = 1.0;
    if constexpr (XDir) {
      J(2, 0) = (1.0 - gamma_) * g.phi + 0.5 * (gamma_ - 3.0) * vx * vx + 0.5 * gm1 * vy * vy;
      J(2, 1) = (3.0 - gamma_) * vx;
      J(2, 2) = (1.0 - gamma_) * vy;
      J(2, 3) = gm1;
    } else {
      J(2, 0) = (1.0 - gamma_) * g.phi + 0.5 * gm1 * vx * vx + 0.5 * (gamma_ - 3.0) * vy * vy;
      J(2, 1) = (1.0 - gamma_) * vx;
      J(2, 2) = (3.0 - gamma_) * vy;
      J(2, 3) = gm1;
    }
    J(3, 0) = gm1 * (vx * vx + vy * vy) / rho - gamma_ * u[3] / (rho * rho);
    J(3, 1) = (1.0 - gamma_) * vx / rho;
    J(3, 2) = (1.0 - gamma_) * vy / rho;
    J(3, 3) = gamma_ / rho;
    if constexpr (!XDir) {
      // Rows of W^y = (m, n, rho v^2 + p, L): first two rows swap.
      Mat<4> Jy;
      Jy(0, 1) = 1.0;      // dW0/dU = d(m)/dU
      Jy(1, 2) = 1.0;      // d(n)/dU
      for (int c = 0; c < 4; ++c) {
        Jy(2, c) = J(2, c);
        Jy(3, c) = J(3, c);
      }
      return Jy;
    }
    return J;
  }

  Mat<4> c_matrix(const State& u, const Geom& g) const { return dW_dU(u, g) * m_matrix(u, g); }

  Mat<4> a_matrix(const State& u, const Geom& g) const {
    const double rho = u[0];
    const double vx = u[1] / rho, vy = u[2] / rho;
    const double gm1 = gamma_ - 1.0;
    const double p = pressure(u, g);
    const double L = (u[3] + p) / rho;
    const double ke = 0.5 * (vx * vx + vy * vy);
    Mat<4> A;
    if constexpr (XDir) {
      A(0, 1) = 1.0;
      A(1, 0) = gm1 * ke - vx * vx - gm1 * g.phi;
      A(1, 1) = (3.0 - gamma_) * vx;
      A(1, 2) = -gm1 * vy;
      A(1, 3) = gm1;
      A(2, 0) = -vx * vy;
      A(2, 1) = vy;
      A(2, 2) = vx;
      A(3, 0) = vx * (gm1 * ke - L - gm1 * g.phi);
      A(3, 1) = L - gm1 * vx * vx;
      A(3, 2) = -gm1 * vx * vy;
      A(3, 3) = gamma_ * vx;
    } else {
      A(0, 2) = 1.0;
      A(1, 0) = -vx * vy;
      A(1, 1) = vy;
      A(1, 2) = vx;
      A(2, 0) = gm1 * ke - vy * vy - gm1 * g.phi;
      A(2, 1) = -gm1 * vx;
      A(2, 2) = (3.0 - gamma_) * vy;
      A(2, 3) = gm1;
      A(3, 0) = vy * (gm1 * ke - L - gm1 * g.phi);
      A(3, 1) = -gm1 * vx * vy;
      A(3, 2) = L - gm1 * vy * vy;
      A(3, 3) = gamma_ * vy;
    }
    return A;
  }

  lcd::CharBasis<4> char_basis(const State& u, const Geom& g) const {
    return lcd::eigendecompose(c_matrix(u, g));
  }

  IVec integrand(const State& u, const Geom& g) const { return {u[0] * g.phi_x}; }

  State clamp_sample(State u) const {
    if (!(u[0] > 1e-12)) u[0] = 1e-12;
    return u;
  }

 private:
  double gamma_;
};

using EulerXSweep = EulerSweepModel<true>;
using EulerYSweep = EulerSweepModel<false>;

}  // namespace balsa
