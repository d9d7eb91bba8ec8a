//! \file nozzle.hpp
//  \brief Isentropic nozzle flow: U = (sigma rho, sigma rho u) with pressure
//         p = kappa rho^gamma and cross-section sigma(x).

#pragma once

#include <cmath>

#include "balsa/core.hpp"
#include "balsa/lcd.hpp"
#include "balsa/systems/geometry.hpp"

namespace balsa {

class NozzleModel {
 public:
  static constexpr int dim = 2;
  static constexpr int n_integrals = 0;
  using State = Vec<2>;   // (sigma rho, q = sigma rho u)
  using EVec = Vec<2>;    // (q, E)
  using IVec = std::array<double, 0>;
  using Geom = double;    // sigma
  static constexpr std::array<int, 2> kEquilibriumSlots = {1, -1};

  NozzleModel(double gamma, double kappa) : gamma_(gamma), kappa_(kappa) {}

  double gamma() const { return gamma_; }
  double kappa() const { return kappa_; }

  void validate(const State& u) const {
    if (!(u[0] > 0.0) || !u.finite()) throw state_error("nozzle: nonpositive or non-finite sigma*rho");
  }

  double pressure(const State& u, Geom sigma) const {
    return kappa_ * std::pow(u[0] / sigma, gamma_);
  }
  double sound_speed(const State& u, Geom sigma) const {
    const double rho = u[0] / sigma;
    return std::sqrt(kappa_ * gamma_ * std::pow(rho, gamma_ - 1.0));
  }

  State flux(const State& u, Geom sigma) const {
    const double vel = u[1] / u[0];
    return {u[1], u[1] * vel + sigma * pressure(u, sigma)};
  }

  std::pair<double, double> speeds(const State& u, Geom sigma) const {
    const double vel = u[1] / u[0];
    const double c = sound_speed(u, sigma);
    return {vel - c, vel + c};
  }

  EVec equilibrium(const State& u, Geom sigma, const IVec&) const {
    const double vel = u[1] / u[0];
    const double rho = u[0] / sigma;
    return {u[1], 0.5 * vel * vel + kappa_ * gamma_ / (gamma_ - 1.0) * std::pow(rho, gamma_ - 1.0)};
  }

  // Invert E = q^2 / (2 a^2) + kappa gamma/(gamma-1) (a/sigma)^(gamma-1) for
  // a = sigma rho on the same side of the sonic point as the reference.
  State recover(const EVec& e, Geom sigma, const IVec&, const State& ref, bool* fallback = nullptr) const {
    const double q = e[0], E = e[1];
    if (q == 0.0) {
      const double val = (gamma_ - 1.0) * E / (kappa_ * gamma_);
      if (!(val > 0.0)) throw recovery_error("nozzle recover: nonpositive energy at rest");
      return {sigma * std::pow(val, 1.0 / (gamma_ - 1.0)), 0.0};
    }
    auto Efun = [&](double a) {
      return 0.5 * q * q / (a * a) +
             kappa_ * gamma_ / (gamma_ - 1.0) * std::pow(a / sigma, gamma_ - 1.0);
    };
    auto dEfun = [&](double a) {
      return -q * q / (a * a * a) + kappa_ * gamma_ * std::pow(a / sigma, gamma_ - 2.0) / sigma;
    };
    const double a_sonic =
        std::pow(q * q * std::pow(sigma, gamma_ - 1.0) / (kappa_ * gamma_), 1.0 / (gamma_ + 1.0));
    if (Efun(a_sonic) > E * (1.0 + 1e-13)) {
      if (Efun(a_sonic) > E * (1.0 + 1e-9))
        throw recovery_error("nozzle recover: no root on the reference branch");
      // Grazing the sonic point: return it.
      if (fallback) *fallback = true;
      return {a_sonic, q};
    }
    const bool subsonic = ref[0] >= a_sonic;
    double lo, hi;
    if (subsonic) {
      lo = a_sonic;
      hi = std::max(2.0 * a_sonic, 2.0 * ref[0]);
      while (Efun(hi) < E) hi *= 2.0;
    } else {
      hi = a_sonic;
      lo = std::min(0.5 * a_sonic, 0.5 * ref[0]);
      while (Efun(lo) < E) lo *= 0.5;
    }
    double a = std::min(std::max(ref[0], std::min(lo, hi)), std::max(lo, hi));
    for (int it = 0; it < 100; ++it) {
      const double r = Efun(a) - E;
      if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(E))) break;
      if (r > 0.0) (subsonic ? hi : lo) = a;
      else (subsonic ? lo : hi) = a;
      const double d = dEfun(a);
      double next = (d != 0.0) ? a - r / d : 0.5 * (lo + hi);
      if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - a) <= 1e-15 * a) { a = next; break; }
      a = next;
    }
    return {a, q};
  }

  Mat<2> m_matrix(const State& u, Geom) const {
    Mat<2> m;
    m(0, 0) = 1.0;
    m(1, 0) = u[1] / u[0];
    m(1, 1) = u[0];
    return m;
  }

  Mat<2> c_matrix(const State& u, Geom sigma) const {
    const double vel = u[1] / u[0];
    const double c = sound_speed(u, sigma);
    Mat<2> m;
    m(0, 0) = vel;
    m(0, 1) = u[0];
    m(1, 0) = c * c / u[0];
    m(1, 1) = vel;
    return m;
  }

  Mat<2> a_matrix(const State& u, Geom sigma) const {
    const double vel = u[1] / u[0];
    const double c = sound_speed(u, sigma);
    Mat<2> m;
    m(0, 1) = 1.0;
    m(1, 0) = c * c - vel * vel;
    m(1, 1) = 2.0 * vel;
    return m;
  }

  lcd::CharBasis<2> char_basis(const State& u, Geom sigma) const {
    const double vel = u[1] / u[0];
    const double c = sound_speed(u, sigma);
    lcd::CharBasis<2> b;
    b.lambda = {vel - c, vel + c};
    b.Q(0, 0) = u[0];
    b.Q(0, 1) = u[0];
    b.Q(1, 0) = -c;
    b.Q(1, 1) = c;
    const double den = 2.0 * c * u[0];
    b.Qinv(0, 0) = c / den;
    b.Qinv(0, 1) = -u[0] / den;
    b.Qinv(1, 0) = c / den;
    b.Qinv(1, 1) = u[0] / den;
    return b;
  }

  IVec integrand(const State&, Geom) const { return {}; }

  State clamp_sample(State u) const {
    if (!(u[0] > 1e-12)) u[0] = 1e-12;
    return u;
  }

 private:
  double gamma_;
  double kappa_;
};

}  // namespace balsa
