//! \file advection.hpp
//  \brief Linear advection u_t + a u_x = 0 as a degenerate single-component
//         model; used by the convergence harness.

#pragma once

#include "balsa/core.hpp"
#include "balsa/lcd.hpp"
#include "balsa/systems/geometry.hpp"

namespace balsa {

class AdvectionModel {
 public:
  static constexpr int dim = 1;
  static constexpr int n_integrals = 0;
  using State = Vec<1>;
  using EVec = Vec<1>;
  using IVec = std::array<double, 0>;
  using Geom = double;  // unused
  static constexpr std::array<int, 1> kEquilibriumSlots = {0};

  explicit AdvectionModel(double speed = 1.0) : a_(speed) {}

  void validate(const State& u) const {
    if (!u.finite()) throw state_error("advection: non-finite value");
  }
  State flux(const State& u, Geom) const { return {a_ * u[0]}; }
  std::pair<double, double> speeds(const State&, Geom) const { return {a_, a_}; }
  EVec equilibrium(const State& u, Geom, const IVec&) const { return {u[0]}; }
  State recover(const EVec& e, Geom, const IVec&, const State&, bool* = nullptr) const {
    return {e[0]};
  }
  Mat<1> m_matrix(const State&, Geom) const {
    Mat<1> m;
    m(0, 0) = a_;
    return m;
  }
  Mat<1> c_matrix(const State&, Geom) const { return m_matrix({}, 0.0); }
  Mat<1> a_matrix(const State&, Geom) const { return m_matrix({}, 0.0); }
  lcd::CharBasis<1> char_basis(const State&, Geom) const {
    auto b = lcd::identity_basis<1>();
    b.lambda = {a_};
    return b;
  }
  IVec integrand(const State&, Geom) const { return {}; }
  State clamp_sample(State u) const { return u; }

 private:
  double a_;
};

}  // namespace balsa
