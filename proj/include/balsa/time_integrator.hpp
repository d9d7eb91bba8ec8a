//! \file time_integrator.hpp
//  \brief Three-stage third-order SSP Runge-Kutta with CFL-limited adaptive
//         steps that land exactly on the final time.

#pragma once

#include <functional>

#include "balsa/core.hpp"
#include "balsa/grid.hpp"

namespace balsa {

struct TimeControls {
  double cfl = 0.5;
  double t_final = 0.0;
  long max_steps = 50'000'000;
};

namespace time_detail {

template <class FieldT>
struct FieldOps;

// Stage combinations run over the ghost layer too: right-hand sides only
// write interior cells (their ghost entries stay zero), so frozen ghost data
// carries through the stages unchanged.
template <int N>
struct FieldOps<Field1D<Vec<N>>> {
  static void axpby(Field1D<Vec<N>>& out, double a, const Field1D<Vec<N>>& x, double b,
                    const Field1D<Vec<N>>& y) {
    for (int j = -kGhostWidth; j < out.n() + kGhostWidth; ++j)
      for (int c = 0; c < N; ++c) out(j)[c] = a * x(j)[c] + b * y(j)[c];
  }
};

template <int N>
struct FieldOps<Field2D<Vec<N>>> {
  static void axpby(Field2D<Vec<N>>& out, double a, const Field2D<Vec<N>>& x, double b,
                    const Field2D<Vec<N>>& y) {
    for (int k = -kGhostWidth; k < out.ny() + kGhostWidth; ++k)
      for (int j = -kGhostWidth; j < out.nx() + kGhostWidth; ++j)
        for (int c = 0; c < N; ++c) out(j, k)[c] = a * x(j, k)[c] + b * y(j, k)[c];
  }
};

}  // namespace time_detail

// U1 = U + dt L(U); U2 = 3/4 U + 1/4 (U1 + dt L(U1)); U <- 1/3 U + 2/3 (U2 + dt L(U2)).
// rhs(U, out) may refill U's ghost cells; scratch fields must match U's shape.
template <class FieldT, class Rhs>
void ssp_rk3_step(FieldT& U, double dt, Rhs&& rhs, FieldT& u1, FieldT& u2, FieldT& dudt) {
  using Ops = time_detail::FieldOps<FieldT>;
  rhs(U, dudt);
  Ops::axpby(u1, 1.0, U, dt, dudt);
  rhs(u1, dudt);
  Ops::axpby(u1, 1.0, u1, dt, dudt);
  Ops::axpby(u2, 0.75, U, 0.25, u1);
  rhs(u2, dudt);
  Ops::axpby(u2, 1.0, u2, dt, dudt);
  Ops::axpby(U, 1.0 / 3.0, U, 2.0 / 3.0, u2);
}

// CFL step sizes; a vanishing top speed falls back to dt = cfl dx.
inline double compute_dt(double cfl, double dx, double max_speed) {
  if (!(max_speed > 0.0)) return cfl * dx;
  return cfl * dx / max_speed;
}

inline double compute_dt_2d(double cfl, double dx, double dy, double sx, double sy) {
  const double denom = sx / dx + sy / dy;
  if (!(denom > 0.0)) return cfl * dx;
  return cfl / denom;
}

struct IntegrationResult {
  double t = 0.0;
  long steps = 0;
};

// March U to t_final. dt_fn(U) returns the CFL-limited step; the last step is
// clipped so the reported time equals t_final bit-exactly.
template <class FieldT, class Rhs, class DtFn>
IntegrationResult integrate_to(FieldT& U, const TimeControls& tc, Rhs&& rhs, DtFn&& dt_fn,
                               FieldT& u1, FieldT& u2, FieldT& dudt) {
  IntegrationResult res;
  double t = 0.0;
  while (t < tc.t_final) {
    if (res.steps >= tc.max_steps) throw numeric_error("integrate_to: max_steps exceeded");
    double dt = dt_fn(U);
    bool last = false;
    if (t + dt >= tc.t_final) {
      dt = tc.t_final - t;
      last = true;
    }
    ssp_rk3_step(U, dt, rhs, u1, u2, dudt);
    ++res.steps;
    t = last ? tc.t_final : t + dt;
  }
  res.t = tc.t_final;
  return res;
}

}  // namespace balsa
