//! \file examples.hpp
//  \brief The eight benchmark runs, their steady-state builders, CSV output,
//         and the convergence-study harness.

#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "balsa/run/config.hpp"
#include "balsa/run/csv.hpp"
#include "balsa/run/metrics.hpp"
#include "balsa/scheme.hpp"
#include "balsa/scheme2d.hpp"
#include "balsa/systems/advection.hpp"
#include "balsa/systems/euler.hpp"
#include "balsa/systems/nozzle.hpp"
#include "balsa/systems/saint_venant.hpp"
#include "balsa/systems/two_layer.hpp"
#include "balsa/time_integrator.hpp"

namespace balsa {

inline SchemeVariant variant_from_name(const std::string& s) {
  if (s == "1") return SchemeVariant::LcdEquilibrium;
  if (s == "2") return SchemeVariant::PlainEquilibrium;
  if (s == "3") return SchemeVariant::LcdConservative;
  if (s == "A") return SchemeVariant::LcdEquilibriumViaA;
  throw config_error("unknown scheme: " + s);
}

inline SchemeOptions scheme_options(const RunConfig& cfg) {
  SchemeOptions o;
  o.corrections = cfg.corrections;
  o.first_order = cfg.first_order;
  o.diffusion_factor = cfg.diffusion_factor;
  return o;
}

struct ExampleOutput {
  MetricsReport metrics;
  std::string solution_path;
  std::string metrics_path;
  long steps = 0;
  double runtime_sec = 0.0;
};

// ---------------------------------------------------------------------------
// Generic drivers
// ---------------------------------------------------------------------------

template <class M>
IntegrationResult evolve(Solver1D<M>& solver, Field1D<typename M::State>& U,
                         const TimeControls& tc) {
  Field1D<typename M::State> u1(solver.grid().n), u2(solver.grid().n), dudt(solver.grid().n);
  auto rhs = [&](Field1D<typename M::State>& u, Field1D<typename M::State>& out) {
    solver.rhs(u, out);
  };
  auto dt_fn = [&](const Field1D<typename M::State>& u) {
    return compute_dt(tc.cfl, solver.grid().dx, solver.max_abs_speed(u));
  };
  return integrate_to(U, tc, rhs, dt_fn, u1, u2, dudt);
}

template <class MX, class MY>
IntegrationResult evolve(Solver2D<MX, MY>& solver, Field2D<typename MX::State>& U,
                         const TimeControls& tc) {
  const auto& g = solver.grid();
  Field2D<typename MX::State> u1(g.x.n, g.y.n), u2(g.x.n, g.y.n), dudt(g.x.n, g.y.n);
  auto rhs = [&](Field2D<typename MX::State>& u, Field2D<typename MX::State>& out) {
    solver.rhs(u, out);
  };
  auto dt_fn = [&](const Field2D<typename MX::State>& u) {
    const auto s = solver.max_abs_speeds(u);
    return compute_dt_2d(tc.cfl, g.x.dx, g.y.dx, s.first, s.second);
  };
  return integrate_to(U, tc, rhs, dt_fn, u1, u2, dudt);
}

template <class M>
void write_solution_csv_1d(const std::string& path, Solver1D<M>& solver,
                           Field1D<typename M::State>& U,
                           const std::vector<std::string>& comp_names,
                           const std::vector<std::string>& eq_names) {
  fill_ghosts(U, solver.boundary());
  Field1D<Vec<M::dim>> e_center;
  std::array<quadrature::RunningIntegrals, std::max(M::n_integrals, 1)> ladders;
  compute_equilibrium_line(solver.model(), solver.grid(), solver.geometry(), solver.boundary(), U,
                           e_center, ladders);

  CsvWriter csv(path);
  std::vector<std::string> head = {"x"};
  head.insert(head.end(), comp_names.begin(), comp_names.end());
  head.insert(head.end(), eq_names.begin(), eq_names.end());
  csv.header(head);
  for (int j = 0; j < solver.grid().n; ++j) {
    std::vector<double> row = {solver.grid().x_center(j)};
    for (int c = 0; c < M::dim; ++c) row.push_back(U(j)[c]);
    for (int c = 0; c < M::dim; ++c) row.push_back(e_center(j)[c]);
    csv.row(row);
  }
}

template <int N>
void write_solution_csv_2d(const std::string& path, const GridSpec2D& grid,
                           const Field2D<Vec<N>>& U,
                           const std::vector<std::string>& comp_names) {
  CsvWriter csv(path);
  std::vector<std::string> head = {"x", "y"};
  head.insert(head.end(), comp_names.begin(), comp_names.end());
  csv.header(head);
  for (int k = 0; k < grid.y.n; ++k)
    for (int j = 0; j < grid.x.n; ++j) {
      std::vector<double> row = {grid.x.x_center(j), grid.y.x_center(k)};
      for (int c = 0; c < N; ++c) row.push_back(U(j, k)[c]);
      csv.row(row);
    }
}

// Interior-only difference metrics against a steady reference.
template <int N>
void add_difference_metrics(MetricsReport& m, const Field1D<Vec<N>>& U,
                            const Field1D<Vec<N>>& steady, double dx,
                            const std::vector<std::string>& comp_names, int primary) {
  for (int c = 0; c < N; ++c) {
    std::vector<double> diff(static_cast<std::size_t>(U.n()));
    for (int j = 0; j < U.n(); ++j) diff[static_cast<std::size_t>(j)] = U(j)[c] - steady(j)[c];
    const std::string& name = comp_names[static_cast<std::size_t>(c)];
    m.set("linf_" + name, linf(diff));
    m.set("l1_" + name, l1(diff, dx));
    m.set("tv_" + name, total_variation(diff));
    if (c == primary) m.set("osc_count", static_cast<double>(oscillation_count(diff)));
  }
}

template <int N>
void add_field_metrics(MetricsReport& m, const Field1D<Vec<N>>& U,
                       const std::vector<std::string>& comp_names, int primary) {
  for (int c = 0; c < N; ++c) {
    std::vector<double> vals(static_cast<std::size_t>(U.n()));
    for (int j = 0; j < U.n(); ++j) vals[static_cast<std::size_t>(j)] = U(j)[c];
    if (c == primary) m.set("osc_count", static_cast<double>(oscillation_count(vals)));
  }
}

inline void write_metrics_csv(const std::string& path, const MetricsReport& m) {
  CsvWriter csv(path);
  std::vector<std::string> head;
  std::vector<double> row;
  for (const auto& kv : m.values) {
    head.push_back(kv.first);
    row.push_back(kv.second);
  }
  csv.header(head);
  csv.row(row);
}

// ---------------------------------------------------------------------------
// Example geometry and steady-state builders
// ---------------------------------------------------------------------------

inline double nozzle_sigma_divergent(double x) { return 0.976 + 0.748 * std::tanh(0.8 * x - 4.0); }
inline double nozzle_sigma_convergent(double x) { return 0.976 - 0.748 * std::tanh(0.8 * x - 4.0); }

// Per-cell nozzle equilibrium at (q_eq, E_eq) on the requested Mach branch.
// The ghost cells carry the equilibrium continuation, so preservation runs
// can freeze them.
inline Field1D<Vec<2>> nozzle_steady_state(const NozzleModel& model, const GridSpec1D& grid,
                                           const GeometryField1D<double>& geom, double q_eq,
                                           double E_eq, bool supersonic) {
  Field1D<Vec<2>> U(grid.n);
  for (int j = -kGhostWidth; j < grid.n + kGhostWidth; ++j) {
    const double sigma = geom.center[j];
    const double a_sonic = std::pow(
        q_eq * q_eq * std::pow(sigma, model.gamma() - 1.0) / (model.kappa() * model.gamma()),
        1.0 / (model.gamma() + 1.0));
    const Vec<2> ref = {supersonic ? 0.5 * a_sonic : 2.0 * a_sonic, q_eq};
    U(j) = model.recover({q_eq, E_eq}, sigma, {}, ref);
  }
  return U;
}

inline double example4_topography(double x) {
  if (x >= 8.0 && x <= 12.0) return 0.2 - 0.05 * (x - 10.0) * (x - 10.0);
  return 0.0;
}

struct TwoLayerSteadyEx5 {
  // Printed discontinuous steady state; continuous equilibrium variables at
  // g = 10, r = 0.98.
  static constexpr double h1_left = 1.22373355048230, h1_right = 1.44970064153589;
  static constexpr double h2_left = 0.968329515483846, h2_right = 1.12439026921484;
  static constexpr double q1 = 12.0, q2 = 10.0;
  static constexpr double z_left = -2.0, z_right = -1.0;
};

inline Field1D<Vec<4>> two_layer_ex5_steady(const GridSpec1D& grid) {
  Field1D<Vec<4>> U(grid.n);
  using S = TwoLayerSteadyEx5;
  for (int j = -kGhostWidth; j < grid.n + kGhostWidth; ++j) {
    const bool left = grid.x_center(j) < 0.0;
    U(j) = {left ? S::h1_left : S::h1_right, S::q1, left ? S::h2_left : S::h2_right, S::q2};
  }
  return U;
}

inline Vec<4> euler2d_hydrostatic(double gamma, double x, double y) {
  const double phi = x + y;
  const double rho = 1.21 * std::exp(-1.21 * phi);
  const double p = std::exp(-1.21 * phi);
  return {rho, 0.0, 0.0, p / (gamma - 1.0) + rho * phi};
}

// ---------------------------------------------------------------------------
// Example setups (grid, geometry, boundary conditions, initial data)
// ---------------------------------------------------------------------------

template <class M>
struct Setup1D {
  M model;
  GridSpec1D grid;
  BoundaryCondition1D<M::dim> bc;
  GeometryField1D<typename M::Geom> geom;
  Field1D<typename M::State> initial;
  std::optional<Field1D<typename M::State>> steady;
  std::vector<std::string> comp_names, eq_names;
  int primary = 0;
  double t_final = 0.0;
};

inline Setup1D<NozzleModel> setup_nozzle_example(int n_example, const RunConfig& cfg) {
  const bool divergent = (n_example == 1);
  const double E_eq = divergent ? 21.9230562619897 : 58.3367745090349;
  const double q_eq = 8.0;
  const double bump = divergent ? 1e-2 : 0.3;
  const int nx = cfg.nx > 0 ? cfg.nx : 200;
  Setup1D<NozzleModel> s{NozzleModel(cfg.gamma, cfg.kappa),
                         GridSpec1D(0.0, 10.0, nx),
                         free_boundaries<2>(),
                         {},
                         {},
                         {},
                         {"sigma_rho", "q"},
                         {"eq_q", "eq_E"},
                         0,
                         cfg.t_final >= 0.0 ? cfg.t_final : (divergent ? 0.8 : 0.5)};
  auto sigma = divergent ? nozzle_sigma_divergent : nozzle_sigma_convergent;
  s.geom = make_geometry<double>(s.grid, [&](double x, int) { return sigma(x); });
  auto steady = nozzle_steady_state(s.model, s.grid, s.geom, q_eq, E_eq,
                                    cfg.nozzle_branch == "super");
  Field1D<Vec<2>> U(s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) {
    const double x = s.grid.x_center(j);
    const double sg = s.geom.center[j];
    const double rho_eq = steady(j)[0] / sg;
    const double u_eq = steady(j)[1] / steady(j)[0];
    const double rho = rho_eq + ((x >= 0.5 && x <= 1.5) ? bump : 0.0);
    U(j) = {sg * rho, sg * rho * u_eq};
  }
  s.initial = U;
  s.steady = steady;
  return s;
}

inline Setup1D<SaintVenantModel> setup_example3(const RunConfig& cfg) {
  const int nx = cfg.nx > 0 ? cfg.nx : 100;  // dx = 1/250 on [-0.1, 0.3]
  Setup1D<SaintVenantModel> s{SaintVenantModel(cfg.gravity, cfg.manning >= 0.0 ? cfg.manning : 0.4),
                              GridSpec1D(-0.1, 0.3, nx),
                              free_boundaries<2>(),
                              {},
                              {},
                              {},
                              {"h", "q"},
                              {"eq_q", "eq_E"},
                              0,
                              cfg.t_final >= 0.0 ? cfg.t_final : 0.03};
  s.geom = make_geometry<double>(s.grid, [](double x, int side) {
    if (x < 0.0) return 1.0;
    if (x > 0.0) return 1.9;
    return side < 0 ? 1.0 : 1.9;
  });
  Field1D<Vec<2>> U(s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) {
    const bool left = s.grid.x_center(j) < 0.0;
    const double h = left ? 1.0 : 0.8;
    const double u = left ? 2.0 : 4.0;
    U(j) = {h, h * u};
  }
  s.initial = U;
  return s;
}

inline Setup1D<SaintVenantModel> setup_example4(const RunConfig& cfg) {
  const int nx = cfg.nx > 0 ? cfg.nx : 100;  // dx = 1/4 on [0, 25]
  Setup1D<SaintVenantModel> s{SaintVenantModel(cfg.gravity, cfg.manning >= 0.0 ? cfg.manning : 0.15),
                              GridSpec1D(0.0, 25.0, nx),
                              {},
                              {},
                              {},
                              {},
                              {"h", "q"},
                              {"eq_q", "eq_E"},
                              0,
                              cfg.t_final >= 0.0 ? cfg.t_final : 500.0};
  s.geom = make_geometry<double>(s.grid, [](double x, int) { return example4_topography(x); });
  s.bc.left.kind = {BcKind::Free, BcKind::Fixed};
  s.bc.left.value[1] = 4.42;
  s.bc.right.kind = {BcKind::Fixed, BcKind::Free};
  s.bc.right.value[0] = 2.0;
  Field1D<Vec<2>> U(s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) U(j) = {2.0 - s.geom.center[j], 0.0};
  s.initial = U;
  return s;
}

inline Setup1D<TwoLayerModel> setup_example5(const RunConfig& cfg) {
  const int nx = cfg.nx > 0 ? cfg.nx : 200;  // dx = 1/100 on [-1, 1]
  Setup1D<TwoLayerModel> s{TwoLayerModel(cfg.gravity_two_layer, cfg.density_ratio),
                           GridSpec1D(-1.0, 1.0, nx),
                           free_boundaries<4>(),
                           {},
                           {},
                           {},
                           {"h1", "q1", "h2", "q2"},
                           {"eq_q1", "eq_E1", "eq_q2", "eq_E2"},
                           0,
                           cfg.t_final >= 0.0 ? cfg.t_final : 0.08};
  using St = TwoLayerSteadyEx5;
  s.geom = make_geometry<double>(s.grid, [](double x, int side) {
    if (x < 0.0) return St::z_left;
    if (x > 0.0) return St::z_right;
    return side < 0 ? St::z_left : St::z_right;
  });
  auto steady = two_layer_ex5_steady(s.grid);
  Field1D<Vec<4>> U(s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) {
    U(j) = steady(j);
    const double x = s.grid.x_center(j);
    if (x >= -0.9 && x <= -0.8) U(j)[0] += 0.12;
  }
  s.initial = U;
  s.steady = steady;
  return s;
}

inline Setup1D<TwoLayerModel> setup_example6(const RunConfig& cfg) {
  const int nx = cfg.nx > 0 ? cfg.nx : 100;  // dx = 1/50 on [-1, 1]
  Setup1D<TwoLayerModel> s{TwoLayerModel(cfg.gravity_two_layer, cfg.density_ratio),
                           GridSpec1D(-1.0, 1.0, nx),
                           free_boundaries<4>(),
                           {},
                           {},
                           {},
                           {"h1", "q1", "h2", "q2"},
                           {"eq_q1", "eq_E1", "eq_q2", "eq_E2"},
                           0,
                           cfg.t_final >= 0.0 ? cfg.t_final : 0.1};
  s.geom = make_geometry<double>(s.grid, [](double x, int side) {
    if (x < 0.0) return -2.0;
    if (x > 0.0) return -1.5;
    return side < 0 ? -2.0 : -1.5;
  });
  Field1D<Vec<4>> U(s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) {
    const bool left = s.grid.x_center(j) < 0.0;
    U(j) = left ? Vec<4>{1.0, 1.5, 1.0, 1.0} : Vec<4>{0.8, 1.2, 1.2, 1.8};
  }
  s.initial = U;
  return s;
}

inline Setup1D<Euler1DModel> setup_example7(const RunConfig& cfg) {
  const int nx = cfg.nx > 0 ? cfg.nx : 50;  // dx = 1/50 on [0, 1]
  Setup1D<Euler1DModel> s{Euler1DModel(cfg.gamma),
                          GridSpec1D(0.0, 1.0, nx),
                          {},
                          {},
                          {},
                          {},
                          {"rho", "m", "cE"},
                          {"eq_m", "eq_K", "eq_L"},
                          0,
                          cfg.t_final >= 0.0 ? cfg.t_final : 0.2};
  s.geom = make_geometry<GravityPoint>(s.grid, [](double x, int) {
    return GravityPoint{x, 1.0};
  });
  s.bc.left.kind = {BcKind::ReflectEven, BcKind::ReflectOdd, BcKind::ReflectEven};
  s.bc.right.kind = {BcKind::ReflectEven, BcKind::ReflectOdd, BcKind::ReflectEven};
  Field1D<Vec<3>> U(s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) {
    const double x = s.grid.x_center(j);
    const double rho = x <= 0.5 ? 1.0 : 0.125;
    const double p = x <= 0.5 ? 1.0 : 0.1;
    U(j) = {rho, 0.0, p / (cfg.gamma - 1.0) + rho * x};
  }
  s.initial = U;
  return s;
}

struct SetupEuler2D {
  EulerXSweep mx;
  EulerYSweep my;
  GridSpec2D grid;
  BoundaryCondition2D<4> bc;
  std::vector<GeometryField1D<GravityPoint>> rows, cols;
  Field2D<Vec<4>> initial;
  Field2D<Vec<4>> steady;
  double t_final = 0.0;
};

inline SetupEuler2D setup_example8(const RunConfig& cfg, bool perturbed) {
  const int nx = cfg.nx > 0 ? cfg.nx : 80;
  const int ny = cfg.ny > 0 ? cfg.ny : nx;
  SetupEuler2D s{EulerXSweep(cfg.gamma), EulerYSweep(cfg.gamma),
                 GridSpec2D{GridSpec1D(0.0, 1.0, nx), GridSpec1D(0.0, 1.0, ny)},
                 {},
                 {},
                 {},
                 Field2D<Vec<4>>(nx, ny),
                 Field2D<Vec<4>>(nx, ny),
                 cfg.t_final >= 0.0 ? cfg.t_final : 0.12};
  s.rows.reserve(static_cast<std::size_t>(ny));
  for (int k = 0; k < ny; ++k) {
    const double y = s.grid.y.x_center(k);
    s.rows.push_back(make_geometry<GravityPoint>(s.grid.x, [y](double x, int) {
      return GravityPoint{x + y, 1.0};
    }));
  }
  s.cols.reserve(static_cast<std::size_t>(nx));
  for (int j = 0; j < nx; ++j) {
    const double x = s.grid.x.x_center(j);
    s.cols.push_back(make_geometry<GravityPoint>(s.grid.y, [x](double y, int) {
      return GravityPoint{x + y, 1.0};
    }));
  }
  for (int k = -kGhostWidth; k < ny + kGhostWidth; ++k)
    for (int j = -kGhostWidth; j < nx + kGhostWidth; ++j) {
      const double x = s.grid.x.x_center(j), y = s.grid.y.x_center(k);
      s.steady(j, k) = euler2d_hydrostatic(cfg.gamma, x, y);
      Vec<4> u = s.steady(j, k);
      if (perturbed && x * x + y * y <= 0.15 * 0.15 && j >= 0 && j < nx && k >= 0 && k < ny) {
        const double phi = x + y;
        const double p = std::exp(-1.21 * phi) + 0.5;
        u[3] = p / (cfg.gamma - 1.0) + u[0] * phi;
      }
      s.initial(j, k) = u;
    }
  return s;
}

// ---------------------------------------------------------------------------
// run_example
// ---------------------------------------------------------------------------

namespace run_detail {

template <class M>
ExampleOutput drive_1d(Setup1D<M>& s, const RunConfig& cfg, const std::string& label) {
  Solver1D<M> solver(s.model, s.grid, s.bc, s.geom, variant_from_name(cfg.scheme),
                     scheme_options(cfg));
  Field1D<typename M::State> U = s.initial;
  if (!cfg.ic_file.empty()) {
    const auto rows = read_csv(cfg.ic_file);
    if (static_cast<int>(rows.size()) != s.grid.n)
      throw config_error("ic_file row count does not match the grid");
    for (int j = 0; j < s.grid.n; ++j) {
      const auto& r = rows[static_cast<std::size_t>(j)];
      if (static_cast<int>(r.size()) < M::dim + 1)
        throw config_error("ic_file needs x plus one column per component");
      for (int c = 0; c < M::dim; ++c) U(j)[c] = r[static_cast<std::size_t>(c + 1)];
    }
  }

  TimeControls tc{cfg.cfl, s.t_final, cfg.max_steps};
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = evolve(solver, U, tc);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ExampleOutput out;
  out.steps = res.steps;
  out.runtime_sec = wall;
  out.metrics.set("t_final", res.t);
  out.metrics.set("steps", static_cast<double>(res.steps));
  out.metrics.set("runtime_sec", wall);
  if (s.steady) {
    add_difference_metrics(out.metrics, U, *s.steady, s.grid.dx, s.comp_names, s.primary);
  } else {
    add_field_metrics(out.metrics, U, s.comp_names, s.primary);
  }
  out.metrics.set("hyperbolicity_fallbacks",
                  static_cast<double>(solver.diagnostics().hyperbolicity_fallbacks));
  out.metrics.set("recovery_fallbacks",
                  static_cast<double>(solver.diagnostics().recovery_fallbacks));

  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.write_solution) {
    out.solution_path = cfg.out_dir + "/" + label + "_scheme" + cfg.scheme + ".csv";
    write_solution_csv_1d(out.solution_path, solver, U, s.comp_names, s.eq_names);
  }
  out.metrics_path = cfg.out_dir + "/metrics_" + label + "_scheme" + cfg.scheme + ".csv";
  write_metrics_csv(out.metrics_path, out.metrics);
  return out;
}

}  // namespace run_detail

// Example 4 has two phases: convergence to the discrete steady flow, then a
// small perturbation of that flow. Flatness metrics come from phase one.
inline ExampleOutput run_example4(const RunConfig& cfg) {
  auto s = setup_example4(cfg);
  Solver1D<SaintVenantModel> solver(s.model, s.grid, s.bc, s.geom, variant_from_name(cfg.scheme),
                                    scheme_options(cfg));
  Field1D<Vec<2>> U = s.initial;
  TimeControls tc{cfg.cfl, s.t_final, cfg.max_steps};
  const auto t0 = std::chrono::steady_clock::now();
  auto res = evolve(solver, U, tc);

  ExampleOutput out;
  out.metrics.set("t_steady", res.t);
  // Flatness of q and E across the interior at the end of phase one.
  {
    fill_ghosts(U, s.bc);
    Field1D<Vec<2>> e_center;
    std::array<quadrature::RunningIntegrals, 1> ladders;
    compute_equilibrium_line(solver.model(), s.grid, s.geom, s.bc, U, e_center, ladders);
    double qdev = 0.0, emin = e_center(0)[1], emax = e_center(0)[1];
    for (int j = 0; j < s.grid.n; ++j) {
      qdev = std::max(qdev, std::abs(U(j)[1] - 4.42));
      emin = std::min(emin, e_center(j)[1]);
      emax = std::max(emax, e_center(j)[1]);
    }
    out.metrics.set("q_dev_max", qdev);
    out.metrics.set("E_spread", emax - emin);
    out.metrics.set("E_scale", std::max(std::abs(emin), std::abs(emax)));
  }
  const Field1D<Vec<2>> steady = U;

  // Phase two: perturb the depth and track the difference field.
  for (int j = 0; j < s.grid.n; ++j) {
    const double x = s.grid.x_center(j);
    if (x >= 9.5 && x <= 10.5) U(j)[0] += 1e-4;
  }
  TimeControls tc2{cfg.cfl, 1.5, cfg.max_steps};
  auto res2 = evolve(solver, U, tc2);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  out.steps = res.steps + res2.steps;
  out.runtime_sec = wall;
  out.metrics.set("steps", static_cast<double>(out.steps));
  out.metrics.set("runtime_sec", wall);
  add_difference_metrics(out.metrics, U, steady, s.grid.dx, s.comp_names, s.primary);

  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.write_solution) {
    out.solution_path = cfg.out_dir + "/example4_scheme" + cfg.scheme + ".csv";
    write_solution_csv_1d(out.solution_path, solver, U, s.comp_names, s.eq_names);
    Field1D<Vec<2>> steady_copy = steady;
    write_solution_csv_1d(cfg.out_dir + "/example4_steady_scheme" + cfg.scheme + ".csv", solver,
                          steady_copy, s.comp_names, s.eq_names);
  }
  out.metrics_path = cfg.out_dir + "/metrics_example4_scheme" + cfg.scheme + ".csv";
  write_metrics_csv(out.metrics_path, out.metrics);
  return out;
}

inline ExampleOutput run_example8(const RunConfig& cfg) {
  auto s = setup_example8(cfg, /*perturbed=*/true);
  Solver2D<EulerXSweep, EulerYSweep> solver(s.mx, s.my, s.grid, s.bc, s.rows, s.cols,
                                            variant_from_name(cfg.scheme), scheme_options(cfg));
  Field2D<Vec<4>> U = s.initial;
  TimeControls tc{cfg.cfl, s.t_final, cfg.max_steps};
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = evolve(solver, U, tc);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ExampleOutput out;
  out.steps = res.steps;
  out.runtime_sec = wall;
  out.metrics.set("t_final", res.t);
  out.metrics.set("steps", static_cast<double>(res.steps));
  out.metrics.set("runtime_sec", wall);
  // Pressure difference against the hydrostatic reference.
  double linf_p = 0.0, linf_rho = 0.0;
  for (int k = 0; k < s.grid.y.n; ++k)
    for (int j = 0; j < s.grid.x.n; ++j) {
      const double phi = s.grid.x.x_center(j) + s.grid.y.x_center(k);
      auto pres = [&](const Vec<4>& u) {
        return (cfg.gamma - 1.0) *
               (u[3] - u[0] * phi - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
      };
      linf_p = std::max(linf_p, std::abs(pres(U(j, k)) - pres(s.steady(j, k))));
      linf_rho = std::max(linf_rho, std::abs(U(j, k)[0] - s.steady(j, k)[0]));
    }
  out.metrics.set("linf_p_diff", linf_p);
  out.metrics.set("linf_rho_diff", linf_rho);
  out.metrics.set("hyperbolicity_fallbacks",
                  static_cast<double>(solver.diagnostics().hyperbolicity_fallbacks));

  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.write_solution) {
    out.solution_path = cfg.out_dir + "/example8_scheme" + cfg.scheme + ".csv";
    write_solution_csv_2d(out.solution_path, s.grid, U, {"rho", "m", "n", "cE"});
  }
  out.metrics_path = cfg.out_dir + "/metrics_example8_scheme" + cfg.scheme + ".csv";
  write_metrics_csv(out.metrics_path, out.metrics);
  return out;
}

inline ExampleOutput run_example(int n, const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  cfg.example = n;
  cfg.validate();
  switch (n) {
    case 1:
    case 2: {
      auto s = setup_nozzle_example(n, cfg);
      return run_detail::drive_1d(s, cfg, "example" + std::to_string(n));
    }
    case 3: {
      auto s = setup_example3(cfg);
      return run_detail::drive_1d(s, cfg, "example3");
    }
    case 4:
      return run_example4(cfg);
    case 5: {
      auto s = setup_example5(cfg);
      return run_detail::drive_1d(s, cfg, "example5");
    }
    case 6: {
      auto s = setup_example6(cfg);
      return run_detail::drive_1d(s, cfg, "example6");
    }
    case 7: {
      auto s = setup_example7(cfg);
      return run_detail::drive_1d(s, cfg, "example7");
    }
    case 8:
      return run_example8(cfg);
    default:
      throw config_error("example id must be 1..8");
  }
}

// ---------------------------------------------------------------------------
// Steady-state tables (`steady` subcommand)
// ---------------------------------------------------------------------------

inline std::string build_steady(int n, const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  switch (n) {
    case 1:
    case 2: {
      auto s = setup_nozzle_example(n, cfg);
      Solver1D<NozzleModel> solver(s.model, s.grid, s.bc, s.geom,
                                   variant_from_name(cfg.scheme), scheme_options(cfg));
      const std::string path =
          cfg.out_dir + "/example" + std::to_string(n) + "_steady.csv";
      Field1D<Vec<2>> steady = *s.steady;
      write_solution_csv_1d(path, solver, steady, s.comp_names, s.eq_names);
      return path;
    }
    case 4: {
      // Each scheme owns its discrete equilibrium: run phase one.
      RunConfig c2 = cfg;
      c2.write_solution = true;
      run_example4(c2);
      return cfg.out_dir + "/example4_steady_scheme" + cfg.scheme + ".csv";
    }
    case 5: {
      auto s = setup_example5(cfg);
      Solver1D<TwoLayerModel> solver(s.model, s.grid, s.bc, s.geom,
                                     variant_from_name(cfg.scheme), scheme_options(cfg));
      const std::string path = cfg.out_dir + "/example5_steady.csv";
      Field1D<Vec<4>> steady = *s.steady;
      write_solution_csv_1d(path, solver, steady, s.comp_names, s.eq_names);
      return path;
    }
    case 8: {
      auto s = setup_example8(cfg, /*perturbed=*/false);
      const std::string path = cfg.out_dir + "/example8_steady.csv";
      write_solution_csv_2d(path, s.grid, s.steady, {"rho", "m", "n", "cE"});
      return path;
    }
    default:
      throw config_error("no steady state defined for example " + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Convergence studies
// ---------------------------------------------------------------------------

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;
  double order = 0.0;  // 0 for the first row
};

// CFL shrink for order studies: dt ~ dx^(5/3) hides the third-order time
// error under the fifth-order spatial one.
inline double order_study_cfl(double base, int n, int n0) {
  return base * std::pow(double(n0) / n, 2.0 / 3.0);
}

// Linear advection of a periodic profile against the exact translate.
inline std::vector<ConvergenceRow> convergence_advection(const RunConfig& cfg,
                                                         const std::vector<int>& meshes) {
  const double t_end = cfg.t_final >= 0.0 ? cfg.t_final : 0.2;
  std::vector<ConvergenceRow> rows;
  for (int n : meshes) {
    GridSpec1D grid(0.0, 1.0, n);
    auto geom = make_geometry<double>(grid, [](double, int) { return 0.0; });
    AdvectionModel model(1.0);
    Solver1D<AdvectionModel> solver(model, grid, periodic_boundaries<1>(), geom,
                                    variant_from_name(cfg.scheme), scheme_options(cfg));
    Field1D<Vec<1>> U(grid.n);
    auto u0 = [](double x) { return std::sin(2.0 * M_PI * x); };
    for (int j = 0; j < grid.n; ++j) U(j) = {u0(grid.x_center(j))};
    TimeControls tc{cfg.first_order ? cfg.cfl : order_study_cfl(cfg.cfl, n, meshes.front()),
                    t_end, cfg.max_steps};
    evolve(solver, U, tc);
    double err = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      const double x = grid.x_center(j);
      err = std::max(err, std::abs(U(j)[0] - u0(x - t_end)));
    }
    rows.push_back({n, err, 0.0});
  }
  for (std::size_t k = 1; k < rows.size(); ++k)
    rows[k].order = std::log(rows[k - 1].error / rows[k].error) /
                    std::log(double(rows[k].n) / rows[k - 1].n);
  return rows;
}

// Smooth periodic subcritical shallow-water flow over a smooth bump;
// self-convergence on center-aligned mesh triples (ratio 3).
inline std::vector<ConvergenceRow> convergence_sw_smooth(const RunConfig& cfg,
                                                         const std::vector<int>& meshes) {
  const double t_end = cfg.t_final >= 0.0 ? cfg.t_final : 0.05;
  for (std::size_t k = 1; k < meshes.size(); ++k)
    if (meshes[k] != 3 * meshes[k - 1])
      throw config_error("sw_smooth self-convergence needs mesh ratio 3 (center alignment)");

  std::vector<Field1D<Vec<2>>> sols;
  for (int n : meshes) {
    GridSpec1D grid(0.0, 1.0, n);
    auto geom = make_geometry<double>(grid, [](double x, int) {
      const double s = std::sin(M_PI * x);
      return 0.02 * s * s;
    });
    SaintVenantModel model(cfg.gravity, 0.0);
    Solver1D<SaintVenantModel> solver(model, grid, periodic_boundaries<2>(), geom,
                                      variant_from_name(cfg.scheme), scheme_options(cfg));
    Field1D<Vec<2>> U(grid.n);
    for (int j = 0; j < grid.n; ++j) {
      const double x = grid.x_center(j);
      const double h = 1.0 + 0.1 * std::sin(2.0 * M_PI * x) - geom.center[j];
      U(j) = {h, 0.1 * h};
    }
    TimeControls tc{order_study_cfl(cfg.cfl, n, meshes.front()), t_end, cfg.max_steps};
    evolve(solver, U, tc);
    sols.push_back(U);
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t k = 0; k + 1 < sols.size(); ++k) {
    const int n = meshes[k];
    double err = 0.0;
    for (int j = 0; j < n; ++j)
      err = std::max(err, std::abs(sols[k](j)[0] - sols[k + 1](3 * j + 1)[0]));
    rows.push_back({n, err, 0.0});
  }
  for (std::size_t k = 1; k < rows.size(); ++k)
    rows[k].order = std::log(rows[k - 1].error / rows[k].error) / std::log(3.0);
  return rows;
}

inline std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg,
                                                     const std::vector<int>& meshes) {
  if (meshes.size() < 2) throw config_error("convergence study needs at least two meshes");
  if (cfg.model == "advection") return convergence_advection(cfg, meshes);
  if (cfg.model == "sw_smooth") return convergence_sw_smooth(cfg, meshes);
  throw config_error("unknown convergence model: " + cfg.model);
}

}  // namespace balsa
