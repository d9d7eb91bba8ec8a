//! \file geometry.hpp
//  \brief Time-independent geometry sampled where the scheme needs it:
//         cell centers, quarter points, and one-sided interface values.

#pragma once

#include <functional>

#include "balsa/aiweno.hpp"
#include "balsa/grid.hpp"

namespace balsa {

// P is the model's per-point geometry record (a double for Z or sigma, a
// {phi, phi_x} pair for the Euler systems).
template <class P>
struct GeometryField1D {
  OffsetArray<P> center;     // cells [-g, n+g)
  OffsetArray<P> quarter_m;  // cells [-3, n+2]
  OffsetArray<P> quarter_p;
  OffsetArray<P> side_m;  // interfaces [-3, n+2], limit from the left
  OffsetArray<P> side_p;  // limit from the right
};

// Analytic geometry: eval(x, side) with side -1/+1 selecting one-sided limits
// at interfaces (jumps in these problems sit exactly on interfaces) and 0 for
// plain point evaluation.
template <class P, class F>
GeometryField1D<P> make_geometry(const GridSpec1D& grid, F&& eval) {
  const int n = grid.n;
  GeometryField1D<P> g;
  g.center = OffsetArray<P>(-kGhostWidth, n + kGhostWidth - 1);
  g.quarter_m = OffsetArray<P>(-3, n + 2);
  g.quarter_p = OffsetArray<P>(-3, n + 2);
  g.side_m = OffsetArray<P>(-3, n + 2);
  g.side_p = OffsetArray<P>(-3, n + 2);
  for (int j = -kGhostWidth; j < n + kGhostWidth; ++j) g.center[j] = eval(grid.x_center(j), 0);
  for (int j = -3; j <= n + 2; ++j) {
    g.quarter_m[j] = eval(grid.x_quarter(j, -1), 0);
    g.quarter_p[j] = eval(grid.x_quarter(j, +1), 0);
  }
  for (int i = -3; i <= n + 2; ++i) {
    g.side_m[i] = eval(grid.x_iface(i), -1);
    g.side_p[i] = eval(grid.x_iface(i), +1);
  }
  return g;
}

// Tabulated scalar geometry: one value per cell (ghosts filled by zero-order
// extrapolation); interface and quarter values come from the same one-sided
// Ai-WENO-Z interpolation the solution fields use.
inline GeometryField1D<double> make_geometry_from_cells(const GridSpec1D& grid,
                                                        const std::vector<double>& interior) {
  const int n = grid.n;
  if (static_cast<int>(interior.size()) != n)
    throw config_error("make_geometry_from_cells: need one value per interior cell");
  Field1D<double> cells(n);
  for (int j = 0; j < n; ++j) cells(j) = interior[static_cast<std::size_t>(j)];
  for (int k = 1; k <= kGhostWidth; ++k) {
    cells(-k) = cells(0);
    cells(n - 1 + k) = cells(n - 1);
  }
  GeometryField1D<double> g;
  g.center = OffsetArray<double>(-kGhostWidth, n + kGhostWidth - 1);
  g.quarter_m = OffsetArray<double>(-3, n + 2);
  g.quarter_p = OffsetArray<double>(-3, n + 2);
  g.side_m = OffsetArray<double>(-3, n + 2);
  g.side_p = OffsetArray<double>(-3, n + 2);
  for (int j = -kGhostWidth; j < n + kGhostWidth; ++j) g.center[j] = cells(j);
  for (int j = -3; j <= n + 2; ++j) {
    const aiweno::Stencil5 st = {cells(j - 2), cells(j - 1), cells(j), cells(j + 1), cells(j + 2)};
    g.quarter_m[j] = aiweno::interpolate(st, aiweno::InterpOffset::MinusQuarter);
    g.quarter_p[j] = aiweno::interpolate(st, aiweno::InterpOffset::PlusQuarter);
  }
  for (int i = -3; i <= n + 2; ++i) {
    const aiweno::Stencil5 stl = {cells(i - 3), cells(i - 2), cells(i - 1), cells(i), cells(i + 1)};
    const aiweno::Stencil5 str = {cells(i - 2), cells(i - 1), cells(i), cells(i + 1), cells(i + 2)};
    g.side_m[i] = aiweno::interpolate(stl, aiweno::InterpOffset::PlusHalf);
    g.side_p[i] = aiweno::interpolate(str, aiweno::InterpOffset::MinusHalf);
  }
  return g;
}

inline double geom_mid(double a, double b) { return 0.5 * (a + b); }

}  // namespace balsa
