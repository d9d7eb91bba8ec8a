//! \file scheme2d.hpp
//  \brief 2-D semi-discretization as independent x-row and y-column sweeps of
//         the 1-D line pipeline.

#pragma once

#include <vector>

#include "balsa/scheme.hpp"

namespace balsa {

// MX and MY are the directional sweep models sharing one state layout.
template <class MX, class MY>
class Solver2D {
 public:
  static constexpr int N = MX::dim;
  static_assert(MX::dim == MY::dim);
  using State = typename MX::State;

  Solver2D(MX mx, MY my, GridSpec2D grid, BoundaryCondition2D<N> bc,
           std::vector<GeometryField1D<typename MX::Geom>> row_geometry,
           std::vector<GeometryField1D<typename MY::Geom>> col_geometry, SchemeVariant variant,
           SchemeOptions opt = {})
      : mx_(std::move(mx)),
        my_(std::move(my)),
        grid_(grid),
        bc_(bc),
        rows_(std::move(row_geometry)),
        cols_(std::move(col_geometry)),
        variant_(variant),
        opt_(opt) {
    if (static_cast<int>(rows_.size()) != grid_.y.n || static_cast<int>(cols_.size()) != grid_.x.n)
      throw config_error("Solver2D: need one geometry line per interior row and column");
  }

  const GridSpec2D& grid() const { return grid_; }
  SchemeOptions& options() { return opt_; }
  Diagnostics& diagnostics() { return diag_; }
  const MX& x_model() const { return mx_; }
  const MY& y_model() const { return my_; }

  void rhs(Field2D<State>& U, Field2D<State>& dudt) {
    fill_ghosts(U, bc_);
    const int nx = grid_.x.n, ny = grid_.y.n;
    const double inv_dx = 1.0 / grid_.x.dx, inv_dy = 1.0 / grid_.y.dx;

    // x sweeps: one flux line per interior row.
    std::vector<std::vector<Vec<N>>> kx(static_cast<std::size_t>(ny));
    parallel_for(0, ny, [&](int k) {
      Field1D<State> line(nx);
      for (int j = -kGhostWidth; j < nx + kGhostWidth; ++j) line(j) = U(j, k);
      BoundaryCondition1D<N> bx = bc_.x;
      bx.frozen = bx.frozen || bc_.frozen;
      compute_line_fluxes(mx_, grid_.x, rows_[static_cast<std::size_t>(k)], bx, line, variant_,
                          opt_, diag_, kx[static_cast<std::size_t>(k)]);
    });

    // y sweeps per interior column.
    std::vector<std::vector<Vec<N>>> ly(static_cast<std::size_t>(nx));
    parallel_for(0, nx, [&](int j) {
      Field1D<State> line(ny);
      for (int k = -kGhostWidth; k < ny + kGhostWidth; ++k) line(k) = U(j, k);
      BoundaryCondition1D<N> by = bc_.y;
      by.frozen = by.frozen || bc_.frozen;
      compute_line_fluxes(my_, grid_.y, cols_[static_cast<std::size_t>(j)], by, line, variant_,
                          opt_, diag_, ly[static_cast<std::size_t>(j)]);
    });

    for (int k = 0; k < ny; ++k)
      for (int j = 0; j < nx; ++j)
        for (int c = 0; c < N; ++c)
          dudt(j, k)[c] =
              -(kx[static_cast<std::size_t>(k)][static_cast<std::size_t>(j + 1)][c] -
                kx[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][c]) * inv_dx -
              (ly[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + 1)][c] -
               ly[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][c]) * inv_dy;
  }

  // Directional speed maxima over interior cells, for the CFL condition.
  std::pair<double, double> max_abs_speeds(const Field2D<State>& U) const {
    double sx = 0.0, sy = 0.0;
    for (int k = 0; k < grid_.y.n; ++k)
      for (int j = 0; j < grid_.x.n; ++j) {
        const auto vx = mx_.speeds(U(j, k), rows_[static_cast<std::size_t>(k)].center[j]);
        const auto vy = my_.speeds(U(j, k), cols_[static_cast<std::size_t>(j)].center[k]);
        sx = std::max({sx, std::abs(vx.first), std::abs(vx.second)});
        sy = std::max({sy, std::abs(vy.first), std::abs(vy.second)});
      }
    return {sx, sy};
  }

 private:
  MX mx_;
  MY my_;
  GridSpec2D grid_;
  BoundaryCondition2D<N> bc_;
  std::vector<GeometryField1D<typename MX::Geom>> rows_;
  std::vector<GeometryField1D<typename MY::Geom>> cols_;
  SchemeVariant variant_;
  SchemeOptions opt_;
  Diagnostics diag_;
};

}  // namespace balsa
