//! \file lcd.hpp
//  \brief Local characteristic transforms: eigen-decomposition of the frozen
//         cell-center matrix and projection of equilibrium-variable stencils.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "balsa/core.hpp"

namespace balsa {
namespace lcd {

template <int N>
struct CharBasis {
  Mat<N> Q;
  Mat<N> Qinv;
  Vec<N> lambda;  // ascending
};

template <int N>
CharBasis<N> identity_basis() {
  CharBasis<N> b;
  b.Q = Mat<N>::identity();
  b.Qinv = Mat<N>::identity();
  return b;
}

inline constexpr double kImagTol = 1e-8;

// Real eigen-decomposition of C with eigenvalues sorted ascending and
// eigenvector columns scaled to unit max-norm (largest entry positive).
// Throws hyperbolicity_error when a complex pair exceeds the tolerance or
// the eigenvector matrix is numerically singular (defective C).
template <int N>
CharBasis<N> eigendecompose(const Mat<N>& C) {
  using EMat = Eigen::Matrix<double, N, N>;
  EMat A;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      if (!std::isfinite(C(r, c))) throw input_error("eigendecompose: non-finite matrix entry");
      A(r, c) = C(r, c);
    }

  Eigen::EigenSolver<EMat> es(A, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw numeric_error("eigendecompose: QR iteration failed");

  const auto& ev = es.eigenvalues();
  double specrad = 0.0;
  for (int i = 0; i < N; ++i) specrad = std::max(specrad, std::abs(ev(i)));
  for (int i = 0; i < N; ++i) {
    if (std::abs(ev(i).imag()) > kImagTol * (1.0 + specrad))
      throw hyperbolicity_error("eigendecompose: complex eigenvalue pair");
  }

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ev(a).real() < ev(b).real(); });

  CharBasis<N> basis;
  EMat Q;
  for (int c = 0; c < N; ++c) {
    const int k = order[static_cast<std::size_t>(c)];
    basis.lambda[c] = ev(k).real();
    // Column scaling: unit max-norm, dominant entry positive.
    double biggest = 0.0;
    for (int r = 0; r < N; ++r) {
      const double x = es.eigenvectors()(r, k).real();
      if (std::abs(x) > std::abs(biggest)) biggest = x;
    }
    if (biggest == 0.0) throw hyperbolicity_error("eigendecompose: zero eigenvector");
    for (int r = 0; r < N; ++r) Q(r, c) = es.eigenvectors()(r, k).real() / biggest;
  }

  Eigen::FullPivLU<EMat> lu(Q);
  if (!lu.isInvertible()) throw hyperbolicity_error("eigendecompose: defective eigenvector matrix");
  const EMat Qi = lu.inverse();

  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      basis.Q(r, c) = Q(r, c);
      basis.Qinv(r, c) = Qi(r, c);
    }

  // Reconstruction check; a gross failure means the basis is unusable.
  double qmax = 0.0, qimax = 0.0;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      qmax = std::max(qmax, std::abs(Q(r, c)));
      qimax = std::max(qimax, std::abs(Qi(r, c)));
    }
  const EMat resid = Q * Qi - EMat::Identity();
  if (resid.template lpNorm<Eigen::Infinity>() > 1e-10 * std::max(1.0, qmax * qimax))
    throw hyperbolicity_error("eigendecompose: ill-conditioned eigenvector matrix");
  return basis;
}

// Gamma_l = Qinv * E_l for the five stencil entries.
template <int N>
std::array<Vec<N>, 5> to_characteristic(const CharBasis<N>& basis,
                                        const std::array<Vec<N>, 5>& e_stencil) {
  std::array<Vec<N>, 5> g;
  for (int l = 0; l < 5; ++l) g[static_cast<std::size_t>(l)] = basis.Qinv * e_stencil[static_cast<std::size_t>(l)];
  return g;
}

// E = Q * Gamma for the two one-sided interpolants of one cell.
template <int N>
std::pair<Vec<N>, Vec<N>> from_characteristic(const CharBasis<N>& basis, const Vec<N>& gamma_minus,
                                              const Vec<N>& gamma_plus) {
  return {basis.Q * gamma_minus, basis.Q * gamma_plus};
}

}  // namespace lcd
}  // namespace balsa
