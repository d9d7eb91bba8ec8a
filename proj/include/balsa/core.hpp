//! \file core.hpp
//  \brief Small fixed-size linear algebra, error types, and a chunked parallel_for.

#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace balsa {

// ---------------------------------------------------------------------------
// Fixed-size vectors and matrices (d <= 4 in practice)
// ---------------------------------------------------------------------------

template <int N>
struct Vec {
  std::array<double, N> v{};

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < N; ++i) v[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < N; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  bool finite() const {
    for (int i = 0; i < N; ++i)
      if (!std::isfinite(v[i])) return false;
    return true;
  }
};

template <int N>
struct Mat {
  std::array<double, N * N> a{};

  double& operator()(int r, int c) { return a[static_cast<std::size_t>(r * N + c)]; }
  double operator()(int r, int c) const { return a[static_cast<std::size_t>(r * N + c)]; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Vec<N> operator*(const Vec<N>& x) const {
    Vec<N> y;
    for (int r = 0; r < N; ++r) {
      double s = 0.0;
      for (int c = 0; c < N; ++c) s += (*this)(r, c) * x[c];
      y[r] = s;
    }
    return y;
  }
  Mat operator*(const Mat& o) const {
    Mat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += (*this)(r, k) * o(k, c);
        m(r, c) = s;
      }
    return m;
  }
  friend Mat operator-(Mat a, const Mat& b) {
    for (int i = 0; i < N * N; ++i) a.a[i] -= b.a[i];
    return a;
  }
  double max_abs() const {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : solver_error {
  using solver_error::solver_error;
};
struct input_error : solver_error {
  using solver_error::solver_error;
};
struct state_error : solver_error {
  using solver_error::solver_error;
};
struct recovery_error : solver_error {
  using solver_error::solver_error;
};
struct hyperbolicity_error : solver_error {
  using solver_error::solver_error;
};
struct numeric_error : solver_error {
  using solver_error::solver_error;
};

// Per-run diagnostic counters (identity-basis fallbacks, recovery fallbacks).
struct Diagnostics {
  long hyperbolicity_fallbacks = 0;
  long recovery_fallbacks = 0;
  long clamped_samples = 0;
  void reset() { *this = Diagnostics{}; }
};

// ---------------------------------------------------------------------------
// parallel_for: chunked loop over [begin, end). Width comes from the THREADS
// environment variable; 1 (serial) when unset. Bodies must write disjoint
// locations, which keeps the result identical across widths.
// ---------------------------------------------------------------------------

inline int parallel_width() {
  if (const char* e = std::getenv("THREADS")) {
    const int v = std::atoi(e);
    if (v > 0) return v;
  }
  return 1;
}

template <class F>
void parallel_for(int begin, int end, F&& body) {
  const int n = end - begin;
  const int width = parallel_width();
  if (width <= 1 || n < 2 * width) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(width));
  const int chunk = (n + width - 1) / width;
  for (int t = 0; t < width; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace balsa
