//! \file metrics.hpp
//  \brief Run metrics: norms of the difference against a steady reference,
//         total variation, and the second-difference oscillation count.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "balsa/core.hpp"

namespace balsa {

inline double linf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double l1(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s * dx;
}

inline double total_variation(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t j = 1; j < v.size(); ++j) s += std::abs(v[j] - v[j - 1]);
  return s;
}

// Sign changes of the discrete second difference. The dead band sits at the
// plot-visible amplitude (1e-4 of the field scale): spurious scheme
// oscillations live well above it, round-off and sub-visible curvature
// flips below it.
inline long oscillation_count(const std::vector<double>& v) {
  if (v.size() < 3) return 0;
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double band = 1e-4 * scale + 1e-300;
  long count = 0;
  int last = 0;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    const double d2 = v[j + 1] - 2.0 * v[j] + v[j - 1];
    const int s = d2 > band ? 1 : (d2 < -band ? -1 : 0);
    if (s != 0) {
      if (last != 0 && s != last) ++count;
      last = s;
    }
  }
  return count;
}

// Ordered key/value metric list; insertion order is the CSV column order.
struct MetricsReport {
  std::vector<std::pair<std::string, double>> values;
  void set(const std::string& k, double v) {
    for (auto& kv : values)
      if (kv.first == k) {
        kv.second = v;
        return;
      }
    values.emplace_back(k, v);
  }
  double get(const std::string& k) const {
    for (const auto& kv : values)
      if (kv.first == k) return kv.second;
    throw config_error("metric not present: " + k);
  }
  bool has(const std::string& k) const {
    for (const auto& kv : values)
      if (kv.first == k) return true;
    return false;
  }
};

}  // namespace balsa
