#pragma once

// Shared helpers for the unit tests: seeded smooth random fields and norms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ddch/grid.hpp"

namespace ddch::test {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Uniform double in [0, 1) from a 64-bit engine, independent of the
/// standard library's distribution implementations.
inline double unit(std::mt19937_64 &rng) { return (rng() >> 11) * 0x1.0p-53; }

/// Sum of `modes` random low-frequency Fourier modes plus an offset.
inline Field smooth_field(const Grid &grid, std::uint64_t seed, int modes = 6,
                          int max_k = 4, double offset = 0.0, double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  struct Mode {
    int k[3];
    double amp, phase;
  };
  std::vector<Mode> ms;
  for (int j = 0; j < modes; ++j) {
    Mode m{};
    for (int a = 0; a < 3; ++a)
      m.k[a] = static_cast<int>(unit(rng) * (2 * max_k + 1)) - max_k;
    m.amp = amplitude * (unit(rng) - 0.5);
    m.phase = two_pi * unit(rng);
    ms.push_back(m);
  }
  return grid.sample([&](const std::array<double, 3> &x) {
    double v = offset;
    for (const Mode &m : ms) {
      double arg = m.phase;
      for (int a = 0; a < grid.ndim(); ++a) arg += two_pi * m.k[a] * x[a] / grid.length(a);
      v += m.amp * std::cos(arg);
    }
    return v;
  });
}

inline double max_abs(const Field &a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const Field &a, const Field &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double mean(const Field &a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s / static_cast<double>(a.size());
}

inline double dot(const Field &a, const Field &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace ddch::test
