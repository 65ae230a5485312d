#pragma once

#include <array>
#include <cmath>
#include <initializer_list>

#include "topoquench/errors.hpp"

namespace tq {

using Vec3 = std::array<double, 3>;

/// Coefficient vector (h_0, ..., h_{n-1}) of H = sum_j h_j gamma_j.
struct Coeffs {
  int n = 0;
  std::array<double, 5> h{};

  double& operator[](int i) { return h[i]; }
  double operator[](int i) const { return h[i]; }

  double norm2() const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += h[i] * h[i];
    return s;
  }
  /// Instantaneous gap ε = sqrt(Σ h_j²).
  double eps() const { return std::sqrt(norm2()); }
  /// Norm of the spin-orbit part (all components except index 0).
  double so_norm() const {
    double s = 0;
    for (int i = 1; i < n; ++i) s += h[i] * h[i];
    return std::sqrt(s);
  }
};

inline Coeffs make_coeffs(std::initializer_list<double> v) {
  Coeffs c;
  c.n = static_cast<int>(v.size());
  int i = 0;
  for (double x : v) c.h[i++] = x;
  return c;
}

inline int sgn(double x) { return (x > 0) - (x < 0); }

/// Shortest signed displacement a-b on a circle of the given period.
inline double wrap_delta(double d, double period) {
  while (d > 0.5 * period) d -= period;
  while (d < -0.5 * period) d += period;
  return d;
}

inline double wrap_into(double x, double lo, double period) {
  while (x >= lo + period) x -= period;
  while (x < lo) x += period;
  return x;
}

}  // namespace tq
