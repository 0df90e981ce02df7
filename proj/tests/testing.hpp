#pragma once

#include <cmath>
#include <random>

#include "dms/error.hpp"
#include "dms/hyperbolic.hpp"
#include "dms/isometry.hpp"
#include "dms/minkowski.hpp"

namespace dms::testing {

inline Vec21 random_vec(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

inline Vec21 random_point(std::mt19937_64& rng, double max_radius = 5.0) {
  std::uniform_real_distribution<double> a(0, 2 * M_PI), r(0, max_radius);
  const double t = a(rng), s = r(rng);
  return {std::sinh(s) * std::cos(t), std::sinh(s) * std::sin(t), std::cosh(s)};
}

inline Vec21 random_lightlike(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0, 2 * M_PI), k(0.2, 3.0);
  return k(rng) * ideal_point(a(rng));
}

inline Isometry random_isometry(std::mt19937_64& rng, int det_sign = 1) {
  std::uniform_real_distribution<double> u(-2, 2);
  for (;;) {
    Mat2 m{u(rng), u(rng), u(rng), u(rng)};
    const double d = m.det();
    if (std::fabs(d) < 0.2 || (d > 0) != (det_sign > 0)) continue;
    return make_isometry(m);
  }
}

inline double vdist(const Vec21& a, const Vec21& b) { return max_abs(a - b); }

// Error code thrown by f. Tests compare against the expected code, so a missing throw
// must not look like one.
inline Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("no dms::Error thrown");
}

}  // namespace dms::testing
