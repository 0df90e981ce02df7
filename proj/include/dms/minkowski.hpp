#pragma once

#include <cmath>
#include <iosfwd>

namespace dms {

// Vector in R^{2,1}; last coordinate is the timelike one.
struct Vec21 {
  double x = 0, y = 0, z = 0;

  Vec21() = default;
  constexpr Vec21(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec21& operator+=(const Vec21& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec21& operator-=(const Vec21& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec21& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  bool operator==(const Vec21&) const = default;
};

inline Vec21 operator+(Vec21 a, const Vec21& b) { return a += b; }
inline Vec21 operator-(Vec21 a, const Vec21& b) { return a -= b; }
inline Vec21 operator-(const Vec21& a) { return {-a.x, -a.y, -a.z}; }
inline Vec21 operator*(double s, Vec21 a) { return a *= s; }
inline Vec21 operator*(Vec21 a, double s) { return a *= s; }
inline Vec21 operator/(Vec21 a, double s) { return a *= (1.0 / s); }

std::ostream& operator<<(std::ostream& os, const Vec21& v);

enum class CausalClass {
  Spacelike,
  LightlikePositive,
  LightlikeNegative,
  TimelikePositive,
  TimelikeNegative,
  Zero
};

const char* causal_name(CausalClass c);

// <u,v> = x1 x2 + y1 y2 - z1 z2
inline double bilinear(const Vec21& u, const Vec21& v) { return u.x * v.x + u.y * v.y - u.z * v.z; }
inline double norm2(const Vec21& v) { return bilinear(v, v); }
// sqrt(|<v,v>|)
inline double mnorm(const Vec21& v) { return std::sqrt(std::fabs(norm2(v))); }

// Minkowski cross product: <mcross(u,v), w> = -det(u,v,w).
inline Vec21 mcross(const Vec21& u, const Vec21& v) {
  return {-u.y * v.z + u.z * v.y, -u.z * v.x + u.x * v.z, u.x * v.y - u.y * v.x};
}

inline double det3(const Vec21& a, const Vec21& b, const Vec21& c) {
  return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x);
}

inline double max_abs(const Vec21& v) { return std::fmax(std::fabs(v.x), std::fmax(std::fabs(v.y), std::fabs(v.z))); }
inline double euclid_norm(const Vec21& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
inline double euclid_dot(const Vec21& a, const Vec21& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// tol is relative to the largest component.
CausalClass classify(const Vec21& v, double tol = 1e-9);

inline bool is_future_lightlike(const Vec21& v, double tol = 1e-9) {
  return classify(v, tol) == CausalClass::LightlikePositive;
}

// The plane v^perp is {w : <w, n> = 0}; the normal is v itself.
Vec21 dual_plane_normal(const Vec21& v);

// v / sqrt(|<v,v>|); throws ZeroVector on null input or a lightlike vector.
Vec21 unit(const Vec21& v);

}  // namespace dms
