#pragma once

#include <array>

#include "dms/hyperbolic.hpp"
#include "dms/minkowski.hpp"

namespace dms {

struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;
  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
};

Mat2 operator*(const Mat2& l, const Mat2& r);
Mat2 operator+(const Mat2& l, const Mat2& r);
Mat2 operator*(double s, const Mat2& m);

// Element of PGL(2,R); |det m| = 1 and a canonical overall sign.
struct Isometry {
  Mat2 m;
  int det_sign = 1;
};

enum class IsometryClass { Hyperbolic, Parabolic, Elliptic, Identity, Reflection, GlideReflection };
const char* isometry_class_name(IsometryClass c);

// [K(v), K(w)] = kAdCross * K(mcross(v, w)) for the map below.
inline constexpr double kAdCross = -2.0;

Isometry make_isometry(const Mat2& m);
Isometry identity_isometry();
Isometry compose(const Isometry& l, const Isometry& r);
Isometry inverse(const Isometry& A);

Mat2 killing_to_matrix(const Vec21& v);
Vec21 matrix_to_killing(const Mat2& m);

// Lie algebra action A K A^{-1}; used for Killing fields and cocycle values.
Vec21 adjoint(const Isometry& A, const Vec21& v);
// Action on points and lightlike vectors: det_sign * Ad(A) keeps the future cone.
Vec21 act_point(const Isometry& A, const Vec21& p);
// 3x3 matrices (row-major) of the two actions.
std::array<double, 9> adjoint_matrix(const Isometry& A);

double trace_length(const Isometry& A);
IsometryClass classify_isometry(const Isometry& A, double tol = 1e-9);
Geodesic axis(const Isometry& A);
// Ad-fixed unit vector: the dual of the oriented axis.
Vec21 neutral_vector(const Isometry& A);

Isometry exp_killing(const Vec21& k, double t);
// Flow of the field p -> mcross(k, p) for time t.
Isometry killing_flow(const Vec21& k, double t);

double longitudinal_motion(const Vec21& k, const Vec21& a, const Vec21& b);

// Max-entry distance in PGL (sign ambiguity removed).
double isometry_distance(const Isometry& A, const Isometry& B);

}  // namespace dms
