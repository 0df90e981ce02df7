#include "dms/isometry.hpp"

#include <algorithm>
#include <cmath>

#include "dms/error.hpp"

namespace dms {

Mat2 operator*(const Mat2& l, const Mat2& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}
Mat2 operator+(const Mat2& l, const Mat2& r) { return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d}; }
Mat2 operator*(double s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

const char* isometry_class_name(IsometryClass c) {
  switch (c) {
    case IsometryClass::Hyperbolic: return "Hyperbolic";
    case IsometryClass::Parabolic: return "Parabolic";
    case IsometryClass::Elliptic: return "Elliptic";
    case IsometryClass::Identity: return "Identity";
    case IsometryClass::Reflection: return "Reflection";
    case IsometryClass::GlideReflection: return "GlideReflection";
  }
  return "?";
}

Isometry make_isometry(const Mat2& m) {
  const double det = m.det();
  if (!(std::fabs(det) > 0) || !std::isfinite(det)) fail(Errc::InvalidArgument, "singular matrix");
  Mat2 n = (1.0 / std::sqrt(std::fabs(det))) * m;
  const double lead = n.a != 0.0 ? n.a : n.b;
  if (lead < 0) n = -1.0 * n;
  return {n, det > 0 ? 1 : -1};
}

Isometry identity_isometry() { return {}; }

Isometry compose(const Isometry& l, const Isometry& r) { return make_isometry(l.m * r.m); }

Isometry inverse(const Isometry& A) {
  const Mat2& m = A.m;
  return make_isometry(Mat2{m.d, -m.b, -m.c, m.a});
}

Mat2 killing_to_matrix(const Vec21& v) { return {v.y, v.x + v.z, v.x - v.z, -v.y}; }

Vec21 matrix_to_killing(const Mat2& m) {
  return {(m.b + m.c) / 2.0, (m.a - m.d) / 2.0, (m.b - m.c) / 2.0};
}

Vec21 adjoint(const Isometry& A, const Vec21& v) {
  const Mat2& m = A.m;
  const Mat2 inv{m.d / m.det(), -m.b / m.det(), -m.c / m.det(), m.a / m.det()};
  return matrix_to_killing(m * killing_to_matrix(v) * inv);
}

Vec21 act_point(const Isometry& A, const Vec21& p) { return double(A.det_sign) * adjoint(A, p); }

std::array<double, 9> adjoint_matrix(const Isometry& A) {
  std::array<double, 9> out{};
  const Vec21 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    const Vec21 c = adjoint(A, e[j]);
    out[0 * 3 + j] = c.x;
    out[1 * 3 + j] = c.y;
    out[2 * 3 + j] = c.z;
  }
  return out;
}

double trace_length(const Isometry& A) {
  if (A.det_sign < 0) {
    const Isometry sq = compose(A, A);
    return trace_length(sq) / 2.0;
  }
  const double t = std::fabs(A.m.trace());
  if (!(t > 2.0)) fail(Errc::NotHyperbolic, "|trace| <= 2");
  return 2.0 * std::acosh(t / 2.0);
}

IsometryClass classify_isometry(const Isometry& A, double tol) {
  const Mat2& m = A.m;
  if (A.det_sign < 0) return std::fabs(m.trace()) <= tol ? IsometryClass::Reflection : IsometryClass::GlideReflection;
  const double dev = std::max({std::fabs(m.a - m.d), std::fabs(m.b), std::fabs(m.c)});
  if (dev <= tol) return IsometryClass::Identity;
  const double t = std::fabs(m.trace());
  if (t > 2.0 + tol) return IsometryClass::Hyperbolic;
  if (t < 2.0 - tol) return IsometryClass::Elliptic;
  return IsometryClass::Parabolic;
}

namespace {

Vec21 apply3(const std::array<double, 9>& M, const Vec21& v) {
  return {M[0] * v.x + M[1] * v.y + M[2] * v.z, M[3] * v.x + M[4] * v.y + M[5] * v.z,
          M[6] * v.x + M[7] * v.y + M[8] * v.z};
}

// Component of v along the eigenvalue `keep` of M, other eigenvalues (o1, o2) removed.
Vec21 eigen_component(const std::array<double, 9>& M, double o1, double o2, const Vec21& x) {
  Vec21 y = apply3(M, x) - o1 * x;
  return apply3(M, y) - o2 * y;
}

Vec21 best_component(const std::array<double, 9>& M, double o1, double o2) {
  const Vec21 trials[4] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.31, -0.57, 1.13}};
  Vec21 best;
  double bn = -1;
  for (const auto& t : trials) {
    const Vec21 c = eigen_component(M, o1, o2, t);
    if (euclid_norm(c) > bn) {
      bn = euclid_norm(c);
      best = c;
    }
  }
  return best;
}

}  // namespace

Geodesic axis(const Isometry& A) {
  const IsometryClass k = classify_isometry(A);
  if (k != IsometryClass::Hyperbolic && k != IsometryClass::GlideReflection) fail(Errc::NoAxis, "no invariant axis");
  const double mu = std::exp(trace_length(A));
  // point-action eigenvalues: mu (attracting), 1/mu (repelling), det_sign (neutral)
  std::array<double, 9> M = adjoint_matrix(A), Mi = adjoint_matrix(inverse(A));
  if (A.det_sign < 0)
    for (int i = 0; i < 9; ++i) M[i] = -M[i], Mi[i] = -Mi[i];
  const double eps = A.det_sign;
  // both endpoints as dominant eigenvectors; projecting onto the 1/mu line of M loses ~mu ulps
  Vec21 vp = best_component(M, 1.0 / mu, eps);
  Vec21 vm = best_component(Mi, 1.0 / mu, eps);
  if (vp.z < 0) vp = -vp;
  if (vm.z < 0) vm = -vm;
  return geodesic_from_endpoints(vm, vp);
}

Vec21 neutral_vector(const Isometry& A) { return axis(A).n; }

namespace {

// cosh/cos and sinh/sin ratio for K^2 = s I.
void exp_coeffs(double s, double t, double& c0, double& c1) {
  const double q = s * t * t;
  if (std::fabs(q) < 1e-8) {
    c0 = 1 + q / 2 + q * q / 24;
    c1 = t * (1 + q / 6 + q * q / 120);
  } else if (s > 0) {
    const double r = std::sqrt(s);
    c0 = std::cosh(r * t);
    c1 = std::sinh(r * t) / r;
  } else {
    const double r = std::sqrt(-s);
    c0 = std::cos(r * t);
    c1 = std::sin(r * t) / r;
  }
}

}  // namespace

Isometry exp_killing(const Vec21& k, double t) {
  // K(k)^2 = <k,k> I
  double c0, c1;
  exp_coeffs(norm2(k), t, c0, c1);
  const Mat2 K = killing_to_matrix(k);
  return make_isometry(Mat2{c0 + c1 * K.a, c1 * K.b, c1 * K.c, c0 + c1 * K.d});
}

Isometry killing_flow(const Vec21& k, double t) { return exp_killing(k, t / kAdCross); }

double longitudinal_motion(const Vec21& k, const Vec21& a, const Vec21& b) {
  const Vec21 c = mcross(a, b);
  if (max_abs(c) < 1e-12 * max_abs(a) * max_abs(b) || !(norm2(c) > 0))
    fail(Errc::DependentEndpoints, "longitudinal_motion endpoints");
  return bilinear(k, c) / mnorm(c);
}

double isometry_distance(const Isometry& A, const Isometry& B) {
  if (A.det_sign != B.det_sign) return 1e300;
  auto d = [](const Mat2& x, const Mat2& y) {
    return std::max({std::fabs(x.a - y.a), std::fabs(x.b - y.b), std::fabs(x.c - y.c), std::fabs(x.d - y.d)});
  };
  return std::min(d(A.m, B.m), d(A.m, -1.0 * B.m));
}

}  // namespace dms
