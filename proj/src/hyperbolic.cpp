#include "dms/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "dms/error.hpp"

namespace dms {

namespace {

constexpr double kOnGeodesicTol = 1e-8;

// Roots of A t^2 + B t + C = 0 with C < 0 < A, returned (negative, positive)
// without cancellation.
std::array<double, 2> split_roots(double A, double B, double C) {
  const double disc = std::sqrt(B * B - 4 * A * C);
  const double q = -0.5 * (B + std::copysign(disc, B));
  const double r1 = q / A;
  const double r2 = C / q;
  return {std::min(r1, r2), std::max(r1, r2)};
}

}  // namespace

HypPoint make_point(const Vec21& v) {
  const double q = norm2(v);
  if (!(q < 0)) fail(Errc::InvalidArgument, "not a timelike vector");
  Vec21 w = v / std::sqrt(-q);
  if (w.z < 0) w = -w;
  return {w};
}

HypPoint from_klein(double kx, double ky) {
  const double r2 = kx * kx + ky * ky;
  if (!(r2 < 1)) fail(Errc::InvalidArgument, "Klein point outside the disk");
  const double z = 1.0 / std::sqrt(1.0 - r2);
  return {{kx * z, ky * z, z}};
}

std::array<double, 2> to_klein(const Vec21& v) { return {v.x / v.z, v.y / v.z}; }

Vec21 ideal_point(double angle) { return {std::cos(angle), std::sin(angle), 1.0}; }

Vec21 normalize_ideal(const Vec21& v) {
  if (v.z == 0) fail(Errc::NonLightlike, "ideal point at z = 0");
  return v / v.z;
}

double dist(const HypPoint& p, const HypPoint& q) {
  // 4 sinh^2(d/2) = <p-q, p-q>; avoids acosh near 1.
  const double s = norm2(p.v - q.v);
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, s)) / 2.0);
}

double dist_hilbert(const HypPoint& p, const HypPoint& q) {
  const auto a = to_klein(p.v);
  const auto b = to_klein(q.v);
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double A = dx * dx + dy * dy;
  if (A == 0.0) fail(Errc::CoincidentPoints, "Hilbert distance of coincident points");
  // |a|^2 - 1 written through the hyperboloid coordinates to keep precision near the rim.
  const double Ca = norm2(p.v) / (p.v.z * p.v.z);
  const double Cb = norm2(q.v) / (q.v.z * q.v.z);
  // chord a + t(b-a); w1 at t1 < 0, w2 at t2 > 1
  const auto ta = split_roots(A, 2 * (a[0] * dx + a[1] * dy), Ca);
  const auto sb = split_roots(A, 2 * (b[0] * dx + b[1] * dy), Cb);
  const double t1 = ta[0], t2 = ta[1];  // measured from a
  const double s1 = sb[0], s2 = sb[1];  // measured from b
  // [p, w1; w2, q] = |p w2| |q w1| / (|p w1| |q w2|)
  return 0.5 * (std::log(t2) + std::log(-s1) - std::log(-t1) - std::log(s2));
}

Geodesic geodesic_from_endpoints(const Vec21& vminus, const Vec21& vplus) {
  if (!is_future_lightlike(vminus) || !is_future_lightlike(vplus))
    fail(Errc::NonLightlike, "geodesic endpoints must be future lightlike");
  const Vec21 a = normalize_ideal(vminus), b = normalize_ideal(vplus);
  const Vec21 c = mcross(a, b);
  if (max_abs(c) < 1e-12) fail(Errc::DependentEndpoints, "coincident geodesic endpoints");
  // det(a, c, b) = <c,c> > 0, so c already has the right orientation.
  return {unit(c), b, a};
}

Geodesic geodesic_from_dual(const Vec21& n0) {
  if (!(norm2(n0) > 0)) fail(Errc::InvalidArgument, "dual of a geodesic must be spacelike");
  const Vec21 n = unit(n0);
  const Vec21 ez{0, 0, 1};
  const Vec21 p = make_point(ez + n.z * n).v;
  const Vec21 tau = unit(mcross(n, p));
  Vec21 a = normalize_ideal(p + tau), b = normalize_ideal(p - tau);
  if (det3(b, n, a) < 0) std::swap(a, b);
  return {n, a, b};
}

Geodesic geodesic_through(const Vec21& p, const Vec21& q) {
  const Vec21 c = mcross(p, q);
  if (max_abs(c) < 1e-14 * std::max(1.0, max_abs(p) * max_abs(q)))
    fail(Errc::CoincidentPoints, "geodesic through coincident points");
  const Geodesic g = geodesic_from_dual(c);
  // forward endpoint: larger parameter along the Klein chord from p toward q
  const auto kp = to_klein(p), kq = to_klein(q);
  const auto ka = to_klein(g.vplus), kb = to_klein(g.vminus);
  const double dx = kq[0] - kp[0], dy = kq[1] - kp[1];
  const double sa = (ka[0] - kp[0]) * dx + (ka[1] - kp[1]) * dy;
  const double sb = (kb[0] - kp[0]) * dx + (kb[1] - kp[1]) * dy;
  if (sa >= sb) return g;
  return geodesic_from_endpoints(g.vplus, g.vminus);
}

bool on_geodesic(const Vec21& p, const Geodesic& g) {
  return std::fabs(bilinear(p, g.n)) <= kOnGeodesicTol * (1.0 + std::fabs(p.z));
}

double sin_angle_at(const HypPoint& p, const Geodesic& g1, const Geodesic& g2) {
  if (!on_geodesic(p.v, g1) || !on_geodesic(p.v, g2)) fail(Errc::PointNotOnGeodesic, "sin_angle_at");
  const double c = bilinear(g1.n, g2.n);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

Geodesic perpendicular_at(const Geodesic& g, const HypPoint& p) {
  if (!on_geodesic(p.v, g)) fail(Errc::PointNotOnGeodesic, "perpendicular_at");
  return geodesic_from_dual(mcross(g.n, p.v));
}

HypPoint midpoint(const HypPoint& p, const HypPoint& q) { return make_point(p.v + q.v); }

HypPoint project(const Geodesic& g, const Vec21& p) {
  // remove the n-component; the rest is timelike for any timelike p
  return make_point(p - bilinear(p, g.n) * g.n);
}

double horoball_connection_length(const Horoball& h1, const Horoball& h2) {
  if (max_abs(mcross(h1.v, h2.v)) < 1e-12 * max_abs(h1.v) * max_abs(h2.v))
    fail(Errc::SameCenter, "horoballs share a center");
  return std::log(-bilinear(h1.v, h2.v) / 2.0);
}

bool horoball_contains(const Horoball& h, const HypPoint& p) { return bilinear(p.v, h.v) > -1.0; }

}  // namespace dms
