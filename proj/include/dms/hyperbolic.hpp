#pragma once

#include <array>

#include "dms/minkowski.hpp"

namespace dms {

// Points live on the upper sheet of <v,v> = -1.
struct HypPoint {
  Vec21 v{0, 0, 1};
};

struct Geodesic {
  Vec21 n;       // unit spacelike dual
  Vec21 vplus;   // forward endpoint, scaled to z = 1
  Vec21 vminus;  // backward endpoint, scaled to z = 1
};

struct Horoball {
  Vec21 v;  // future lightlike; larger v means a smaller ball
};

// Rescale a timelike vector onto the upper sheet.
HypPoint make_point(const Vec21& v);
HypPoint from_klein(double kx, double ky);
std::array<double, 2> to_klein(const Vec21& v);
// Lightlike representative of a boundary point, scaled to z = 1.
Vec21 ideal_point(double angle);
Vec21 normalize_ideal(const Vec21& v);

double dist(const HypPoint& p, const HypPoint& q);
double dist_hilbert(const HypPoint& p, const HypPoint& q);

Geodesic geodesic_from_endpoints(const Vec21& vminus, const Vec21& vplus);
// Geodesic whose dual is n (not necessarily unit); orientation follows the det rule.
Geodesic geodesic_from_dual(const Vec21& n);
// Oriented from p toward q; q may be ideal.
Geodesic geodesic_through(const Vec21& p, const Vec21& q);

bool on_geodesic(const Vec21& p, const Geodesic& g);
double sin_angle_at(const HypPoint& p, const Geodesic& g1, const Geodesic& g2);
Geodesic perpendicular_at(const Geodesic& g, const HypPoint& p);

// Hyperbolic midpoint of two points.
HypPoint midpoint(const HypPoint& p, const HypPoint& q);
// Closest point of g to p.
HypPoint project(const Geodesic& g, const Vec21& p);

double horoball_connection_length(const Horoball& h1, const Horoball& h2);
// Open ball test; <p,v> = -1 is the horocycle.
bool horoball_contains(const Horoball& h, const HypPoint& p);
inline double horoball_level(const Horoball& h, const HypPoint& p) { return bilinear(p.v, h.v); }

}  // namespace dms
