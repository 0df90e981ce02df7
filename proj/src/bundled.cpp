#include "dms/bundled.hpp"

#include <cmath>

#include "dms/error.hpp"

namespace dms {

ArcEndpoint foot(int side, double t, Word w) { return {false, side, std::move(w), t}; }
ArcEndpoint spike_end(int spike, Word w) { return {true, spike, std::move(w), 0}; }
GeodesicArc edge_arc(const ArcEndpoint& a, const ArcEndpoint& b) { return {ArcKind::EdgeToEdge, a, b}; }
GeodesicArc spike_arc(const ArcEndpoint& spike, const ArcEndpoint& b) { return {ArcKind::SpikeToEdge, spike, b}; }

double side_parameter(const Domain& d, int side, const Vec21& p) {
  const auto a = to_klein(d.vertices[side]), b = to_klein(d.vertices[(side + 1) % d.size()]);
  const auto k = to_klein(p);
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  return ((k[0] - a[0]) * dx + (k[1] - a[1]) * dy) / (dx * dx + dy * dy);
}

Vec21 side_dual(const Domain& d, int side) {
  return unit(mcross(d.vertices[side], d.vertices[(side + 1) % d.size()]));
}

Vec21 line_meet(const Vec21& n1, const Vec21& n2) {
  Vec21 x = mcross(n1, n2);
  const CausalClass c = classify(x);
  if (c != CausalClass::TimelikePositive && c != CausalClass::TimelikeNegative) {
    fail(Errc::InvalidArgument, "lines do not meet");
  }
  if (x.z < 0) x = -1.0 * x;
  return (1 / mnorm(x)) * x;
}

std::pair<Vec21, Vec21> common_perpendicular(const Vec21& n1, const Vec21& n2) {
  const Vec21 m = mcross(n1, n2);
  if (classify(m) != CausalClass::Spacelike) fail(Errc::InvalidArgument, "lines are not ultraparallel");
  const Vec21 mu = unit(m);
  return {line_meet(mu, n1), line_meet(mu, n2)};
}

namespace {

WeightedArcFamily equal_weights(std::vector<GeodesicArc> arcs) {
  WeightedArcFamily f;
  f.weights.assign(arcs.size(), 1.0 / double(arcs.size()));
  f.arcs = std::move(arcs);
  return f;
}

// Cut off the ideal vertex v of a polygon-like domain, from side v-1 to side v.
GeodesicArc cutoff(const Domain& d, int v, double depth) {
  const int n = int(d.size());
  return edge_arc(foot((v + n - 1) % n, 1 - depth), foot(v, depth));
}

BundledExample ideal_triangle() {
  BundledExample e;
  e.name = "ideal_triangle";
  e.surface = build_ideal_polygon({1.0 * ideal_point(0.4), 1.4 * ideal_point(2.5), 0.8 * ideal_point(4.3)});
  const Domain& d = e.surface.domain;
  e.family = equal_weights({cutoff(d, 0, 0.25), cutoff(d, 1, 0.3), cutoff(d, 2, 0.2)});
  e.tiles_minus_arcs = 1;
  e.types.one = 3;
  e.types.three = 1;
  return e;
}

BundledExample ideal_square() {
  BundledExample e;
  e.name = "ideal_square";
  e.surface = build_ideal_polygon(
      {1.0 * ideal_point(0.3), 1.2 * ideal_point(1.9), 0.9 * ideal_point(3.4), 1.1 * ideal_point(4.7)});
  const Domain& d = e.surface.domain;
  e.family = equal_weights({cutoff(d, 0, 0.2), cutoff(d, 1, 0.25), cutoff(d, 2, 0.2), cutoff(d, 3, 0.3),
                            edge_arc(foot(0, 0.5), foot(2, 0.5))});
  e.tiles_minus_arcs = 1;
  e.types.one = 4;
  e.types.three = 2;
  return e;
}

// Domain x1, f1, f2, g x1 with the closed boundary geodesic along side 1.
BundledExample crown_1() {
  BundledExample e;
  e.name = "crown_1";
  CrownParams p;
  p.scales = {1.3};
  e.surface = build_crown(1, 1.6, p);
  const Domain& d = e.surface.domain;
  // A: common perpendicular from the closed boundary to the ideal edge (g x1, x1)
  const auto [a, a2] = common_perpendicular(side_dual(d, 1), side_dual(d, 3));
  const double ta = side_parameter(d, 1, a);
  const GeodesicArc A = edge_arc(foot(1, ta), foot(3, side_parameter(d, 3, a2)));
  // B: from the spike x1 to a point of the closed boundary before the foot of A
  const GeodesicArc B = spike_arc(spike_end(0), foot(1, 0.5 * ta));
  e.family = equal_weights({A, B});
  e.tiles_minus_arcs = 0;
  e.types.two = 2;
  return e;
}

// Domain x1, g^-1 x1, x2, g x2; sides 1 and 3 are glued by g.
BundledExample spiked_annulus_1_1() {
  BundledExample e;
  e.name = "spiked_annulus_1_1";
  AnnulusParams p;
  p.scales = {1.0, 1.25};
  e.surface = build_spiked_annulus(1, 1, p);
  const Domain& d = e.surface.domain;
  const auto [c0, c1] = common_perpendicular(side_dual(d, 0), side_dual(d, 2));
  const GeodesicArc C = edge_arc(foot(0, side_parameter(d, 0, c0)), foot(2, side_parameter(d, 2, c1)));
  const GeodesicArc K0 = edge_arc(foot(0, 0.12), foot(0, 0.88, {1}));
  const GeodesicArc K1 = edge_arc(foot(2, 0.12), foot(2, 0.88, {-1}));
  const GeodesicArc D = edge_arc(foot(0, 0.3), foot(2, 0.3, {1}));
  e.family = equal_weights({C, K0, K1, D});
  e.tiles_minus_arcs = 0;
  e.types.one = 2;
  e.types.three = 2;
  return e;
}

// Domain x1, h x1, h^2 x1; side 0 is glued to side 1 by the glide reflection h.
BundledExample spiked_moebius_1() {
  BundledExample e;
  e.name = "spiked_moebius_1";
  MoebiusParams p;
  p.scales = {1.2};
  e.surface = build_spiked_moebius(1, p);
  const Domain& d = e.surface.domain;
  const Isometry h = e.surface.generators[0];
  // C: common perpendicular from E = (x3, x1) to h E
  const Vec21 nE = side_dual(d, 2);
  const auto [c0, c1] = common_perpendicular(nE, adjoint(h, nE));
  const Vec21 c1_base = act_point(inverse(h), c1);
  const GeodesicArc C = edge_arc(foot(2, side_parameter(d, 2, c0)), foot(2, side_parameter(d, 2, c1_base), {1}));
  const GeodesicArc B = spike_arc(spike_end(0, {1, 1}), foot(2, 0.5 * side_parameter(d, 2, c1_base), {1}));
  e.family = equal_weights({C, B});
  e.tiles_minus_arcs = 0;
  e.types.two = 2;
  return e;
}

}  // namespace

std::vector<std::string> bundled_names() {
  return {"ideal_triangle", "ideal_square", "crown_1", "spiked_annulus_1_1", "spiked_moebius_1"};
}

BundledExample bundled(const std::string& name) {
  if (name == "ideal_triangle") return ideal_triangle();
  if (name == "ideal_square") return ideal_square();
  if (name == "crown_1") return crown_1();
  if (name == "spiked_annulus_1_1") return spiked_annulus_1_1();
  if (name == "spiked_moebius_1") return spiked_moebius_1();
  fail(Errc::InvalidArgument, "unknown bundled example: " + name);
}

}  // namespace dms
