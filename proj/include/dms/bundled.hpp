#pragma once

#include <string>
#include <vector>

#include "dms/arc_complex.hpp"

namespace dms {

struct BundledExample {
  std::string name;
  DecoratedSurface surface;
  WeightedArcFamily family;  // a triangulation of the pruned arc complex, equal weights
  int tiles_minus_arcs = 0;  // hand-derived Euler count
  TileTypeCounts types;      // hand-derived tile types
};

// ideal_triangle, ideal_square, crown_1, spiked_annulus_1_1, spiked_moebius_1
std::vector<std::string> bundled_names();
BundledExample bundled(const std::string& name);

// Helpers for building arcs on a domain.
// Parameter of the point p along side i (p must lie on the side's line).
double side_parameter(const Domain& d, int side, const Vec21& p);
// Unit dual of the line carrying side i.
Vec21 side_dual(const Domain& d, int side);
// Intersection point of two lines given by duals; throws if they do not meet in H^2.
Vec21 line_meet(const Vec21& n1, const Vec21& n2);
// Feet of the common perpendicular of two ultraparallel lines.
std::pair<Vec21, Vec21> common_perpendicular(const Vec21& n1, const Vec21& n2);

ArcEndpoint foot(int side, double t, Word w = {});
ArcEndpoint spike_end(int spike, Word w = {});
GeodesicArc edge_arc(const ArcEndpoint& a, const ArcEndpoint& b);
GeodesicArc spike_arc(const ArcEndpoint& spike, const ArcEndpoint& b);

}  // namespace dms
