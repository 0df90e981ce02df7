#pragma once

#include <string>
#include <vector>

#include "dms/arc_complex.hpp"

namespace dms {

struct RenderOptions {
  int pixels = 640;
  bool horoballs = true;  // 64-point horocycles at the spike decorations
  bool axes = true;       // axes of hyperbolic generators
};

// Klein-disk SVG of the fundamental domain, optional arcs (base lifts, colored by kind).
// Coordinates are rounded to 6 decimals, so equal inputs give byte-identical files.
std::string render_klein(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs = {},
                         const RenderOptions& opt = {});

// Sampled horocycle {p : <p, v> = -1}, closed at the ideal point; Klein coordinates.
std::vector<std::array<double, 2>> horocycle_klein(const Vec21& v, int points = 64);

}  // namespace dms
