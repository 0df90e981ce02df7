#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dms/margulis.hpp"

namespace dms {

struct StemQuadrant {
  Vec21 vplus, vminus;  // future lightlike
};

// Left crooked plane w + P(v): v is unit spacelike, vplus / vminus are the future lightlike
// vectors of v^perp (z = 1) with det(vplus, v, vminus) > 0. The positive wing lies in
// vplus^perp on the side of the Killing fields that attract toward [vplus].
struct CrookedPlane {
  Vec21 w, v, vplus, vminus;
};

CrookedPlane make_crooked_plane(const Vec21& w, const Vec21& v);
StemQuadrant stem_quadrant(const Vec21& v);

// x = a vplus - b vminus with a, b > 0. Throws NotInPlane when x is off span(vplus, vminus).
bool stem_quadrant_contains(const StemQuadrant& sq, const Vec21& x, double tol = 1e-9);

// +1 / -1 for the two components of the complement, 0 on the plane (within tol, relative).
int crooked_side(const CrookedPlane& p, const Vec21& x, double tol = 1e-12);
// Sign of the wing half-planes: the positive wing is {a vplus + c v : wing_sign * c >= 0}.
int wing_sign(const CrookedPlane& p);

// (A, u) . P: vertex to Ad(A) w + u, director to Ad(A) v.
CrookedPlane transform(const Isometry& A, const Vec21& u, const CrookedPlane& p);
// Vertex distance plus director distance up to sign; P(w, v) and P(w, -v) are the same set.
double plane_distance(const CrookedPlane& a, const CrookedPlane& b);

// Exact test on the four convex pieces of each plane; touching counts as meeting.
bool crooked_intersect_exact(const CrookedPlane& a, const CrookedPlane& b, double tol = 1e-10);

struct CrookedDisjointness {
  bool quadrant = false;  // stem-quadrant sum criterion
  bool sampled = false;   // point clouds strictly on one side of each other
  bool exact = false;     // piecewise-planar intersection test
  double sample_separation = 0;
  int samples = 0;
  bool agree() const { return quadrant == sampled && sampled == exact; }
};

// Throws StemsCross when the stem geodesics meet (or share an ideal point).
CrookedDisjointness crooked_disjointness(const CrookedPlane& a, const CrookedPlane& b, int samples = 1000);
bool crooked_disjoint(const CrookedPlane& a, const CrookedPlane& b, int samples = 1000);

// Plane of the lift rho(word) . arc: vertex is the mean of the two adjacent tile values,
// director the unit dual of the lift, signed so that the jump across it lies in its stem
// quadrant. Throws NotEdgeToEdge.
CrookedPlane crooked_from_arc(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                              const TileMap& m, int arc, const Word& word);

struct Photon {
  Vec21 w;   // base point
  Vec21 v0;  // future lightlike direction
};

Photon make_photon(const Vec21& w, const Vec21& v0);
// Photon of the lift rho(word) . spike: phi of the tile at that vertex plus R v.
Photon photon_from_spike(const DecoratedSurface& s, const Tiling& t, const TileMap& m, int spike,
                         const Word& word = {});
Photon transform(const Isometry& A, const Vec21& u, const Photon& l);

// <w1 - w2, mcross(v1, v2)>
double photon_pairing(const Photon& a, const Photon& b);
bool photons_intersect(const Photon& a, const Photon& b, double tol = 1e-10);
// Sign of the pairing. Throws IntersectingPhotons, or InvalidArgument for parallel directions.
int handedness(const Photon& a, const Photon& b, double tol = 1e-10);
// (pairing / |v1 x v2|^2) (v1 x v2)
Vec21 relative_motion(const Photon& a, const Photon& b);

struct CrookedPairing {
  int arc = -1;
  Word e_word, f_word;  // lifts of the arc on the boundary of the region
  Word pairing;         // f = rho(pairing) . e
  CrookedPlane e, f;
  double residual = 0;  // |(rho, u)(pairing) . P_e - P_f|
  CrookedDisjointness disjoint;
};

struct PhotonCensus {
  int pairs = 0, positive = 0, negative = 0, intersecting = 0;
  double min_abs_pairing = 0;
  std::string witness;  // first intersecting pair, or the first pair against the majority
  int sign() const;     // common handedness, 0 when mixed or intersecting
};

struct CrookedCensus {
  int pairs = 0, disjoint = 0, disagreements = 0;
  // pairs whose stem geodesics meet outside the surface; the criterion does not apply
  int stems_cross = 0, stems_cross_meeting = 0;
  double max_residual = 0;
};

struct DecoratedSpacetime {
  std::vector<Isometry> holonomy;
  std::vector<Vec21> cocycle;
  std::vector<Photon> photons;  // one per spike, base lifts
  std::vector<int> region_tiles;      // one lift of each tile, in placement order
  std::vector<Word> region_offsets;   // deck offsets of those lifts
  std::vector<CrookedPlane> planes;    // edge-to-edge arc lifts bounding the region's tiles
  std::vector<CrookedPairing> crooked_fd;
  PhotonCensus photon_census;
  CrookedCensus crooked_census;
  std::optional<OppositeSignReport> opposite_sign;
};

// Assembles without judging the result; the photon census covers the base pairs and the
// horoball connections up to word_len.
DecoratedSpacetime assemble_spacetime(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                                      const TileMap& m, int word_len = 3);
// Validates x and throws DisjointnessFailure unless the photons are pairwise disjoint with
// one handedness and the crooked planes are disjoint.
DecoratedSpacetime build_decorated_spacetime(const DecoratedSurface& s, const WeightedArcFamily& x, int word_len = 3);

// Cocycle copied; spike motion of spike i is mcross(w_i, v_i).
TangentVector recover_tangent(const DecoratedSpacetime& d, const DecoratedSurface& s);

}  // namespace dms
