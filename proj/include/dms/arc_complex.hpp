#pragma once

#include <string>
#include <vector>

#include "dms/surface.hpp"

namespace dms {

enum class ArcKind { EdgeToEdge, SpikeToEdge };
const char* arc_kind_name(ArcKind k);

// A boundary foot: side `id` of the domain, lifted by `word`, at parameter t along the side.
// A spike end: spike `id`, lifted by `word`.
struct ArcEndpoint {
  bool spike = false;
  int id = -1;
  Word word;
  double t = 0.5;
};

// For SpikeToEdge arcs the start is the spike end.
struct GeodesicArc {
  ArcKind kind = ArcKind::EdgeToEdge;
  ArcEndpoint start, end;
};

struct WeightedArcFamily {
  std::vector<GeodesicArc> arcs;
  std::vector<double> weights;
};

// Geometry of the lift rho(word) . arc.
struct ArcLift {
  int arc = -1;
  Word word;
  Vec21 a, b;  // hyperboloid points, or lightlike spike decorations for spike ends
  bool a_ideal = false, b_ideal = false;
  Vec21 n;     // unit dual of the supporting line
};

Vec21 endpoint_point(const DecoratedSurface& s, const ArcEndpoint& e);
void check_arc(const DecoratedSurface& s, const GeodesicArc& arc);
ArcLift lift_arc(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs, int arc, const Word& word);

// A lift clipped to the fundamental domain. Perimeter coordinates run from 0 to n
// counterclockwise; integer values are domain vertices.
struct Chord {
  int arc = -1;
  Word word;
  double pos[2] = {0, 0};
  double angle[2] = {0, 0};  // tie-break at equal positions
  double klein[2][2] = {{0, 0}, {0, 0}};
  int piece[2] = {-1, -1};   // piece on the left / right when walking from end 0 to end 1
};

struct PerimeterInterval {
  double from = 0, to = 0;  // counterclockwise, to may exceed n when wrapping
};

struct Piece {
  std::vector<PerimeterInterval> intervals;
  std::vector<int> chords;
  std::vector<int> ideal_vertices;  // domain vertex indices
  Vec21 sample;                     // interior point on the hyperboloid
  int tile = -1;
  Word offset;                      // offset . piece lies in the lifted tile
};

struct TileInfo {
  std::vector<int> pieces;
  std::vector<std::pair<int, Word>> spikes;         // distinct spike lifts
  std::vector<std::pair<int, Word>> internal_sides; // distinct arc lifts on the boundary
  bool disk = true;
};

// Piece in F along the target side of a generator, and the piece along the source side
// that rho(g) carries next to it.
struct Gluing {
  int target_piece = -1;
  int source_piece = -1;
  int generator = -1;
};

struct Tiling {
  std::vector<Chord> chords;
  std::vector<Piece> pieces;
  std::vector<TileInfo> tiles;
  std::vector<Gluing> gluings;
  int window = 0;  // longest lift word met while chasing chords across paired sides
  // arc index -> tile pairs it separates (one entry per chord)
  std::vector<std::vector<std::pair<int, int>>> adjacency;
};

struct DisjointnessReport {
  bool disjoint = true;
  int window = 0;
  int chords = 0;
  std::string witness;
};

DisjointnessReport check_disjoint(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs);
bool pairwise_disjoint(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs);
Tiling tiles(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs);
bool is_filling(const Tiling& t);
bool is_filling(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs);

struct TileTypeCounts {
  int zero = 0, one = 0, two = 0, three = 0, more = 0;
  int total() const { return zero + one + two + three + more; }
};
// Histogram over internal-side counts. A tile without internal sides is only legal when the
// whole surface is an ideal triangle; anything else throws InvalidArgument.
TileTypeCounts tile_types(const Tiling& t);

struct PrunedPointReport {
  bool weights_positive = true;
  bool weights_normalized = true;
  bool disjoint = true;
  bool filling = true;
  std::vector<std::string> problems;
  bool ok() const { return weights_positive && weights_normalized && disjoint && filling; }
};
PrunedPointReport validate_pruned_point(const DecoratedSurface& s, const WeightedArcFamily& x);

// Weights rescaled to sum 1.
WeightedArcFamily normalized(const WeightedArcFamily& x);

// Deck words of the domain translates met by the segment p -> q, in order. The walk
// starts from the domain translate containing p; throws if the segment leaves the surface.
std::vector<Word> domains_along(const DecoratedSurface& s, const Vec21& p, const Vec21& q);
// A deck word w with p in rho(w) F.
Word locate(const DecoratedSurface& s, const Vec21& p);

// Piece touching domain vertex v (the first one in piece order).
int piece_at_vertex(const Tiling& t, int vertex);

}  // namespace dms
