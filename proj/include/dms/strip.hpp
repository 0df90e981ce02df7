#pragma once

#include <vector>

#include "dms/arc_complex.hpp"

namespace dms {

// Waists of the base lifts (finite arcs) and width scales. Spike-to-edge arcs have no waist;
// their entry is the zero vector.
struct StripTemplate {
  std::vector<Vec21> waist;
  std::vector<double> width_scale;
};

// Waist at the hyperbolic midpoint of the two feet, width 1.
StripTemplate default_template(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs);

// Hyperbolic strip field for an arc with unit dual n: its axis is the perpendicular to the
// arc at the waist. The sign makes p -> mcross(v, p) push toward the point `toward`.
Vec21 hyperbolic_strip_field(const Vec21& n, const Vec21& waist, double width, const Vec21& toward);
// Parabolic strip field fixing the spike vector; `base` is any point of the arc.
Vec21 parabolic_strip_field(const Vec21& spike, const Vec21& n, const Vec21& base, double width,
                            const Vec21& toward);

// Strip field of the lift rho(word) . arc, pushing toward `toward`.
Vec21 strip_killing(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs, int arc, const Word& word,
                    const StripTemplate& tpl, const Vec21& toward);

// |mcross(v, p)|
double strip_width_at(const Vec21& v, const Vec21& p);

struct TileMap {
  int base_piece = 0;
  std::vector<Vec21> piece_value;  // phi on each piece of the domain
  std::vector<Vec21> tile_value;   // phi on the root piece of each tile
  std::vector<Vec21> chord_jump;   // weighted field, phi(piece[1]) - phi(piece[0])
  std::vector<Vec21> cocycle;      // u on the generators
  double residual = 0;             // mismatch between gluings of one generator
  // per arc: tiles (from, toward) of the first chord, ordered by tile id, and the unit field toward `toward`
  std::vector<std::pair<int, int>> arc_orientation;
  std::vector<Vec21> arc_field;
};

TileMap tile_map(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                 const std::vector<double>& weights, const StripTemplate& tpl, int base_piece = 0);
// Throws ArcsCross, NotFilling or InvalidArgument with the problems of validate_pruned_point.
void require_pruned(const DecoratedSurface& s, const WeightedArcFamily& x);
// Validates x first (NotFilling, ArcsCross).
TileMap tile_map(const DecoratedSurface& s, const WeightedArcFamily& x);

// phi(rho(w) . piece) = u(w) + Ad(rho(w)) phi(piece)
Vec21 tile_value_at(const DecoratedSurface& s, const TileMap& m, int piece, const Word& w);

struct TangentVector {
  std::vector<Vec21> cocycle;       // u on the generators
  std::vector<Vec21> spike_motion;  // delta v_i = mcross(phi(d_i), v_i)
};

// Value of phi on a piece touching the base lift of spike i.
Vec21 spike_tile_value(const DecoratedSurface& s, const Tiling& t, const TileMap& m, int spike);
TangentVector tangent_from_map(const DecoratedSurface& s, const Tiling& t, const TileMap& m);
TangentVector strip_map(const DecoratedSurface& s, const WeightedArcFamily& x);

struct Crossing {
  int arc = -1;
  Word word;
  Vec21 point;
  double width = 0, sin_angle = 0, weight = 0;
};

struct ClosedDerivative {
  double value = 0;
  std::vector<Crossing> crossings;
  bool empty() const { return crossings.empty(); }
};

// Sum over the crossings of one period of the axis: weight * width * sin(angle).
ClosedDerivative dl_closed_analytic(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                                    const std::vector<double>& weights, const StripTemplate& tpl, const Word& word);
ClosedDerivative dl_closed_analytic(const DecoratedSurface& s, const WeightedArcFamily& x, const Word& word);

// <phi_n - phi_1, n_hat> with mcross(v2, v1) = <v1, v2> n_hat.
double horoball_dl(const Vec21& v1, const Vec21& v2, const Vec21& phi1, const Vec21& phin);
// Same quantity by differentiating the connection length under the two flows.
double horoball_dl_fd(const Vec21& v1, const Vec21& v2, const Vec21& phi1, const Vec21& phin, double h = 1e-3,
                      bool richardson = true);

double dl_horoball_analytic(const DecoratedSurface& s, const Tiling& t, const TileMap& m,
                            const HoroballConnection& c);
double dl_horoball_analytic(const DecoratedSurface& s, const WeightedArcFamily& x, const HoroballConnection& c);

// Central differences, Richardson-extrapolated unless `richardson` is false.
double dl_closed_fd(const DecoratedSurface& s, const std::vector<Vec21>& u, const Word& word, double h = 1e-3,
                    bool richardson = true);
double dl_horoball_fd(const DecoratedSurface& s, const Tiling& t, const TileMap& m, const HoroballConnection& c,
                      double h = 1e-3, bool richardson = true);

struct BasisResult {
  int rows = 0, cols = 0;
  std::vector<double> matrix;  // row-major, arc columns then 3 coboundary columns
  int rank = 0;                // including the coboundary columns
  int rank_mod_coboundaries = 0;
  std::vector<double> singular_values;
};

// Throws NotTriangulation unless x fills and has deformation_dim arcs.
BasisResult basis_matrix(const DecoratedSurface& s, const WeightedArcFamily& x);
// Rank of a column set with a relative singular-value cutoff.
int numerical_rank(int rows, int cols, const std::vector<double>& m, std::vector<double>* sv = nullptr);

}  // namespace dms
