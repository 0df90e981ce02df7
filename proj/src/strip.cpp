#include "dms/strip.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "dms/error.hpp"

namespace dms {

StripTemplate default_template(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs) {
  StripTemplate tpl;
  for (const auto& a : arcs) {
    if (a.kind == ArcKind::EdgeToEdge) {
      tpl.waist.push_back(midpoint(make_point(endpoint_point(s, a.start)), make_point(endpoint_point(s, a.end))).v);
    } else {
      tpl.waist.push_back({0, 0, 0});
    }
    tpl.width_scale.push_back(1.0);
  }
  return tpl;
}

namespace {

// Flip v so that the field p -> mcross(v, p) at `at` moves across the line n toward `toward`.
Vec21 orient_push(Vec21 v, const Vec21& n, const Vec21& at, const Vec21& toward) {
  const double side = bilinear(toward, n);
  if (std::abs(side) < 1e-12 * (1 + max_abs(toward))) fail(Errc::InvalidArgument, "target point lies on the arc");
  const double push = bilinear(mcross(v, at), n);
  if (push == 0) fail(Errc::InvalidArgument, "strip field is tangent to the arc");
  return (push > 0) == (side > 0) ? v : -v;
}

// Unsigned strip field of a lift, plus a point of the lift where the sign is tested.
std::pair<Vec21, Vec21> raw_field(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs, int arc,
                                  const Word& word, const StripTemplate& tpl, ArcLift* out = nullptr) {
  const ArcLift L = lift_arc(s, arcs, arc, word);
  if (out) *out = L;
  const double w = tpl.width_scale.at(arc);
  if (!(w > 0)) fail(Errc::InvalidArgument, "width scale must be positive");
  if (arcs[arc].kind == ArcKind::EdgeToEdge) {
    const Vec21 waist = act_point(s.holonomy(L.word), tpl.waist.at(arc));
    if (std::abs(bilinear(waist, L.n)) > 1e-8 * (1 + max_abs(waist))) fail(Errc::WaistOffArc, "waist is not on the arc");
    return {w * unit(mcross(L.n, waist)), waist};
  }
  return {w * L.a, L.b};
}

}  // namespace

Vec21 hyperbolic_strip_field(const Vec21& n, const Vec21& waist, double width, const Vec21& toward) {
  const Vec21 nu = unit(n);
  if (std::abs(bilinear(waist, nu)) > 1e-8 * (1 + max_abs(waist))) fail(Errc::WaistOffArc, "waist is not on the arc");
  return orient_push(width * unit(mcross(nu, waist)), nu, waist, toward);
}

Vec21 parabolic_strip_field(const Vec21& spike, const Vec21& n, const Vec21& base, double width,
                            const Vec21& toward) {
  return orient_push(width * spike, unit(n), base, toward);
}

Vec21 strip_killing(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs, int arc, const Word& word,
                    const StripTemplate& tpl, const Vec21& toward) {
  ArcLift L;
  const auto [v, at] = raw_field(s, arcs, arc, word, tpl, &L);
  return orient_push(v, L.n, at, toward);
}

double strip_width_at(const Vec21& v, const Vec21& p) {
  const double q = norm2(mcross(v, p));
  return std::sqrt(std::max(0.0, q));
}

TileMap tile_map(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                 const std::vector<double>& weights, const StripTemplate& tpl, int base_piece) {
  const int np = int(t.pieces.size());
  if (base_piece < 0 || base_piece >= np) fail(Errc::InvalidArgument, "base piece out of range");
  if (weights.size() != arcs.size()) fail(Errc::InvalidArgument, "one weight per arc");
  TileMap m;
  m.base_piece = base_piece;
  m.chord_jump.resize(t.chords.size());
  std::vector<std::vector<std::pair<int, int>>> adj(np);  // piece -> (chord, side of that piece)
  for (int c = 0; c < int(t.chords.size()); ++c) {
    const Chord& ch = t.chords[c];
    const Vec21 f = strip_killing(s, arcs, ch.arc, ch.word, tpl, t.pieces[ch.piece[1]].sample);
    m.chord_jump[c] = weights[ch.arc] * f;
    adj[ch.piece[0]].push_back({c, 0});
    adj[ch.piece[1]].push_back({c, 1});
  }
  // The chords cut a convex polygon, so the piece graph is a tree.
  m.piece_value.assign(np, {0, 0, 0});
  std::vector<bool> seen(np, false);
  seen[base_piece] = true;
  std::deque<int> q{base_piece};
  while (!q.empty()) {
    const int p = q.front();
    q.pop_front();
    for (const auto& [c, side] : adj[p]) {
      const int r = t.chords[c].piece[1 - side];
      if (seen[r]) continue;
      seen[r] = true;
      m.piece_value[r] = side == 0 ? m.piece_value[p] + m.chord_jump[c] : m.piece_value[p] - m.chord_jump[c];
      q.push_back(r);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail(Errc::DisconnectedTiling, "piece graph is disconnected");

  m.cocycle.assign(s.rank(), {0, 0, 0});
  std::vector<bool> have(s.rank(), false);
  for (const Gluing& g : t.gluings) {
    const Vec21 u = m.piece_value[g.target_piece] - adjoint(s.generators[g.generator], m.piece_value[g.source_piece]);
    if (!have[g.generator]) {
      m.cocycle[g.generator] = u;
      have[g.generator] = true;
    } else {
      m.residual = std::max(m.residual, max_abs(u - m.cocycle[g.generator]));
    }
  }
  for (int k = 0; k < s.rank(); ++k)
    if (!have[k]) fail(Errc::DisconnectedTiling, "generator without a gluing");

  for (const auto& tile : t.tiles) m.tile_value.push_back(m.piece_value[tile.pieces.front()]);

  m.arc_orientation.assign(arcs.size(), {-1, -1});
  m.arc_field.assign(arcs.size(), {0, 0, 0});
  std::vector<bool> done(arcs.size(), false);
  for (const Chord& ch : t.chords) {
    if (done[ch.arc]) continue;
    done[ch.arc] = true;
    const int t0 = t.pieces[ch.piece[0]].tile, t1 = t.pieces[ch.piece[1]].tile;
    const Vec21 f = strip_killing(s, arcs, ch.arc, ch.word, tpl, t.pieces[ch.piece[1]].sample);
    m.arc_orientation[ch.arc] = {std::min(t0, t1), std::max(t0, t1)};
    m.arc_field[ch.arc] = t1 >= t0 ? f : -f;
  }
  return m;
}

void require_pruned(const DecoratedSurface& s, const WeightedArcFamily& x) {
  const auto rep = validate_pruned_point(s, x);
  if (rep.ok()) return;
  std::string why;
  for (const auto& p : rep.problems) why += (why.empty() ? "" : "; ") + p;
  if (!rep.disjoint) fail(Errc::ArcsCross, why);
  if (!rep.filling) fail(Errc::NotFilling, why);
  fail(Errc::InvalidArgument, why);
}

TileMap tile_map(const DecoratedSurface& s, const WeightedArcFamily& x) {
  require_pruned(s, x);
  return tile_map(s, tiles(s, x.arcs), x.arcs, x.weights, default_template(s, x.arcs));
}

Vec21 tile_value_at(const DecoratedSurface& s, const TileMap& m, int piece, const Word& w) {
  return evaluate_cocycle(s.generators, m.cocycle, w) + adjoint(s.holonomy(w), m.piece_value.at(piece));
}

Vec21 spike_tile_value(const DecoratedSurface& s, const Tiling& t, const TileMap& m, int spike) {
  const auto& vs = s.domain.vertex_spikes;
  int best = -1;
  for (int v = 0; v < int(vs.size()); ++v) {
    if (vs[v].spike != spike) continue;
    if (best < 0 || vs[v].word.size() < vs[best].word.size()) best = v;
  }
  if (best < 0) fail(Errc::SpikeNotFound, "spike " + std::to_string(spike) + " has no domain vertex");
  // vertex = rho(w) x_i, so the piece at x_i is rho(w)^-1 times the piece at the vertex
  return tile_value_at(s, m, piece_at_vertex(t, best), inverse(vs[best].word));
}

TangentVector tangent_from_map(const DecoratedSurface& s, const Tiling& t, const TileMap& m) {
  TangentVector tv;
  tv.cocycle = m.cocycle;
  for (int i = 0; i < s.spike_count(); ++i) tv.spike_motion.push_back(mcross(spike_tile_value(s, t, m, i), s.spikes[i].v));
  return tv;
}

TangentVector strip_map(const DecoratedSurface& s, const WeightedArcFamily& x) {
  require_pruned(s, x);
  const Tiling t = tiles(s, x.arcs);
  return tangent_from_map(s, t, tile_map(s, t, x.arcs, x.weights, default_template(s, x.arcs)));
}

ClosedDerivative dl_closed_analytic(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                                    const std::vector<double>& weights, const StripTemplate& tpl, const Word& word) {
  const Isometry A = s.holonomy(word);
  const double L = trace_length(A);  // throws NotHyperbolic
  const Geodesic G = axis(A);
  const Vec21 p0 = project(G, t.pieces.front().sample).v;
  const Vec21 tau0 = unit(G.vplus + bilinear(G.vplus, p0) * p0);
  // shifted off the projection so that period ends avoid special points
  const double d = 0.1234 * L;
  const Vec21 ps = std::cosh(d) * p0 + std::sinh(d) * tau0;
  const Vec21 ts = std::sinh(d) * p0 + std::cosh(d) * tau0;
  const Vec21 pe = std::cosh(L) * ps + std::sinh(L) * ts;

  std::set<std::pair<int, Word>> lifts;
  for (const Word& g : domains_along(s, ps, pe))
    for (const Chord& c : t.chords) lifts.insert({c.arc, reduce(concat(g, c.word))});

  ClosedDerivative out;
  for (const auto& [arc, w] : lifts) {
    ArcLift lift;
    const Vec21 v = raw_field(s, arcs, arc, w, tpl, &lift).first;
    Vec21 X = mcross(G.n, lift.n);
    const CausalClass cc = classify(X);
    if (cc != CausalClass::TimelikePositive && cc != CausalClass::TimelikeNegative) continue;
    X = (X.z < 0 ? -1.0 : 1.0) / mnorm(X) * X;
    // on the arc segment
    const auto ka = to_klein(lift.a), kb = to_klein(lift.b), kx = to_klein(X);
    const double dx = kb[0] - ka[0], dy = kb[1] - ka[1];
    const double lam = ((kx[0] - ka[0]) * dx + (kx[1] - ka[1]) * dy) / (dx * dx + dy * dy);
    if (lam < -1e-9 || lam > 1 + 1e-9) continue;
    // in one period of the axis
    const double sa = std::asinh(bilinear(X, ts));
    if (sa < 0 || sa >= L) continue;
    Crossing c;
    c.arc = arc;
    c.word = w;
    c.point = X;
    c.weight = weights[arc];
    c.width = strip_width_at(v, X);
    const double cosang = bilinear(G.n, lift.n);
    c.sin_angle = std::sqrt(std::max(0.0, 1 - cosang * cosang));
    out.value += c.weight * c.width * c.sin_angle;
    out.crossings.push_back(c);
  }
  return out;
}

ClosedDerivative dl_closed_analytic(const DecoratedSurface& s, const WeightedArcFamily& x, const Word& word) {
  require_pruned(s, x);
  return dl_closed_analytic(s, tiles(s, x.arcs), x.arcs, x.weights, default_template(s, x.arcs), word);
}

namespace {

std::pair<Vec21, Vec21> connection_fields(const DecoratedSurface& s, const Tiling& t, const TileMap& m,
                                          const HoroballConnection& c) {
  const Vec21 phi1 = spike_tile_value(s, t, m, c.spike_from);
  const Vec21 phin = evaluate_cocycle(s.generators, m.cocycle, c.word) +
                     adjoint(s.holonomy(c.word), spike_tile_value(s, t, m, c.spike_to));
  return {phi1, phin};
}

double richardson_diff(auto&& f, double h, bool richardson) {
  if (!(h > 0)) fail(Errc::InvalidArgument, "step must be positive");
  auto central = [&](double k) { return (f(k) - f(-k)) / (2 * k); };
  if (!richardson) return central(h);
  return (4 * central(h / 2) - central(h)) / 3;
}

}  // namespace

double horoball_dl(const Vec21& v1, const Vec21& v2, const Vec21& phi1, const Vec21& phin) {
  const Vec21 nhat = mcross(v2, v1) / bilinear(v1, v2);
  return bilinear(phin - phi1, nhat);
}

double horoball_dl_fd(const Vec21& v1, const Vec21& v2, const Vec21& phi1, const Vec21& phin, double h,
                      bool richardson) {
  return richardson_diff(
      [&](double k) {
        return horoball_connection_length({act_point(killing_flow(phi1, k), v1)},
                                          {act_point(killing_flow(phin, k), v2)});
      },
      h, richardson);
}

double dl_horoball_analytic(const DecoratedSurface& s, const Tiling& t, const TileMap& m,
                            const HoroballConnection& c) {
  const auto [phi1, phin] = connection_fields(s, t, m, c);
  return horoball_dl(s.spikes.at(c.spike_from).v, connection_far_end(s, c), phi1, phin);
}

double dl_horoball_analytic(const DecoratedSurface& s, const WeightedArcFamily& x, const HoroballConnection& c) {
  require_pruned(s, x);
  const Tiling t = tiles(s, x.arcs);
  return dl_horoball_analytic(s, t, tile_map(s, t, x.arcs, x.weights, default_template(s, x.arcs)), c);
}

double dl_closed_fd(const DecoratedSurface& s, const std::vector<Vec21>& u, const Word& word, double h,
                    bool richardson) {
  const Isometry A = s.holonomy(word);
  trace_length(A);
  const Vec21 uw = evaluate_cocycle(s.generators, u, word);
  return richardson_diff([&](double k) { return trace_length(compose(killing_flow(uw, k), A)); }, h, richardson);
}

double dl_horoball_fd(const DecoratedSurface& s, const Tiling& t, const TileMap& m, const HoroballConnection& c,
                      double h, bool richardson) {
  const auto [phi1, phin] = connection_fields(s, t, m, c);
  return horoball_dl_fd(s.spikes.at(c.spike_from).v, connection_far_end(s, c), phi1, phin, h, richardson);
}

int numerical_rank(int rows, int cols, const std::vector<double>& m, std::vector<double>* sv) {
  if (rows == 0 || cols == 0) return 0;
  Eigen::MatrixXd M(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) M(r, c) = m[std::size_t(r) * cols + c];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& S = svd.singularValues();
  if (sv) sv->assign(S.data(), S.data() + S.size());
  if (S.size() == 0 || S(0) == 0) return 0;
  int rank = 0;
  for (int i = 0; i < S.size(); ++i)
    if (S(i) > 1e-9 * S(0)) ++rank;
  return rank;
}

BasisResult basis_matrix(const DecoratedSurface& s, const WeightedArcFamily& x) {
  const Tiling t = tiles(s, x.arcs);
  if (!is_filling(t)) fail(Errc::NotTriangulation, "family does not fill");
  const int n = int(x.arcs.size());
  if (n != deformation_dim(s)) {
    fail(Errc::NotTriangulation, std::to_string(n) + " arcs, expected " + std::to_string(deformation_dim(s)));
  }
  const StripTemplate tpl = default_template(s, x.arcs);
  BasisResult b;
  b.rows = 3 * (s.rank() + s.spike_count());
  b.cols = n + 3;
  b.matrix.assign(std::size_t(b.rows) * b.cols, 0.0);
  auto put = [&](int col, const TangentVector& tv) {
    int r = 0;
    for (const auto& v : tv.cocycle)
      for (double e : {v.x, v.y, v.z}) b.matrix[std::size_t(r++) * b.cols + col] = e;
    for (const auto& v : tv.spike_motion)
      for (double e : {v.x, v.y, v.z}) b.matrix[std::size_t(r++) * b.cols + col] = e;
  };
  for (int k = 0; k < n; ++k) {
    std::vector<double> w(n, 0.0);
    w[k] = 1.0;
    put(k, tangent_from_map(s, t, tile_map(s, t, x.arcs, w, tpl)));
  }
  const Vec21 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    TangentVector tv;
    for (const auto& g : s.generators) tv.cocycle.push_back(basis[j] - adjoint(g, basis[j]));
    for (const auto& sp : s.spikes) tv.spike_motion.push_back(mcross(basis[j], sp.v));
    put(n + j, tv);
  }
  b.rank = numerical_rank(b.rows, b.cols, b.matrix, &b.singular_values);
  std::vector<double> gauge;
  for (int r = 0; r < b.rows; ++r)
    for (int j = 0; j < 3; ++j) gauge.push_back(b.matrix[std::size_t(r) * b.cols + n + j]);
  b.rank_mod_coboundaries = b.rank - numerical_rank(b.rows, 3, gauge);
  return b;
}

}  // namespace dms
