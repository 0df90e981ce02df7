#include "dms/arc_complex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dms/error.hpp"

namespace dms {

const char* arc_kind_name(ArcKind k) { return k == ArcKind::EdgeToEdge ? "edge_to_edge" : "spike_to_edge"; }

Vec21 endpoint_point(const DecoratedSurface& s, const ArcEndpoint& e) {
  if (e.spike) return s.spike_lift(e.id, e.word);
  return act_point(s.holonomy(e.word), domain_side_point(s.domain, e.id, e.t));
}

void check_arc(const DecoratedSurface& s, const GeodesicArc& arc) {
  auto foot = [&](const ArcEndpoint& e) {
    if (e.spike) fail(Errc::InvalidArgument, "expected a boundary foot");
    if (e.id < 0 || e.id >= int(s.domain.size())) fail(Errc::InvalidArgument, "boundary side out of range");
    if (s.domain.sides[e.id].kind != SideKind::Boundary) fail(Errc::InvalidArgument, "foot on a paired side");
    if (!(e.t > 0 && e.t < 1)) fail(Errc::InvalidArgument, "foot parameter must lie in (0,1)");
  };
  if (arc.kind == ArcKind::EdgeToEdge) {
    foot(arc.start);
  } else {
    if (!arc.start.spike) fail(Errc::InvalidArgument, "spike-to-edge arc must start at a spike");
    if (arc.start.id < 0 || arc.start.id >= s.spike_count()) fail(Errc::SpikeNotFound, "spike id out of range");
  }
  foot(arc.end);
}

ArcLift lift_arc(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs, int arc, const Word& word) {
  const GeodesicArc& g = arcs.at(arc);
  ArcLift L;
  L.arc = arc;
  L.word = reduce(word);
  const Isometry h = s.holonomy(L.word);
  const Vec21 a = endpoint_point(s, g.start), b = endpoint_point(s, g.end);
  L.a = act_point(h, a);
  L.b = act_point(h, b);
  L.a_ideal = g.start.spike;
  L.b_ideal = g.end.spike;
  // mcross(det Ad a, det Ad b) = Ad mcross(a, b). Transporting the base dual avoids the
  // cancellation in mcross of two far-out, nearly parallel endpoints.
  L.n = adjoint(h, unit(mcross(a, b)));
  return L;
}

WeightedArcFamily normalized(const WeightedArcFamily& x) {
  WeightedArcFamily y = x;
  const double sum = std::accumulate(x.weights.begin(), x.weights.end(), 0.0);
  if (!(sum > 0)) fail(Errc::InvalidArgument, "weights must have positive sum");
  for (double& w : y.weights) w /= sum;
  return y;
}

namespace {

using K2 = std::array<double, 2>;

constexpr double kSnap = 1e-9;
constexpr int kMaxChords = 20000;

double cross2(const K2& a, const K2& b) { return a[0] * b[1] - a[1] * b[0]; }
K2 sub(const K2& a, const K2& b) { return {a[0] - b[0], a[1] - b[1]}; }

struct Frame {
  const DecoratedSurface& s;
  std::vector<K2> v;
  int n;

  explicit Frame(const DecoratedSurface& surf) : s(surf), n(int(surf.domain.size())) {
    for (const auto& p : surf.domain.vertices) v.push_back(to_klein(p));
  }
  // Positive inside, scaled to Euclidean distance in the Klein disk.
  double side_fn(int i, const K2& p) const {
    const K2 a = v[i], d = sub(v[(i + 1) % n], a);
    return cross2(d, sub(p, a)) / std::hypot(d[0], d[1]);
  }
  K2 at(double pos) const {
    const int i = int(std::floor(pos)) % n;
    const double t = pos - std::floor(pos);
    const K2 a = v[i], b = v[(i + 1) % n];
    return {(1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1]};
  }
  // Perimeter coordinate of a boundary point; returns -1 if p is off the boundary.
  double position(const K2& p) const {
    double best = 1e300, pos = -1;
    for (int i = 0; i < n; ++i) {
      const K2 a = v[i], d = sub(v[(i + 1) % n], a);
      const double dd = d[0] * d[0] + d[1] * d[1];
      const double tau = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / dd;
      if (tau < -kSnap || tau > 1 + kSnap) continue;
      const double off = std::abs(side_fn(i, p));
      if (off < best) {
        best = off;
        pos = i + std::clamp(tau, 0.0, 1.0);
      }
    }
    if (best > 1e-7) return -1;
    const double r = std::round(pos);
    if (std::abs(pos - r) < kSnap) pos = r;
    if (pos >= n) pos -= n;
    return pos;
  }
  bool is_vertex(double pos) const { return pos == std::floor(pos); }
  int side_of(double pos) const { return int(std::floor(pos)) % n; }
};

struct RawChord {
  Chord c;
  bool clipped[2] = {false, false};
};

// Clip the lift to the domain. Returns false if it misses the interior.
bool clip(const Frame& F, const ArcLift& L, RawChord& out) {
  const auto A = to_klein(L.a), B = to_klein(L.b);
  double t0 = 0, t1 = 1;
  const double eps = 1e-12;
  for (int i = 0; i < F.n; ++i) {
    const double fa = F.side_fn(i, A), fb = F.side_fn(i, B);
    if (fa < -eps && fb < -eps) return false;
    if (fa < -eps) t0 = std::max(t0, fa / (fa - fb));
    if (fb < -eps) t1 = std::min(t1, fa / (fa - fb));
  }
  if (t1 - t0 < 1e-9) return false;
  auto point = [&](double t) { return K2{A[0] + t * (B[0] - A[0]), A[1] + t * (B[1] - A[1])}; };
  const K2 mid = point(0.5 * (t0 + t1));
  double inner = 1e300;
  for (int i = 0; i < F.n; ++i) inner = std::min(inner, F.side_fn(i, mid));
  if (inner < 1e-10) return false;  // runs along a side

  out = RawChord{};
  out.c.arc = L.arc;
  out.c.word = L.word;
  const double ts[2] = {t0, t1};
  for (int e = 0; e < 2; ++e) {
    const K2 p = point(ts[e]);
    out.c.klein[e][0] = p[0];
    out.c.klein[e][1] = p[1];
    out.clipped[e] = e == 0 ? t0 > 1e-9 : t1 < 1 - 1e-9;  // round-off from long holonomy words
    const double pos = F.position(p);
    if (pos < 0) {
      std::ostringstream os;
      os << "arc " << L.arc << " lift " << word_to_string(L.word) << " ends off the domain boundary";
      fail(Errc::InvalidArgument, os.str());
    }
    out.c.pos[e] = pos;
  }
  for (int e = 0; e < 2; ++e) {
    const K2 here{out.c.klein[e][0], out.c.klein[e][1]};
    const K2 there{out.c.klein[1 - e][0], out.c.klein[1 - e][1]};
    const int i = F.side_of(out.c.pos[e]);
    const K2 dside = sub(F.v[(i + 1) % F.n], F.v[i]);
    const K2 d = sub(there, here);
    out.c.angle[e] = std::atan2(cross2(dside, d), dside[0] * d[0] + dside[1] * d[1]);
  }
  return true;
}

struct ChordSet {
  std::vector<Chord> chords;
  int window = 0;
};

// Chase every lift that meets the domain, starting from the foot of each arc and
// following it across paired sides.
ChordSet collect_chords(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs) {
  for (const auto& a : arcs) check_arc(s, a);
  const Frame F(s);
  ChordSet out;
  for (int ai = 0; ai < int(arcs.size()); ++ai) {
    const ArcEndpoint& foot = arcs[ai].end;
    std::set<Word> seen;
    std::deque<Word> todo{reduce(inverse(foot.word))};
    seen.insert(todo.front());
    bool first = true;
    while (!todo.empty()) {
      const Word w = todo.front();
      todo.pop_front();
      RawChord rc;
      if (!clip(F, lift_arc(s, arcs, ai, w), rc)) {
        if (first) fail(Errc::InvalidArgument, "arc " + std::to_string(ai) + " does not enter the surface");
        continue;
      }
      first = false;
      out.window = std::max(out.window, int(w.size()));
      for (int e = 0; e < 2; ++e) {
        const double pos = rc.c.pos[e];
        if (!rc.clipped[e]) continue;
        if (F.is_vertex(pos)) fail(Errc::InvalidArgument, "arc passes through a domain vertex");
        const DomainSide& side = s.domain.sides[F.side_of(pos)];
        if (side.kind == SideKind::Boundary) {
          fail(Errc::InvalidArgument, "arc " + std::to_string(ai) + " meets the boundary away from its feet");
        }
        // Across a target side lies rho(g) F, so the continuation in F is g^-1 . lift.
        const int letter = side.generator + 1;
        const Word next = reduce(concat(Word{side.target ? -letter : letter}, w));
        if (seen.insert(next).second) todo.push_back(next);
      }
      out.chords.push_back(rc.c);
      if (int(out.chords.size()) > kMaxChords) fail(Errc::InvalidArgument, "too many arc lifts meet the domain");
    }
  }
  return out;
}

struct Event {
  int chord, end;
  double pos, angle;
};

std::vector<Event> sorted_events(const std::vector<Chord>& chords) {
  std::vector<Event> ev;
  for (int c = 0; c < int(chords.size()); ++c)
    for (int e = 0; e < 2; ++e) ev.push_back({c, e, chords[c].pos[e], chords[c].angle[e]});
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.angle > b.angle;
  });
  return ev;
}

std::string describe(const Chord& c) {
  return "arc " + std::to_string(c.arc) + " lift " + word_to_string(c.word);
}

DisjointnessReport disjoint_from(const DecoratedSurface& s, const ChordSet& cs) {
  DisjointnessReport r;
  r.window = cs.window;
  r.chords = int(cs.chords.size());
  const auto ev = sorted_events(cs.chords);
  const int m = int(ev.size());
  std::vector<std::array<int, 2>> rank(cs.chords.size());
  for (int k = 0; k < m; ++k) rank[ev[k].chord][ev[k].end] = k;

  auto flag = [&](int a, int b, const char* how) {
    if (!r.disjoint) return;
    r.disjoint = false;
    r.witness = describe(cs.chords[a]) + " " + how + " " + describe(cs.chords[b]);
  };
  // Shared boundary points: only ideal vertices may be shared, at distinct angles.
  for (int k = 0; k + 1 < m; ++k) {
    for (int l = k + 1; l < m && ev[l].pos - ev[k].pos < kSnap; ++l) {
      if (ev[k].chord == ev[l].chord) continue;
      const double pos = ev[k].pos;
      const bool ideal_vertex = pos == std::floor(pos) && s.domain.ideal(std::size_t(pos));
      if (!ideal_vertex || ev[k].pos != ev[l].pos) flag(ev[k].chord, ev[l].chord, "touches");
      else if (std::abs(ev[k].angle - ev[l].angle) < 1e-9) flag(ev[k].chord, ev[l].chord, "coincides with");
    }
  }
  for (int a = 0; a < int(cs.chords.size()); ++a) {
    const int a0 = std::min(rank[a][0], rank[a][1]), a1 = std::max(rank[a][0], rank[a][1]);
    for (int b = a + 1; b < int(cs.chords.size()); ++b) {
      const int b0 = rank[b][0], b1 = rank[b][1];
      const bool in0 = a0 < b0 && b0 < a1, in1 = a0 < b1 && b1 < a1;
      if (in0 != in1) flag(a, b, "crosses");
    }
  }
  return r;
}

}  // namespace

DisjointnessReport check_disjoint(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs) {
  return disjoint_from(s, collect_chords(s, arcs));
}

bool pairwise_disjoint(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs) {
  return check_disjoint(s, arcs).disjoint;
}

Tiling tiles(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs) {
  ChordSet cs = collect_chords(s, arcs);
  const DisjointnessReport dr = disjoint_from(s, cs);
  if (!dr.disjoint) fail(Errc::ArcsCross, dr.witness);

  const Frame F(s);
  const int n = F.n;
  Tiling T;
  T.window = cs.window;
  T.chords = std::move(cs.chords);
  const auto ev = sorted_events(T.chords);
  const int m = int(ev.size());

  // Face walk: perimeter interval k runs from event k to event k+1.
  if (m == 0) {
    Piece p;
    p.intervals.push_back({0.0, double(n)});
    T.pieces.push_back(p);
  } else {
    std::vector<std::array<int, 2>> rank(T.chords.size());
    for (int k = 0; k < m; ++k) rank[ev[k].chord][ev[k].end] = k;
    std::vector<int> face_of(m, -1);
    for (int start = 0; start < m; ++start) {
      if (face_of[start] >= 0) continue;
      const int id = int(T.pieces.size());
      Piece p;
      int k = start;
      do {
        face_of[k] = id;
        const int k1 = (k + 1) % m;
        double to = ev[k1].pos;
        if (k1 == 0) to += n;
        p.intervals.push_back({ev[k].pos, to});
        const Event& arrive = ev[k1];
        // The face lies left of the chord walked from `arrive.end` to the other end.
        T.chords[arrive.chord].piece[arrive.end] = id;
        p.chords.push_back(arrive.chord);
        k = rank[arrive.chord][1 - arrive.end];
      } while (k != start);
      T.pieces.push_back(p);
    }
  }

  // Sample points, ideal vertices.
  for (Piece& p : T.pieces) {
    std::vector<K2> poly;
    std::set<int> ideal;
    for (const auto& iv : p.intervals) {
      poly.push_back(F.at(iv.from));
      for (int j = int(std::ceil(iv.from)); j <= int(std::floor(iv.to)); ++j) {
        const int v = j % n;
        if (j > iv.from && j < iv.to) poly.push_back(F.v[v]);
        if (s.domain.ideal(v)) ideal.insert(v);
      }
      poly.push_back(F.at(iv.to));
    }
    K2 c{0, 0};
    for (const auto& q : poly) c = {c[0] + q[0], c[1] + q[1]};
    p.sample = from_klein(c[0] / poly.size(), c[1] / poly.size()).v;
    p.ideal_vertices.assign(ideal.begin(), ideal.end());
  }

  // Gluing across paired sides: piece -> (neighbour, word) with neighbour offset = offset * word.
  auto piece_at = [&](double pos) {
    for (int pi = 0; pi < int(T.pieces.size()); ++pi)
      for (const auto& iv : T.pieces[pi].intervals)
        for (double shift : {0.0, double(n)})
          if (iv.from < pos + shift && pos + shift < iv.to) return pi;
    fail(Errc::InvalidArgument, "no piece on a paired side");
  };
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    const DomainSide& si = s.domain.sides[i];
    if (si.kind != SideKind::Paired) continue;
    for (int j = 0; j < n; ++j) {
      const DomainSide& sj = s.domain.sides[j];
      if (j != i && sj.kind == SideKind::Paired && sj.generator == si.generator && sj.target != si.target) partner[i] = j;
    }
    if (partner[i] < 0) fail(Errc::BadGluing, "paired side without partner");
  }
  std::vector<std::vector<std::pair<int, Word>>> nbr(T.pieces.size());
  for (int pi = 0; pi < int(T.pieces.size()); ++pi) {
    for (const auto& iv : T.pieces[pi].intervals) {
      for (int i = 0; i < n; ++i) {
        if (s.domain.sides[i].kind != SideKind::Paired) continue;
        for (double shift : {0.0, double(n)}) {
          const double lo = std::max(iv.from, i + shift), hi = std::min(iv.to, i + 1 + shift);
          if (hi - lo < 1e-12) continue;
          const double tau = 0.5 * (lo + hi) - i - shift;
          const DomainSide& side = s.domain.sides[i];
          // Klein parameters are not preserved by isometries, so map the point itself.
          const Isometry g = s.generators[side.generator];
          const Vec21 img = act_point(side.target ? inverse(g) : g, domain_side_point(s.domain, i, tau));
          const double pos = F.position(to_klein(img));
          if (pos < 0 || F.side_of(pos) != partner[i]) fail(Errc::BadGluing, "side pairing misses its partner");
          const int letter = side.generator + 1;
          const int other = piece_at(pos);
          nbr[pi].push_back({other, Word{side.target ? letter : -letter}});
          if (side.target) T.gluings.push_back({pi, other, side.generator});
        }
      }
    }
  }

  for (int root = 0; root < int(T.pieces.size()); ++root) {
    if (T.pieces[root].tile >= 0) continue;
    const int tid = int(T.tiles.size());
    TileInfo tile;
    T.pieces[root].tile = tid;
    T.pieces[root].offset = {};
    std::deque<int> q{root};
    while (!q.empty()) {
      const int p = q.front();
      q.pop_front();
      tile.pieces.push_back(p);
      for (const auto& [r, w] : nbr[p]) {
        const Word off = reduce(concat(T.pieces[p].offset, w));
        if (T.pieces[r].tile < 0) {
          T.pieces[r].tile = tid;
          T.pieces[r].offset = off;
          q.push_back(r);
        } else if (T.pieces[r].offset != off) {
          tile.disk = false;  // the tile closes up with nontrivial holonomy
        }
      }
    }
    std::sort(tile.pieces.begin(), tile.pieces.end());
    std::set<std::pair<int, Word>> spikes;
    for (int p : tile.pieces)
      for (int v : T.pieces[p].ideal_vertices)
        spikes.insert({s.domain.vertex_spikes[v].spike,
                       reduce(concat(T.pieces[p].offset, s.domain.vertex_spikes[v].word))});
    tile.spikes.assign(spikes.begin(), spikes.end());
    T.tiles.push_back(tile);
  }

  T.adjacency.assign(arcs.size(), {});
  std::vector<std::map<std::pair<int, Word>, int>> sides(T.tiles.size());
  for (const Chord& c : T.chords) {
    for (int e = 0; e < 2; ++e) {
      const Piece& p = T.pieces[c.piece[e]];
      const auto key = std::make_pair(c.arc, reduce(concat(p.offset, c.word)));
      // an orientation-reversing offset swaps left and right
      const int side = s.holonomy(p.offset).det_sign > 0 ? e : 1 - e;
      auto [it, fresh] = sides[p.tile].emplace(key, side);
      if (!fresh && it->second != side) T.tiles[p.tile].disk = false;
    }
    T.adjacency[c.arc].push_back({T.pieces[c.piece[0]].tile, T.pieces[c.piece[1]].tile});
  }
  for (std::size_t t = 0; t < T.tiles.size(); ++t)
    for (const auto& [key, e] : sides[t]) T.tiles[t].internal_sides.push_back(key);
  return T;
}

bool is_filling(const Tiling& t) {
  return std::all_of(t.tiles.begin(), t.tiles.end(),
                     [](const TileInfo& x) { return x.disk && x.spikes.size() <= 1; });
}

bool is_filling(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs) { return is_filling(tiles(s, arcs)); }

TileTypeCounts tile_types(const Tiling& t) {
  TileTypeCounts c;
  for (const auto& tile : t.tiles) {
    switch (tile.internal_sides.size()) {
      case 0: {
        const bool triangle = t.tiles.size() == 1 && tile.disk && tile.spikes.size() == 3;
        if (!triangle) fail(Errc::InvalidArgument, "tile without internal sides outside the ideal triangle");
        ++c.zero;
        break;
      }
      case 1: ++c.one; break;
      case 2: ++c.two; break;
      case 3: ++c.three; break;
      default: ++c.more;
    }
  }
  return c;
}

PrunedPointReport validate_pruned_point(const DecoratedSurface& s, const WeightedArcFamily& x) {
  PrunedPointReport r;
  if (x.weights.size() != x.arcs.size()) {
    r.weights_positive = false;
    r.problems.push_back("weight count differs from arc count");
  }
  for (std::size_t i = 0; i < x.weights.size(); ++i) {
    if (!(x.weights[i] > 0)) {
      r.weights_positive = false;
      r.problems.push_back("weight " + std::to_string(i) + " is not positive");
    }
  }
  const double sum = std::accumulate(x.weights.begin(), x.weights.end(), 0.0);
  if (std::abs(sum - 1) > 1e-12) {
    r.weights_normalized = false;
    r.problems.push_back("weights sum to " + std::to_string(sum));
  }
  try {
    const auto d = check_disjoint(s, x.arcs);
    if (!d.disjoint) {
      r.disjoint = false;
      r.problems.push_back(d.witness);
    }
  } catch (const Error& e) {
    r.disjoint = false;
    r.problems.push_back(e.what());
  }
  if (!r.disjoint) {
    r.filling = false;
    return r;
  }
  const Tiling t = tiles(s, x.arcs);
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    const auto& tile = t.tiles[i];
    if (!tile.disk) {
      r.filling = false;
      r.problems.push_back("tile " + std::to_string(i) + " is not a disk");
    } else if (tile.spikes.size() > 1) {
      r.filling = false;
      r.problems.push_back("tile " + std::to_string(i) + " has " + std::to_string(tile.spikes.size()) + " spikes");
    }
  }
  return r;
}

namespace {

// Straight walk through domain translates; `from` lies in rho(start) F.
std::vector<Word> walk(const DecoratedSurface& s, const Vec21& from, const Vec21& to, Word start) {
  const Frame F(s);
  std::vector<Word> out{start};
  Word g = std::move(start);
  Vec21 e = from;
  for (int step = 0; step < 100000; ++step) {
    const Isometry h = s.holonomy(g);
    const Isometry hi = inverse(h);
    const auto A = to_klein(act_point(hi, e)), B = to_klein(act_point(hi, to));
    double t1 = 2;
    int exit = -1;
    for (int i = 0; i < F.n; ++i) {
      const double fa = F.side_fn(i, A), fb = F.side_fn(i, B);
      if (fb >= -1e-12) continue;
      const double t = fa <= 0 ? 0 : fa / (fa - fb);
      if (t < t1) {
        t1 = t;
        exit = i;
      }
    }
    if (exit < 0) return out;
    const DomainSide& side = s.domain.sides[exit];
    if (side.kind == SideKind::Boundary) fail(Errc::InvalidArgument, "segment leaves the surface");
    const K2 X{A[0] + t1 * (B[0] - A[0]), A[1] + t1 * (B[1] - A[1])};
    e = act_point(h, from_klein(X[0], X[1]).v);
    const int letter = side.generator + 1;
    g = reduce(concat(g, Word{side.target ? letter : -letter}));
    out.push_back(g);
  }
  fail(Errc::InvalidArgument, "domain walk did not terminate");
}

Vec21 domain_center(const DecoratedSurface& s) {
  double x = 0, y = 0;
  for (const auto& v : s.domain.vertices) {
    const auto k = to_klein(v);
    x += k[0];
    y += k[1];
  }
  const double n = double(s.domain.size());
  return from_klein(x / n, y / n).v;
}

}  // namespace

Word locate(const DecoratedSurface& s, const Vec21& p) { return walk(s, domain_center(s), p, {}).back(); }

std::vector<Word> domains_along(const DecoratedSurface& s, const Vec21& p, const Vec21& q) {
  return walk(s, p, q, locate(s, p));
}

int piece_at_vertex(const Tiling& t, int vertex) {
  for (int i = 0; i < int(t.pieces.size()); ++i) {
    const auto& iv = t.pieces[i].ideal_vertices;
    if (std::find(iv.begin(), iv.end(), vertex) != iv.end()) return i;
  }
  fail(Errc::SpikeNotFound, "no piece at vertex " + std::to_string(vertex));
}

}  // namespace dms
