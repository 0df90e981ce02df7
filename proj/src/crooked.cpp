#include "dms/crooked.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "dms/error.hpp"

namespace dms {

namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

Vec21 euclid_unit(const Vec21& v) { return v / euclid_norm(v); }

Vec21 to_z1(const Vec21& v) { return v / v.z; }

// max tau subject to rows[i].a . y + rows[i].b >= tau, |y_j| <= box, tau <= cap, with k <= 2
// unknowns y. Vertex enumeration is plenty for these sizes.
struct Row {
  double a[2] = {0, 0};
  double b = 0;
};

double max_min_slack(const std::vector<Row>& rows, int k, double box, double cap) {
  if (k == 0) {
    double t = cap;
    for (const Row& r : rows) t = std::min(t, r.b);
    return t;
  }
  // constraints g . z <= h with z = (y, tau)
  struct Half {
    double g[3];
    double h;
  };
  std::vector<Half> hs;
  for (const Row& r : rows) hs.push_back({{-r.a[0], -r.a[1], 1}, r.b});
  for (int j = 0; j < k; ++j) {
    Half up{{0, 0, 0}, box}, lo{{0, 0, 0}, box};
    up.g[j] = 1;
    lo.g[j] = -1;
    hs.push_back(up);
    hs.push_back(lo);
  }
  hs.push_back({{0, 0, 1}, cap});
  const int dim = k + 1;
  auto coef = [&](const Half& c, int j) { return j == k ? c.g[2] : c.g[j]; };
  double best = -std::numeric_limits<double>::infinity();
  const int n = int(hs.size());
  std::vector<int> pick(dim);
  std::function<void(int, int)> rec = [&](int from, int depth) {
    if (depth == dim) {
      Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
      Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
      for (int r = 0; r < dim; ++r) {
        for (int j = 0; j < dim; ++j) M(r, j) = coef(hs[pick[r]], j);
        rhs(r) = hs[pick[r]].h;
      }
      const auto sub = M.topLeftCorner(dim, dim);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      if (lu.rank() < dim) return;
      const Eigen::VectorXd z = lu.solve(rhs.head(dim));
      for (const Half& c : hs) {
        double v = 0;
        for (int j = 0; j < dim; ++j) v += coef(c, j) * z(j);
        if (v > c.h + 1e-9 * (1 + std::fabs(c.h))) return;
      }
      best = std::max(best, z(k));
      return;
    }
    for (int i = from; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// Solutions of M x = d as x0 + K y. Returns false when inconsistent.
bool affine_solutions(const Eigen::MatrixXd& M, const Eigen::VectorXd& d, Eigen::VectorXd& x0, Eigen::MatrixXd& K) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(1e-11);
  x0 = lu.solve(d);
  if ((M * x0 - d).norm() > 1e-9 * (1 + d.norm())) return false;
  K = lu.kernel();
  if (lu.rank() == M.cols()) K.resize(M.cols(), 0);
  for (int c = 0; c < K.cols(); ++c) K.col(c).normalize();
  return true;
}

// Convex piece o + s e1 + t e2 with t >= 0, and s >= 0 unless s_free.
struct PlanePiece {
  Vec21 o, e1, e2;
  bool s_free = false;
};

std::array<PlanePiece, 4> pieces(const CrookedPlane& p) {
  const double ws = wing_sign(p);
  const Vec21 vp = euclid_unit(p.vplus), vm = euclid_unit(p.vminus), v = euclid_unit(p.v);
  return {{{p.w, vp, vm, false}, {p.w, -vp, -vm, false}, {p.w, vp, ws * v, true}, {p.w, vm, -ws * v, true}}};
}

bool pieces_meet(const PlanePiece& P, const PlanePiece& Q, double tol) {
  Eigen::MatrixXd M(3, 4);
  const Vec21 cols[4] = {P.e1, P.e2, -Q.e1, -Q.e2};
  for (int j = 0; j < 4; ++j) {
    M(0, j) = cols[j].x;
    M(1, j) = cols[j].y;
    M(2, j) = cols[j].z;
  }
  const Vec21 dv = Q.o - P.o;
  Eigen::VectorXd d(3);
  d << dv.x, dv.y, dv.z;
  Eigen::VectorXd x0;
  Eigen::MatrixXd K;
  if (!affine_solutions(M, d, x0, K)) return false;
  if (K.cols() > 2) fail(Errc::InvalidArgument, "degenerate crooked plane pieces");
  const bool constrained[4] = {!P.s_free, true, !Q.s_free, true};
  std::vector<Row> rows;
  for (int i = 0; i < 4; ++i) {
    if (!constrained[i]) continue;
    Row r;
    for (int j = 0; j < K.cols(); ++j) r.a[j] = K(i, j);
    r.b = x0(i);
    rows.push_back(r);
  }
  const double scale = 1 + euclid_norm(dv);
  return max_min_slack(rows, int(K.cols()), 1e9 * scale, 1.0) >= -tol * scale;
}

// d in the open cone spanned by the generators.
bool in_open_cone(const std::vector<Vec21>& gens, const Vec21& d, double tol) {
  const int n = int(gens.size());
  Eigen::MatrixXd M(3, n);
  for (int j = 0; j < n; ++j) {
    const Vec21 g = euclid_unit(gens[j]);
    M(0, j) = g.x;
    M(1, j) = g.y;
    M(2, j) = g.z;
  }
  const double dn = euclid_norm(d);
  if (dn == 0) return false;
  const Vec21 du = d / dn;
  Eigen::VectorXd rhs(3);
  rhs << du.x, du.y, du.z;
  Eigen::VectorXd x0;
  Eigen::MatrixXd K;
  if (!affine_solutions(M, rhs, x0, K)) return false;
  if (K.cols() > 2) fail(Errc::InvalidArgument, "degenerate stem quadrants");
  std::vector<Row> rows(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < K.cols(); ++j) rows[i].a[j] = K(i, j);
    rows[i].b = x0(i);
  }
  return max_min_slack(rows, int(K.cols()), 1e6, 1e3) > tol;
}

// Radii linear up to 6 * scale, then logarithmic out to 1e4 * scale.
std::vector<double> sample_radii(int n, double scale) {
  std::vector<double> r;
  const int lin = n / 2;
  for (int i = 1; i <= lin; ++i) r.push_back(6 * scale * i / lin);
  for (int i = 1; i <= n - lin; ++i) r.push_back(6 * scale * std::pow(1e4 / 6, double(i) / (n - lin)));
  return r;
}

// Half of the budget goes on the two null creases where the stem meets the wings; thin
// intersections hug them. The rest covers the pieces, angles clustered toward their edges.
std::vector<Vec21> sample_plane(const CrookedPlane& p, int samples, double scale) {
  std::vector<Vec21> out{p.w};
  const int crease = std::max(2, samples / 8);
  for (double r : sample_radii(crease, scale))
    for (const Vec21& d : {p.vplus, p.vminus}) {
      const Vec21 e = euclid_unit(d);
      out.push_back(p.w + r * e);
      out.push_back(p.w - r * e);
    }
  const int per_piece = std::max(4, (samples - int(out.size())) / 4);
  const int n_ang = std::max(2, int(std::sqrt(per_piece / 2.0)));
  const int n_rad = std::max(2, per_piece / n_ang);
  const auto radii = sample_radii(n_rad, scale);
  for (const PlanePiece& q : pieces(p)) {
    const double span = q.s_free ? M_PI : M_PI / 2;
    for (double r : radii)
      for (int j = 0; j < n_ang; ++j) {
        const double a = span * (1 - std::cos(M_PI * (j + 0.5) / n_ang)) / 2;
        out.push_back(q.o + r * std::cos(a) * q.e1 + r * std::sin(a) * q.e2);
      }
  }
  return out;
}

// All samples strictly on one side of the other plane.
bool one_side(const std::vector<Vec21>& pts, const CrookedPlane& other) {
  int side = 0;
  for (const Vec21& x : pts) {
    const int s = crooked_side(other, x, 1e-10);
    if (s == 0) return false;
    if (side == 0) side = s;
    if (s != side) return false;
  }
  return true;
}

}  // namespace

CrookedPlane make_crooked_plane(const Vec21& w, const Vec21& v) {
  if (classify(v) != CausalClass::Spacelike) fail(Errc::InvalidArgument, "crooked plane director must be spacelike");
  const Vec21 e = unit(v);
  Vec21 t = Vec21{0, 0, 1} + e.z * e;
  t = t / mnorm(t);
  const Vec21 s = mcross(e, t);
  Vec21 p1 = to_z1(t + s), p2 = to_z1(t - s);
  if (det3(p1, e, p2) < 0) std::swap(p1, p2);
  return {w, e, p1, p2};
}

StemQuadrant stem_quadrant(const Vec21& v) {
  const CrookedPlane p = make_crooked_plane({0, 0, 0}, v);
  return {p.vplus, p.vminus};
}

bool stem_quadrant_contains(const StemQuadrant& sq, const Vec21& x, double tol) {
  const double k = bilinear(sq.vplus, sq.vminus);
  if (!(k < 0)) fail(Errc::InvalidArgument, "stem quadrant needs two distinct future lightlike vectors");
  const double a = bilinear(x, sq.vminus) / k;
  const double b = -bilinear(x, sq.vplus) / k;
  const Vec21 r = x - (a * sq.vplus - b * sq.vminus);
  const double scale = 1 + max_abs(x);
  if (max_abs(r) > tol * scale) fail(Errc::NotInPlane, "vector is not in the stem plane");
  return a > tol * scale && b > tol * scale;
}

int wing_sign(const CrookedPlane& p) {
  // eigenvalue of q -> mcross(v, q) on vplus; positive means [vplus] attracts
  return sgn(bilinear(mcross(p.v, p.vplus), p.vminus) / bilinear(p.vplus, p.vminus));
}

int crooked_side(const CrookedPlane& p, const Vec21& x, double tol) {
  const Vec21 d = x - p.w;
  const double k = bilinear(p.vplus, p.vminus);
  // d = a vplus + b vminus + c v, coefficients scaled by the Euclidean size of the basis
  const double a = bilinear(d, p.vminus) / k * euclid_norm(p.vplus);
  const double b = bilinear(d, p.vplus) / k * euclid_norm(p.vminus);
  const double c = wing_sign(p) * bilinear(d, p.v) * euclid_norm(p.v);
  const double eps = tol * (1 + euclid_norm(d));
  if (c > eps) return b < -eps ? 1 : (b > eps ? -1 : 0);
  if (c < -eps) return a > eps ? 1 : (a < -eps ? -1 : 0);
  if (a > eps && b < -eps) return 1;
  if (a < -eps && b > eps) return -1;
  return 0;
}

CrookedPlane transform(const Isometry& A, const Vec21& u, const CrookedPlane& p) {
  return make_crooked_plane(adjoint(A, p.w) + u, adjoint(A, p.v));
}

double plane_distance(const CrookedPlane& a, const CrookedPlane& b) {
  return max_abs(a.w - b.w) + std::min(max_abs(a.v - b.v), max_abs(a.v + b.v));
}

bool crooked_intersect_exact(const CrookedPlane& a, const CrookedPlane& b, double tol) {
  for (const auto& p : pieces(a))
    for (const auto& q : pieces(b))
      if (pieces_meet(p, q, tol)) return true;
  return false;
}

CrookedDisjointness crooked_disjointness(const CrookedPlane& a, const CrookedPlane& b, int samples) {
  if (std::fabs(bilinear(a.v, b.v)) <= 1 + 1e-9) fail(Errc::StemsCross, "stem geodesics meet");
  CrookedDisjointness r;
  // both stems transversely oriented from a toward b
  const int s1 = sgn(bilinear(a.v, b.vplus + b.vminus));
  const int s2 = -sgn(bilinear(b.v, a.vplus + a.vminus));
  const std::vector<Vec21> gens{s1 * a.vplus, -s1 * a.vminus, s2 * b.vplus, -s2 * b.vminus};
  r.quadrant = in_open_cone(gens, b.w - a.w, 1e-9);

  const double scale = 1 + euclid_norm(b.w - a.w);
  const auto pa = sample_plane(a, samples, scale), pb = sample_plane(b, samples, scale);
  r.samples = int(pa.size() + pb.size());
  double sep = std::numeric_limits<double>::infinity();
  for (const Vec21& x : pa)
    for (const Vec21& y : pb) sep = std::min(sep, euclid_norm(x - y));
  r.sample_separation = sep;
  r.sampled = sep > 0 && one_side(pa, b) && one_side(pb, a);
  r.exact = !crooked_intersect_exact(a, b);
  return r;
}

bool crooked_disjoint(const CrookedPlane& a, const CrookedPlane& b, int samples) {
  return crooked_disjointness(a, b, samples).quadrant;
}

CrookedPlane crooked_from_arc(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                              const TileMap& m, int arc, const Word& word) {
  if (arc < 0 || arc >= int(arcs.size())) fail(Errc::InvalidArgument, "arc index out of range");
  if (arcs[arc].kind != ArcKind::EdgeToEdge) fail(Errc::NotEdgeToEdge, "crooked planes need edge-to-edge arcs");
  const auto ch = std::find_if(t.chords.begin(), t.chords.end(), [&](const Chord& c) { return c.arc == arc; });
  if (ch == t.chords.end()) fail(Errc::InvalidArgument, "arc has no chord in the domain");
  const Word h = reduce(concat(word, inverse(ch->word)));
  const Vec21 phi1 = tile_value_at(s, m, ch->piece[0], h), phi2 = tile_value_at(s, m, ch->piece[1], h);
  CrookedPlane p = make_crooked_plane(0.5 * (phi1 + phi2), lift_arc(s, arcs, arc, word).n);
  const Vec21 jump = phi2 - phi1;
  const double k = bilinear(p.vplus, p.vminus);
  if (bilinear(jump, p.vminus) / k < 0) p = make_crooked_plane(p.w, -p.v);
  return p;
}

Photon make_photon(const Vec21& w, const Vec21& v0) {
  if (!is_future_lightlike(v0)) fail(Errc::NonLightlike, "photon direction must be future lightlike");
  return {w, v0};
}

Photon photon_from_spike(const DecoratedSurface& s, const Tiling& t, const TileMap& m, int spike, const Word& word) {
  if (spike < 0 || spike >= s.spike_count()) fail(Errc::SpikeNotFound, "no spike " + std::to_string(spike));
  const Photon base{spike_tile_value(s, t, m, spike), s.spikes[spike].v};
  if (word.empty()) return base;
  return transform(s.holonomy(word), evaluate_cocycle(s.generators, m.cocycle, word), base);
}

Photon transform(const Isometry& A, const Vec21& u, const Photon& l) {
  return {adjoint(A, l.w) + u, act_point(A, l.v0)};
}

double photon_pairing(const Photon& a, const Photon& b) { return bilinear(a.w - b.w, mcross(a.v0, b.v0)); }

namespace {

bool parallel(const Photon& a, const Photon& b) {
  return euclid_norm(mcross(a.v0, b.v0)) <= 1e-12 * euclid_norm(a.v0) * euclid_norm(b.v0);
}

}  // namespace

bool photons_intersect(const Photon& a, const Photon& b, double tol) {
  const Vec21 d = a.w - b.w;
  const double va = euclid_norm(a.v0), vb = euclid_norm(b.v0);
  if (parallel(a, b)) {
    // same direction: the offset must run along it
    const Vec21 c{d.y * a.v0.z - d.z * a.v0.y, d.z * a.v0.x - d.x * a.v0.z, d.x * a.v0.y - d.y * a.v0.x};
    return euclid_norm(c) <= tol * (1 + euclid_norm(d)) * va;
  }
  return std::fabs(photon_pairing(a, b)) <= tol * (1 + euclid_norm(d)) * va * vb;
}

int handedness(const Photon& a, const Photon& b, double tol) {
  if (parallel(a, b)) fail(Errc::InvalidArgument, "photons with parallel directions");
  if (photons_intersect(a, b, tol)) fail(Errc::IntersectingPhotons, "photons intersect");
  return sgn(photon_pairing(a, b));
}

Vec21 relative_motion(const Photon& a, const Photon& b) {
  const Vec21 c = mcross(a.v0, b.v0);
  return (photon_pairing(a, b) / norm2(c)) * c;
}

int PhotonCensus::sign() const {
  if (intersecting > 0 || (positive > 0 && negative > 0)) return 0;
  return positive > 0 ? 1 : (negative > 0 ? -1 : 0);
}

namespace {

struct SideRef {
  int tile;
  Word word;
};

// One lift of each tile, glued along a spanning tree of the arc graph. Spike-to-edge arcs are
// used as tree edges first so the leftover pairings are edge-to-edge where possible.
void place_tiles(const Tiling& t, const std::vector<GeodesicArc>& arcs, std::vector<int>& order,
                 std::vector<Word>& offsets, std::vector<int>& non_tree, std::vector<std::array<SideRef, 2>>& sides) {
  const int na = int(arcs.size()), nt = int(t.tiles.size());
  sides.assign(na, {SideRef{-1, {}}, SideRef{-1, {}}});
  std::vector<int> count(na, 0);
  for (int k = 0; k < nt; ++k)
    for (const auto& [a, w] : t.tiles[k].internal_sides) {
      if (count[a] >= 2) fail(Errc::InvariantViolation, "arc with more than two sides");
      sides[a][count[a]++] = {k, w};
    }
  for (int a = 0; a < na; ++a)
    if (count[a] != 2) fail(Errc::InvariantViolation, "arc without two sides");

  std::vector<int> by_kind(na);
  std::iota(by_kind.begin(), by_kind.end(), 0);
  std::stable_sort(by_kind.begin(), by_kind.end(), [&](int x, int y) {
    return (arcs[x].kind == ArcKind::SpikeToEdge) > (arcs[y].kind == ArcKind::SpikeToEdge);
  });
  std::vector<int> root(nt);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
  std::vector<bool> tree(na, false);
  for (int a : by_kind) {
    const int x = find(sides[a][0].tile), y = find(sides[a][1].tile);
    if (x == y) continue;
    root[x] = y;
    tree[a] = true;
  }
  for (int a = 0; a < na; ++a)
    if (!tree[a]) non_tree.push_back(a);

  offsets.assign(nt, {});
  std::vector<bool> placed(nt, false);
  placed[0] = true;
  order = {0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int k = order[i];
    for (int a = 0; a < na; ++a) {
      if (!tree[a]) continue;
      for (int side = 0; side < 2; ++side) {
        const SideRef& here = sides[a][side];
        const SideRef& there = sides[a][1 - side];
        if (here.tile != k || placed[there.tile]) continue;
        offsets[there.tile] = reduce(concat(concat(offsets[k], here.word), inverse(there.word)));
        placed[there.tile] = true;
        order.push_back(there.tile);
      }
    }
  }
  if (int(order.size()) != nt) fail(Errc::DisconnectedTiling, "tiles are not connected by arcs");
}

}  // namespace

DecoratedSpacetime assemble_spacetime(const DecoratedSurface& s, const Tiling& t, const std::vector<GeodesicArc>& arcs,
                                      const TileMap& m, int word_len) {
  DecoratedSpacetime d;
  d.holonomy = s.generators;
  d.cocycle = m.cocycle;
  for (int i = 0; i < s.spike_count(); ++i) d.photons.push_back(photon_from_spike(s, t, m, i));

  if (s.spike_count() > 0) {
    PhotonCensus& pc = d.photon_census;
    pc.min_abs_pairing = std::numeric_limits<double>::infinity();
    std::vector<std::string> pos, neg;
    for (const auto& c : enumerate_horoball_connections(s, word_len, std::numeric_limits<double>::infinity())) {
      const Photon a = d.photons[c.spike_from];
      const Photon b = photon_from_spike(s, t, m, c.spike_to, c.word);
      const double p = photon_pairing(a, b);
      const std::string name = std::to_string(c.spike_from) + "->" + std::to_string(c.spike_to) + " " + word_to_string(c.word);
      ++pc.pairs;
      pc.min_abs_pairing = std::min(pc.min_abs_pairing, std::fabs(p));
      if (photons_intersect(a, b)) {
        ++pc.intersecting;
        if (pc.witness.empty()) pc.witness = "intersecting " + name;
      } else if (p > 0) {
        ++pc.positive;
        pos.push_back(name);
      } else {
        ++pc.negative;
        neg.push_back(name);
      }
    }
    if (pc.witness.empty() && !pos.empty() && !neg.empty())
      pc.witness = "minority handedness " + (pos.size() < neg.size() ? pos.front() : neg.front());
  }

  std::vector<int> non_tree;
  std::vector<std::array<SideRef, 2>> sides;
  place_tiles(t, arcs, d.region_tiles, d.region_offsets, non_tree, sides);
  std::vector<Word> offsets = std::move(d.region_offsets);
  d.region_offsets.clear();
  for (int k : d.region_tiles) d.region_offsets.push_back(offsets[k]);

  // planes of the edge-to-edge sides of the placed tiles
  std::map<std::pair<int, Word>, int> seen;
  std::vector<std::pair<int, Word>> lifts;
  for (int k : d.region_tiles)
    for (const auto& [a, w] : t.tiles[k].internal_sides) {
      if (arcs[a].kind != ArcKind::EdgeToEdge) continue;
      const Word lw = reduce(concat(offsets[k], w));
      if (seen.emplace(std::make_pair(a, lw), int(lifts.size())).second) lifts.push_back({a, lw});
    }
  for (const auto& [a, w] : lifts) d.planes.push_back(crooked_from_arc(s, t, arcs, m, a, w));

  CrookedCensus& cc = d.crooked_census;
  for (std::size_t i = 0; i < d.planes.size(); ++i)
    for (std::size_t j = i + 1; j < d.planes.size(); ++j) {
      ++cc.pairs;
      try {
        const auto r = crooked_disjointness(d.planes[i], d.planes[j]);
        cc.disjoint += r.quadrant;
        cc.disagreements += !r.agree();
      } catch (const Error& e) {
        if (e.code() != Errc::StemsCross) throw;
        ++cc.stems_cross;
        cc.stems_cross_meeting += crooked_intersect_exact(d.planes[i], d.planes[j]);
      }
    }

  for (int a : non_tree) {
    if (arcs[a].kind != ArcKind::EdgeToEdge) continue;
    CrookedPairing p;
    p.arc = a;
    p.e_word = reduce(concat(offsets[sides[a][0].tile], sides[a][0].word));
    p.f_word = reduce(concat(offsets[sides[a][1].tile], sides[a][1].word));
    p.pairing = reduce(concat(p.f_word, inverse(p.e_word)));
    p.e = crooked_from_arc(s, t, arcs, m, a, p.e_word);
    p.f = crooked_from_arc(s, t, arcs, m, a, p.f_word);
    const Vec21 u = evaluate_cocycle(s.generators, m.cocycle, p.pairing);
    p.residual = plane_distance(transform(s.holonomy(p.pairing), u, p.e), p.f);
    cc.max_residual = std::max(cc.max_residual, p.residual);
    p.disjoint = crooked_disjointness(p.e, p.f);
    d.crooked_fd.push_back(p);
  }

  if (s.rank() > 0) d.opposite_sign = opposite_sign_check(s.generators, m.cocycle, 2 * word_len);
  return d;
}

DecoratedSpacetime build_decorated_spacetime(const DecoratedSurface& s, const WeightedArcFamily& x, int word_len) {
  require_pruned(s, x);
  const Tiling t = tiles(s, x.arcs);
  const TileMap m = tile_map(s, t, x.arcs, x.weights, default_template(s, x.arcs));
  DecoratedSpacetime d = assemble_spacetime(s, t, x.arcs, m, word_len);
  const PhotonCensus& pc = d.photon_census;
  if (s.spike_count() > 1 || pc.pairs > 0)
    if (pc.sign() == 0) fail(Errc::DisjointnessFailure, "photons: " + pc.witness);
  const CrookedCensus& cc = d.crooked_census;
  if (cc.disjoint + cc.stems_cross != cc.pairs) fail(Errc::DisjointnessFailure, "crooked planes meet");
  for (const auto& p : d.crooked_fd)
    if (!p.disjoint.quadrant) fail(Errc::DisjointnessFailure, "paired crooked planes meet");
  return d;
}

TangentVector recover_tangent(const DecoratedSpacetime& d, const DecoratedSurface& s) {
  if (int(d.photons.size()) != s.spike_count()) fail(Errc::MismatchedSurface, "one photon per spike expected");
  if (d.holonomy.size() != s.generators.size() || d.cocycle.size() != s.generators.size())
    fail(Errc::MismatchedLinearPart, "generator count differs");
  for (std::size_t k = 0; k < d.holonomy.size(); ++k)
    if (isometry_distance(d.holonomy[k], s.generators[k]) > 1e-9)
      fail(Errc::MismatchedLinearPart, "generator " + std::to_string(k) + " differs");
  TangentVector tv;
  tv.cocycle = d.cocycle;
  for (int i = 0; i < s.spike_count(); ++i) {
    const Vec21& v = s.spikes[i].v;
    if (euclid_norm(mcross(d.photons[i].v0, v)) > 1e-9 * euclid_norm(d.photons[i].v0) * euclid_norm(v))
      fail(Errc::MismatchedLinearPart, "photon " + std::to_string(i) + " is not along its spike");
    tv.spike_motion.push_back(mcross(d.photons[i].w, v));
  }
  return tv;
}

}  // namespace dms
