#include <algorithm>

#include "doctest.h"
#include "dms/bundled.hpp"
#include "dms/crooked.hpp"
#include "testing.hpp"

using namespace dms;
using namespace dms::testing;

namespace {

Vec21 random_spacelike(std::mt19937_64& rng) {
  for (;;) {
    const Vec21 v = random_vec(rng);
    if (norm2(v) > 0.1 * euclid_norm(v) * euclid_norm(v)) return unit(v);
  }
}

CrookedPlane random_plane(std::mt19937_64& rng) { return make_crooked_plane(random_vec(rng), random_spacelike(rng)); }

// Stem-quadrant generators orienting both stems from a toward b.
std::array<Vec21, 4> cone_generators(const CrookedPlane& a, const CrookedPlane& b) {
  const double s1 = std::copysign(1.0, bilinear(a.v, b.vplus + b.vminus));
  const double s2 = -std::copysign(1.0, bilinear(b.v, a.vplus + a.vminus));
  return {s1 * a.vplus, -s1 * a.vminus, s2 * b.vplus, -s2 * b.vminus};
}

TileMap map_of(const BundledExample& ex, const Tiling& t, double sign = 1) {
  auto w = ex.family.weights;
  for (auto& x : w) x *= sign;
  return tile_map(ex.surface, t, ex.family.arcs, w, default_template(ex.surface, ex.family.arcs));
}

}  // namespace

TEST_CASE("crooked plane frame") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const CrookedPlane p = random_plane(rng);
    CHECK(norm2(p.v) == doctest::Approx(1));
    for (const Vec21& x : {p.vplus, p.vminus}) {
      CHECK(is_future_lightlike(x));
      CHECK(x.z == doctest::Approx(1));
      CHECK(std::fabs(bilinear(x, p.v)) < 1e-12);
    }
    CHECK(det3(p.vplus, p.v, p.vminus) > 0);
    CHECK(std::abs(wing_sign(p)) == 1);
    CHECK(plane_distance(p, make_crooked_plane(p.w, -p.v)) < 1e-12);
  }
  CHECK(code_of([] { make_crooked_plane({0, 0, 0}, {0, 0, 1}); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_crooked_plane({0, 0, 0}, {1, 0, 1}); }) == Errc::InvalidArgument);
}

TEST_CASE("wing fields attract toward their null direction") {
  std::mt19937_64 rng(22);
  const Vec21 o{0, 0, 1};
  for (int trial = 0; trial < 50; ++trial) {
    const CrookedPlane p = make_crooked_plane({0, 0, 0}, random_spacelike(rng));
    const double ws = wing_sign(p);
    std::uniform_real_distribution<double> U(-1, 1), T(0.2, 1);
    const double s = U(rng), t = T(rng);
    const Vec21 kplus = s * p.vplus + t * ws * p.v;
    const Vec21 kminus = s * p.vminus - t * ws * p.v;
    const Vec21 far_plus = act_point(killing_flow(kplus, 20 / t), o);
    const Vec21 far_minus = act_point(killing_flow(kminus, 20 / t), o);
    CHECK(vdist(normalize_ideal((1 / far_plus.z) * far_plus), p.vplus) < 1e-6);
    CHECK(vdist(normalize_ideal((1 / far_minus.z) * far_minus), p.vminus) < 1e-6);
  }
}

TEST_CASE("stem quadrant membership") {
  const StemQuadrant sq = stem_quadrant(Vec21{1, 0, 0});
  const Vec21 x = 2.0 * sq.vplus - 3.0 * sq.vminus;
  CHECK(stem_quadrant_contains(sq, x));
  CHECK_FALSE(stem_quadrant_contains(sq, -x));
  CHECK_FALSE(stem_quadrant_contains(sq, 2.0 * sq.vplus + 3.0 * sq.vminus));
  CHECK_FALSE(stem_quadrant_contains(sq, {0, 0, 0}));
  CHECK(code_of([&] { stem_quadrant_contains(sq, {1, 0, 0}); }) == Errc::NotInPlane);
  // the quadrant is spacelike
  CHECK(norm2(x) > 0);
}

TEST_CASE("complement sides") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-2, 2), T(0.05, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const CrookedPlane p = random_plane(rng);
    const double ws = wing_sign(p);
    const double s = U(rng), t = T(rng), a = T(rng), b = T(rng);
    const Vec21 wing_plus = p.w + s * p.vplus + t * ws * p.v;
    const Vec21 wing_minus = p.w + s * p.vminus - t * ws * p.v;
    const Vec21 stem = p.w + a * p.vplus + b * p.vminus;
    for (const Vec21& q : {wing_plus, wing_minus, stem, p.w}) CHECK(crooked_side(p, q) == 0);
    const double e = 1e-3;
    CHECK(crooked_side(p, wing_plus + e * p.vminus) == -crooked_side(p, wing_plus - e * p.vminus));
    CHECK(crooked_side(p, wing_minus + e * p.vplus) == -crooked_side(p, wing_minus - e * p.vplus));
    CHECK(crooked_side(p, stem + e * p.v) == -crooked_side(p, stem - e * p.v));
    CHECK(crooked_side(p, stem + e * p.v) != 0);
    // far along a timelike direction both halves of the complement are reached
    const Vec21 up{0, 0, 1};
    CHECK(crooked_side(p, p.w + 50.0 * p.v + up) == -crooked_side(p, p.w - 50.0 * p.v + up));
  }
}

TEST_CASE("affine action on crooked planes") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const CrookedPlane p = random_plane(rng);
    const Isometry A = random_isometry(rng), B = random_isometry(rng);
    const Vec21 uA = random_vec(rng), uB = random_vec(rng);
    const CrookedPlane lhs = transform(A, uA, transform(B, uB, p));
    const CrookedPlane rhs = transform(compose(A, B), uA + adjoint(A, uB), p);
    CHECK(plane_distance(lhs, rhs) < 1e-8);
    const Vec21 x = random_vec(rng);
    CHECK(crooked_side(transform(A, uA, p), adjoint(A, x) + uA) == crooked_side(p, x));
  }
}

TEST_CASE("quadrant criterion agrees with the exact test") {
  std::mt19937_64 rng(25);
  int pairs = 0, agree_sampled = 0, disjoint = 0;
  while (pairs < 300) {
    const CrookedPlane a = random_plane(rng), b = random_plane(rng);
    const double ip = std::fabs(bilinear(a.v, b.v));
    if (ip <= 1) CHECK(code_of([&] { crooked_disjointness(a, b); }) == Errc::StemsCross);
    if (ip <= 1.05) continue;
    ++pairs;
    const auto r = crooked_disjointness(a, b);
    CHECK(r.quadrant == r.exact);
    // sampling can only miss slivers of intersection, so a sampled meeting is real
    if (!r.sampled) CHECK_FALSE(r.exact);
    agree_sampled += r.sampled == r.exact;
    disjoint += r.exact;
    CHECK(r.samples >= 1000);
    const auto rev = crooked_disjointness(b, a);
    CHECK(rev.quadrant == r.quadrant);
  }
  CHECK(disjoint > 20);
  CHECK(disjoint < 280);
  CHECK(agree_sampled >= 0.95 * pairs);
}

TEST_CASE("margin families are decided by every test") {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> C(0.2, 1);
  int done = 0;
  while (done < 100) {
    const CrookedPlane a = random_plane(rng);
    CrookedPlane b = make_crooked_plane({0, 0, 0}, random_spacelike(rng));
    if (std::fabs(bilinear(a.v, b.v)) < 1.2) continue;
    ++done;
    const auto g = cone_generators(a, b);
    Vec21 d{0, 0, 0};
    for (const auto& x : g) d = d + C(rng) * x;
    b.w = a.w + d;
    const auto in = crooked_disjointness(a, b);
    CHECK(in.quadrant);
    CHECK(in.sampled);
    CHECK(in.exact);
    CHECK(in.sample_separation > 0);
    CHECK(crooked_disjoint(a, b));
    b.w = a.w - d;
    const auto out = crooked_disjointness(a, b);
    CHECK_FALSE(out.quadrant);
    CHECK_FALSE(out.sampled);
    CHECK_FALSE(out.exact);
  }
}

TEST_CASE("degenerate plane pairs") {
  const CrookedPlane a = make_crooked_plane({0, 0, 0}, {1, 0, 0});
  const CrookedPlane b = make_crooked_plane({5, 0, 0}, {0, 1, 0});
  CHECK(code_of([&] { crooked_disjointness(a, b); }) == Errc::StemsCross);
  CHECK(code_of([&] { crooked_disjointness(a, a); }) == Errc::StemsCross);
  CHECK(crooked_intersect_exact(a, a));
  // a translate along the director keeps both wing planes, so the wings overlap
  const CrookedPlane c = make_crooked_plane({0.5, 0, 0}, {1, 0, 0});
  CHECK(crooked_intersect_exact(a, c));
  CHECK(code_of([&] { crooked_disjointness(a, c); }) == Errc::StemsCross);
}

TEST_CASE("crooked planes of arc lifts") {
  for (const auto& name : bundled_names()) {
    CAPTURE(name);
    const auto ex = bundled(name);
    const auto& arcs = ex.family.arcs;
    const Tiling t = tiles(ex.surface, arcs);
    const TileMap m = map_of(ex, t);
    for (const Chord& ch : t.chords) {
      if (arcs[ch.arc].kind != ArcKind::EdgeToEdge) {
        CHECK(code_of([&] { crooked_from_arc(ex.surface, t, arcs, m, ch.arc, ch.word); }) == Errc::NotEdgeToEdge);
        continue;
      }
      const CrookedPlane p = crooked_from_arc(ex.surface, t, arcs, m, ch.arc, ch.word);
      const Vec21 phi0 = m.piece_value[ch.piece[0]], phi1 = m.piece_value[ch.piece[1]];
      CHECK(vdist(p.w, 0.5 * (phi0 + phi1)) < 1e-10);
      CHECK(std::fabs(bilinear(p.v, lift_arc(ex.surface, arcs, ch.arc, ch.word).n)) == doctest::Approx(1));
      // orientation is fixed on the first chord of the arc; an orientation-reversing deck
      // element swaps the sides of later chords, and P(w, -v) is the same set
      const StemQuadrant sq = stem_quadrant(p.v);
      const bool first = &ch == &*std::find_if(t.chords.begin(), t.chords.end(),
                                               [&](const Chord& c) { return c.arc == ch.arc; });
      if (first)
        CHECK(stem_quadrant_contains(sq, phi1 - phi0));
      else
        CHECK((stem_quadrant_contains(sq, phi1 - phi0) || stem_quadrant_contains(sq, phi0 - phi1)));

      // equivariance under the deck group
      for (const Word& g : reduced_words(ex.surface.rank(), 3)) {
        const Word gw = reduce(concat(g, ch.word));
        const CrookedPlane q = crooked_from_arc(ex.surface, t, arcs, m, ch.arc, gw);
        const CrookedPlane r = transform(ex.surface.holonomy(g), evaluate_cocycle(ex.surface.generators, m.cocycle, g), p);
        const double scale = 1 + euclid_norm(q.w) + euclid_norm(q.v);
        CHECK(plane_distance(q, r) < 1e-12 * scale * scale);
      }
    }
    CHECK(code_of([&] { crooked_from_arc(ex.surface, t, arcs, m, int(arcs.size()), {}); }) == Errc::InvalidArgument);
  }
}

TEST_CASE("photon pairing examples") {
  const Photon a = make_photon({0, 0, 0}, {1, 0, 1});
  const Photon b = make_photon({-2, 0, 0}, {0, 1, 1});
  CHECK(photon_pairing(a, b) == doctest::Approx(2));
  CHECK(handedness(a, b) == 1);
  CHECK(handedness(b, a) == 1);
  const Photon a2{b.w, a.v0}, b2{a.w, b.v0};
  CHECK(handedness(a2, b2) == -1);
  const Vec21 shift{0.3, -7, 2};
  CHECK(photon_pairing(Photon{a.w + shift, a.v0}, Photon{b.w + shift, b.v0}) == doctest::Approx(2));
  // scaling the directions keeps the sign
  CHECK(handedness(Photon{a.w, 3.0 * a.v0}, b) == 1);

  const Photon c = make_photon({1, 1, 2}, {0, 1, 1});
  CHECK(photons_intersect(a, c));
  CHECK(code_of([&] { handedness(a, c); }) == Errc::IntersectingPhotons);

  const Photon along{a.w + 2.5 * a.v0, a.v0}, beside{a.w + Vec21{0, 1, 0}, a.v0};
  CHECK(photons_intersect(a, along));
  CHECK_FALSE(photons_intersect(a, beside));
  CHECK(code_of([&] { handedness(a, beside); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_photon({0, 0, 0}, {1, 0, 0}); }) == Errc::NonLightlike);
  CHECK(code_of([] { make_photon({0, 0, 0}, {1, 0, -1}); }) == Errc::NonLightlike);
}

TEST_CASE("relative motion closes the gap between two photons") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    const Photon a = make_photon(random_vec(rng), random_lightlike(rng));
    const Photon b = make_photon(random_vec(rng), random_lightlike(rng));
    const Vec21 r = relative_motion(a, b);
    CHECK(photons_intersect(a, Photon{b.w + r, b.v0}, 1e-9));
    // r is the shortest such correction: it is orthogonal to both directions
    CHECK(std::fabs(bilinear(r, a.v0)) < 1e-9 * (1 + euclid_norm(r)));
    CHECK(std::fabs(bilinear(r, b.v0)) < 1e-9 * (1 + euclid_norm(r)));
    const Photon moved = transform(random_isometry(rng), random_vec(rng), a);
    CHECK(is_future_lightlike(moved.v0));
  }
}

TEST_CASE("photons of spike lifts") {
  for (const auto& name : bundled_names()) {
    CAPTURE(name);
    const auto ex = bundled(name);
    const auto& s = ex.surface;
    const Tiling t = tiles(s, ex.family.arcs);
    const TileMap m = map_of(ex, t);
    // every domain vertex at a spike sees the same photon line
    for (std::size_t v = 0; v < s.domain.size(); ++v) {
      if (!s.domain.ideal(v)) continue;
      const auto& vs = s.domain.vertex_spikes[v];
      const Photon l = photon_from_spike(s, t, m, vs.spike, vs.word);
      CHECK(vdist(normalize_ideal(l.v0), normalize_ideal(s.domain.vertices[v])) < 1e-9);
      const Vec21 off = l.w - m.piece_value[piece_at_vertex(t, int(v))];
      CHECK(euclid_norm(mcross(off, l.v0)) < 1e-9 * (1 + euclid_norm(off)));
    }
    for (const auto& c : enumerate_horoball_connections(s, 3, 40)) {
      const Photon a = photon_from_spike(s, t, m, c.spike_from);
      const Photon b = photon_from_spike(s, t, m, c.spike_to, c.word);
      const double dl = dl_horoball_analytic(s, t, m, c);
      CHECK(photon_pairing(a, b) == doctest::Approx(dl * bilinear(a.v0, b.v0)).epsilon(1e-9).scale(1));
    }
    CHECK(code_of([&] { photon_from_spike(s, t, m, s.spike_count()); }) == Errc::SpikeNotFound);
  }
}

TEST_CASE("spacetime pipeline") {
  for (const auto& name : bundled_names()) {
    CAPTURE(name);
    const auto ex = bundled(name);
    const auto d = build_decorated_spacetime(ex.surface, ex.family);
    CHECK(int(d.photons.size()) == ex.surface.spike_count());
    CHECK(d.photon_census.sign() == -1);
    CHECK(d.photon_census.intersecting == 0);
    CHECK(d.photon_census.min_abs_pairing > 0);
    const auto& cc = d.crooked_census;
    CHECK(cc.disagreements == 0);
    CHECK(cc.disjoint + cc.stems_cross == cc.pairs);
    CHECK(cc.max_residual < 1e-9);
    for (const auto& p : d.crooked_fd) {
      CHECK(p.disjoint.quadrant);
      CHECK(p.disjoint.exact);
      CHECK(p.residual < 1e-9);
      const CrookedPlane moved = transform(ex.surface.holonomy(p.pairing),
                                           evaluate_cocycle(ex.surface.generators, d.cocycle, p.pairing), p.e);
      CHECK(plane_distance(moved, p.f) < 1e-9);
    }
    CHECK(d.region_tiles.size() == d.region_offsets.size());
    if (ex.surface.rank() > 0) {
      REQUIRE(d.opposite_sign);
      CHECK(d.opposite_sign->verdict == SignCensus::AllPositive);
      CHECK(d.crooked_fd.size() == 1);
    } else {
      CHECK_FALSE(d.opposite_sign);
      CHECK(d.crooked_fd.empty());
    }

    // the opposite cone flips every sign
    const Tiling t = tiles(ex.surface, ex.family.arcs);
    const auto n = assemble_spacetime(ex.surface, t, ex.family.arcs, map_of(ex, t, -1));
    CHECK(n.photon_census.sign() == 1);
    if (n.opposite_sign) CHECK(n.opposite_sign->verdict == SignCensus::AllNegative);
    for (const auto& p : n.crooked_fd) CHECK_FALSE(p.disjoint.exact);
  }
  const auto ex = bundled("crown_1");
  WeightedArcFamily bad = ex.family;
  bad.weights[0] = -bad.weights[0];
  CHECK(code_of([&] { build_decorated_spacetime(ex.surface, bad); }) == Errc::InvalidArgument);
}

TEST_CASE("tangent vector recovered from the spacetime") {
  for (const auto& name : bundled_names()) {
    CAPTURE(name);
    const auto ex = bundled(name);
    const auto& s = ex.surface;
    const auto d = build_decorated_spacetime(s, ex.family);
    const TangentVector tv = strip_map(s, ex.family);
    const TangentVector back = recover_tangent(d, s);
    for (int k = 0; k < s.rank(); ++k) CHECK(vdist(back.cocycle[k], tv.cocycle[k]) < 1e-10);
    for (int i = 0; i < s.spike_count(); ++i) CHECK(vdist(back.spike_motion[i], tv.spike_motion[i]) < 1e-10);

    auto slid = d;
    for (auto& l : slid.photons) l.w = l.w + 0.7 * l.v0;
    const TangentVector same = recover_tangent(slid, s);
    for (int i = 0; i < s.spike_count(); ++i) CHECK(vdist(same.spike_motion[i], tv.spike_motion[i]) < 1e-10);

    const Tiling t = tiles(s, ex.family.arcs);
    const auto n = assemble_spacetime(s, t, ex.family.arcs, map_of(ex, t, -1));
    const TangentVector neg = recover_tangent(n, s);
    for (int k = 0; k < s.rank(); ++k) CHECK(vdist(neg.cocycle[k], -tv.cocycle[k]) < 1e-10);
    for (int i = 0; i < s.spike_count(); ++i) CHECK(vdist(neg.spike_motion[i], -tv.spike_motion[i]) < 1e-10);

    auto missing = d;
    missing.photons.pop_back();
    CHECK(code_of([&] { recover_tangent(missing, s); }) == Errc::MismatchedSurface);
    auto turned = d;
    turned.photons[0].v0 = normalize_ideal(turned.photons[0].v0 + Vec21{0.3, 0, 0});
    turned.photons[0].v0 = unit(Vec21{turned.photons[0].v0.x, turned.photons[0].v0.y, 0});
    turned.photons[0].v0.z = 1;
    CHECK(code_of([&] { recover_tangent(turned, s); }) == Errc::MismatchedLinearPart);
    if (s.rank() > 0) {
      auto other = d;
      other.holonomy[0] = compose(other.holonomy[0], make_isometry({1.01, 0, 0, 1 / 1.01}));
      CHECK(code_of([&] { recover_tangent(other, s); }) == Errc::MismatchedLinearPart);
    }
  }
}
