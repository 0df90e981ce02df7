#include "dms/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "dms/error.hpp"

namespace dms {

const char* family_name(Family f) {
  switch (f) {
    case Family::IdealPolygon: return "ideal_polygon";
    case Family::Crown: return "crown";
    case Family::SpikedAnnulus: return "spiked_annulus";
    case Family::SpikedMoebius: return "spiked_moebius";
    case Family::Generic: return "generic";
  }
  return "generic";
}

Family family_from_name(const std::string& s) {
  for (Family f : {Family::IdealPolygon, Family::Crown, Family::SpikedAnnulus, Family::SpikedMoebius, Family::Generic})
    if (s == family_name(f)) return f;
  fail(Errc::ParseError, "unknown family '" + s + "'");
}

bool AuditReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.ok; });
}

std::string AuditReport::failures() const {
  std::ostringstream os;
  for (const auto& i : items)
    if (!i.ok) os << "[" << i.check << "] " << i.detail << "; ";
  return os.str();
}

Vec21 domain_side_point(const Domain& d, int side, double t) {
  const std::size_t n = d.size();
  const auto a = to_klein(d.vertices[side]);
  const auto b = to_klein(d.vertices[(side + 1) % n]);
  return from_klein((1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1]).v;
}

namespace {

double klein_gap(const Vec21& a, const Vec21& b) {
  const auto ka = to_klein(a), kb = to_klein(b);
  return std::hypot(ka[0] - kb[0], ka[1] - kb[1]);
}

void add(AuditReport& r, const std::string& check, bool ok, const std::string& detail = "") {
  r.items.push_back({check, ok, ok ? "" : detail});
}

// Signed side of p relative to the Klein line through a, b (positive = left).
double klein_side(const Vec21& a, const Vec21& b, const Vec21& p) {
  const auto ka = to_klein(a), kb = to_klein(b), kp = to_klein(p);
  return (kb[0] - ka[0]) * (kp[1] - ka[1]) - (kb[1] - ka[1]) * (kp[0] - ka[0]);
}

}  // namespace

AuditReport audit_surface(const DecoratedSurface& s) {
  AuditReport r;
  // generators
  {
    bool ok = true, any_glide = false;
    std::ostringstream os;
    for (int k = 0; k < s.rank(); ++k) {
      const IsometryClass c = classify_isometry(s.generators[k]);
      if (c == IsometryClass::GlideReflection) any_glide = true;
      if (c != IsometryClass::Hyperbolic && c != IsometryClass::GlideReflection) {
        ok = false;
        os << "g" << k << " is " << isometry_class_name(c) << ' ';
      }
      if (s.orientable && c == IsometryClass::GlideReflection) {
        ok = false;
        os << "g" << k << " reverses orientation on an orientable surface ";
      }
    }
    if (!s.orientable && s.rank() > 0 && !any_glide) {
      ok = false;
      os << "non-orientable surface without an orientation-reversing generator";
    }
    add(r, "generator_classes", ok, os.str());
  }
  // discreteness proxy
  {
    bool ok = true;
    std::string bad;
    for (const Word& w : reduced_words(s.rank(), s.tol.check_word_length)) {
      const IsometryClass c = classify_isometry(s.holonomy(w), 1e-9);
      if (c != IsometryClass::Hyperbolic && c != IsometryClass::GlideReflection) {
        ok = false;
        bad = word_to_string(w) + " is " + isometry_class_name(c);
        break;
      }
    }
    add(r, "words_hyperbolic", ok, bad);
  }
  // spikes
  {
    bool ok = true;
    for (const auto& sp : s.spikes)
      if (!is_future_lightlike(sp.v, s.tol.lightlike)) ok = false;
    add(r, "spikes_lightlike", ok, "spike decoration is not future lightlike");
    int total = 0;
    for (const auto& p : s.peripherals) total += p.q;
    add(r, "spike_count", total == s.spike_count(),
        "sum of q is " + std::to_string(total) + " but there are " + std::to_string(s.spike_count()) + " spikes");
  }
  // domain
  const Domain& d = s.domain;
  const std::size_t n = d.size();
  if (n < 3 || d.sides.size() != n || d.vertex_spikes.size() != n) {
    add(r, "domain_shape", false, "domain needs >= 3 vertices with matching side and vertex records");
    return r;
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec21& v = d.vertices[i];
      if (d.ideal(i)) ok = ok && is_future_lightlike(v, s.tol.lightlike);
      else ok = ok && std::fabs(norm2(v) + 1) < 1e-9 * (1 + v.z * v.z) && v.z > 0;
    }
    add(r, "domain_vertices", ok, "vertex not on the hyperboloid or light cone");
    bool convex = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!(klein_side(d.vertices[i], d.vertices[(i + 1) % n], d.vertices[(i + 2) % n]) > 1e-12)) convex = false;
    add(r, "domain_convex_ccw", convex, "domain is not strictly convex and counterclockwise");
  }
  {
    bool ok = true;
    std::string det;
    std::vector<bool> base(s.spike_count(), false);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexSpike& vs = d.vertex_spikes[i];
      if (vs.spike < 0) continue;
      if (vs.spike >= s.spike_count()) {
        ok = false;
        det = "vertex names an unknown spike";
        continue;
      }
      if (vs.word.empty()) base[vs.spike] = true;
      const Vec21 lift = normalize_ideal(s.spike_lift(vs.spike, vs.word));
      if (klein_gap(lift, d.vertices[i]) > 1e-9) {
        ok = false;
        det = "vertex " + std::to_string(i) + " does not match its spike lift";
      }
    }
    for (int k = 0; k < s.spike_count(); ++k)
      if (!base[k]) {
        ok = false;
        det = "spike " + std::to_string(k) + " has no base-lift vertex";
      }
    add(r, "vertex_spikes", ok, det);
  }
  {
    bool ok = true;
    std::string det;
    std::vector<int> src(s.rank(), -1), tgt(s.rank(), -1);
    for (std::size_t i = 0; i < n; ++i) {
      const DomainSide& sd = d.sides[i];
      if (sd.kind != SideKind::Paired) continue;
      if (sd.generator < 0 || sd.generator >= s.rank()) {
        ok = false;
        det = "side names an unknown generator";
        continue;
      }
      int& slot = sd.target ? tgt[sd.generator] : src[sd.generator];
      if (slot >= 0) {
        ok = false;
        det = "generator paired more than once";
      }
      slot = int(i);
    }
    Vec21 centroid;
    for (const auto& v : d.vertices) centroid += normalize_ideal(v);
    const Vec21 c = make_point(centroid).v;
    for (int k = 0; ok && k < s.rank(); ++k) {
      if (src[k] < 0 || tgt[k] < 0) {
        ok = false;
        det = "generator " + std::to_string(k) + " lacks a side pair";
        break;
      }
      const Isometry& g = s.generators[k];
      const std::size_t i = src[k], j = tgt[k];
      const Vec21 a0 = act_point(g, d.vertices[i]), a1 = act_point(g, d.vertices[(i + 1) % n]);
      const Vec21 b0 = d.vertices[j], b1 = d.vertices[(j + 1) % n];
      const bool pres = g.det_sign > 0;
      const double e = pres ? std::max(klein_gap(a0, b1), klein_gap(a1, b0)) : std::max(klein_gap(a0, b0), klein_gap(a1, b1));
      if (e > 1e-9) {
        ok = false;
        det = "generator " + std::to_string(k) + " does not carry its source side onto its target side";
      }
      const double here = klein_side(b0, b1, c), there = klein_side(b0, b1, act_point(g, c));
      if (!(here > 0 && there < 0)) {
        ok = false;
        det = "image of the domain under generator " + std::to_string(k) + " is not across its target side";
      }
    }
    add(r, "side_pairings", ok, det);
  }
  // spikes of a peripheral with a loop lie on one side of the loop's axis
  {
    bool ok = true;
    for (std::size_t pi = 0; pi < s.peripherals.size(); ++pi) {
      const auto& p = s.peripherals[pi];
      if (p.loop.empty() || p.q == 0) continue;
      const IsometryClass c = classify_isometry(s.holonomy(p.loop));
      if (c != IsometryClass::Hyperbolic) {
        ok = false;
        continue;
      }
      const Geodesic ax = axis(s.holonomy(p.loop));
      int sign = 0;
      for (const auto& sp : s.spikes) {
        if (sp.peripheral_index != int(pi)) continue;
        const double side = bilinear(normalize_ideal(sp.v), ax.n);
        const int sg = side > 0 ? 1 : -1;
        if (std::fabs(side) < 1e-12 || (sign != 0 && sg != sign)) ok = false;
        sign = sg;
      }
    }
    add(r, "spike_order", ok, "spikes of a crown are not on one side of its axis");
  }
  return r;
}

void require_valid(const DecoratedSurface& s) {
  const AuditReport r = audit_surface(s);
  if (!r.ok()) fail(Errc::InvariantViolation, r.failures());
}

std::vector<ClosedGeodesic> enumerate_closed_geodesics(const DecoratedSurface& s, int max_word_len) {
  if (max_word_len < 1) fail(Errc::InvalidArgument, "max_word_len must be >= 1");
  std::set<Word, decltype(&word_less)> reps(&word_less);
  for (const Word& w : reduced_words(s.rank(), max_word_len)) {
    const Word c = cyclic_reduce(w);
    if (c.size() != w.size()) continue;
    reps.insert(conjugacy_rep(w));
  }
  std::vector<ClosedGeodesic> out;
  for (const Word& w : reps) out.push_back({w, trace_length(s.holonomy(w)), true});
  std::stable_sort(out.begin(), out.end(), [](const ClosedGeodesic& a, const ClosedGeodesic& b) {
    if (a.length != b.length) return a.length < b.length;
    return word_less(a.word, b.word);
  });
  return out;
}

Vec21 connection_far_end(const DecoratedSurface& s, const HoroballConnection& c) {
  return s.spike_lift(c.spike_to, c.word);
}

double connection_length(const DecoratedSurface& s, int i, int j, const Word& w) {
  return horoball_connection_length({s.spikes.at(i).v}, {s.spike_lift(j, w)});
}

namespace {

bool connection_key_less(int i, int j, const Word& w, int i2, int j2, const Word& w2) {
  if (i != i2) return i < i2;
  if (j != j2) return j < j2;
  return word_less(w, w2);
}

}  // namespace

std::vector<HoroballConnection> enumerate_horoball_connections(const DecoratedSurface& s, int max_word_len,
                                                               double max_length) {
  if (s.spike_count() < 1) fail(Errc::InvalidArgument, "surface has no spikes");
  std::vector<Word> words{Word{}};
  const auto more = reduced_words(s.rank(), max_word_len);
  words.insert(words.end(), more.begin(), more.end());
  std::vector<HoroballConnection> out;
  const int Q = s.spike_count();
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j)
      for (const Word& w : words) {
        if (i == j && w.empty()) continue;
        const Word wi = inverse(w);
        if (connection_key_less(j, i, wi, i, j, w)) continue;
        const double l = connection_length(s, i, j, w);
        if (l <= max_length) out.push_back({i, j, w, l});
      }
  std::stable_sort(out.begin(), out.end(), [](const HoroballConnection& a, const HoroballConnection& b) {
    if (a.length != b.length) return a.length < b.length;
    return connection_key_less(a.spike_from, a.spike_to, a.word, b.spike_from, b.spike_to, b.word);
  });
  return out;
}

int deformation_dim_formula(bool orientable, int genus_or_h, int n, int Q) {
  return orientable ? 6 * genus_or_h - 6 + 3 * n + 2 * Q : 3 * genus_or_h - 6 + 3 * n + 2 * Q;
}

int deformation_dim(const DecoratedSurface& s) {
  return deformation_dim_formula(s.orientable, s.genus_or_h, int(s.peripherals.size()), s.spike_count());
}

DecoratedSurface rescale_decorations(const DecoratedSurface& s, double lambda) {
  if (!(lambda > 0)) fail(Errc::NonPositiveScale, "rescaling factor must be positive");
  DecoratedSurface out = s;
  for (auto& sp : out.spikes) sp.v = lambda * sp.v;
  return out;
}

}  // namespace dms
