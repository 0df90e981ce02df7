#include "dms/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dms/bundled.hpp"
#include "dms/error.hpp"

namespace dms {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  fail(Errc::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get_as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    parse_fail(where, e.what());
  }
}

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
  return get_as<T>(field(j, key, where), where + "." + key);
}

template <class T>
T get_or(const Json& j, const char* key, T dflt, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  return get_as<T>(j.at(key), where + "." + key);
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) parse_fail(where + "." + key, "expected an array");
  return a;
}

Json word_json(const Word& w) { return Json(w); }

Word word_from(const Json& j, const std::string& where) {
  Word w = get_as<Word>(j, where);
  for (int l : w)
    if (l == 0) parse_fail(where, "letter 0 is not a generator");
  return w;
}

Json mat_json(const Mat2& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

Isometry isometry_from(const Json& j, const std::string& where) {
  const auto rows = get_as<std::vector<std::vector<double>>>(j, where);
  if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) parse_fail(where, "expected [[a,b],[c,d]]");
  const Mat2 m{rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
  // keep canonical matrices bit-for-bit so read -> write is stable
  const double det = m.det(), lead = m.a != 0.0 ? m.a : m.b;
  if (std::fabs(std::fabs(det) - 1) <= 1e-12 && lead > 0) return {m, det > 0 ? 1 : -1};
  try {
    return make_isometry(m);
  } catch (const Error& e) {
    parse_fail(where, e.what());
  }
}

Json endpoint_json(const ArcEndpoint& e) {
  Json j{{"spike", e.spike}, {"id", e.id}, {"word", word_json(e.word)}};
  if (!e.spike) j["t"] = e.t;
  return j;
}

ArcEndpoint endpoint_from(const Json& j, const std::string& where) {
  ArcEndpoint e;
  e.spike = get<bool>(j, "spike", where);
  e.id = get<int>(j, "id", where);
  e.word = word_from(field(j, "word", where), where + ".word");
  if (!e.spike) e.t = get<double>(j, "t", where);
  return e;
}

Json witness_json(const std::optional<AdmissibleWitness>& w) {
  if (!w) return nullptr;
  Json j{{"kind", w->closed ? "closed_geodesic" : "horoball_connection"},
         {"word", word_json(w->word)},
         {"length", w->length},
         {"dl", w->dl},
         {"ratio", w->ratio},
         {"description", w->describe()}};
  if (!w->closed) {
    j["spike_from"] = w->spike_from;
    j["spike_to"] = w->spike_to;
  }
  return j;
}

Json plane_json(const CrookedPlane& p) {
  return {{"w", vec_to_json(p.w)}, {"v", vec_to_json(p.v)}, {"vplus", vec_to_json(p.vplus)},
          {"vminus", vec_to_json(p.vminus)}};
}

std::string generator_name(int k) { return "g" + std::to_string(k); }

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) fail(Errc::InvalidArgument, "write failed: " + path);
}

Json vec_to_json(const Vec21& v) { return Json::array({v.x, v.y, v.z}); }

Vec21 vec_from_json(const Json& j) {
  const auto a = get_as<std::vector<double>>(j, "vector");
  if (a.size() != 3) parse_fail("vector", "expected [x, y, z]");
  return {a[0], a[1], a[2]};
}

Json surface_to_json(const DecoratedSurface& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(mat_json(g.m));
  Json per = Json::array();
  for (const auto& p : s.peripherals) per.push_back({{"loop", word_json(p.loop)}, {"q", p.q}});
  Json spikes = Json::array();
  for (const auto& sp : s.spikes)
    spikes.push_back({{"peripheral", sp.peripheral_index}, {"index", sp.position_index}, {"v", vec_to_json(sp.v)}});
  Json verts = Json::array(), sides = Json::array(), vs = Json::array();
  for (const auto& v : s.domain.vertices) verts.push_back(vec_to_json(v));
  for (const auto& sd : s.domain.sides) {
    if (sd.kind == SideKind::Boundary)
      sides.push_back({{"kind", "boundary"}});
    else
      sides.push_back({{"kind", "paired"}, {"generator", sd.generator}, {"target", sd.target}});
  }
  for (const auto& v : s.domain.vertex_spikes) vs.push_back({{"spike", v.spike}, {"word", word_json(v.word)}});
  return {{"family", family_name(s.family)},
          {"orientable", s.orientable},
          {"genus_or_h", s.genus_or_h},
          {"generators", gens},
          {"peripherals", per},
          {"spikes", spikes},
          {"domain", {{"vertices", verts}, {"sides", sides}, {"vertex_spikes", vs}}},
          {"tolerances",
           {{"lightlike", s.tol.lightlike},
            {"geodesic", s.tol.geodesic},
            {"check_word_length", s.tol.check_word_length}}}};
}

DecoratedSurface surface_from_json(const Json& j) {
  const std::string w = "surface";
  DecoratedSurface s;
  s.family = family_from_name(get_or<std::string>(j, "family", "generic", w));
  s.orientable = get<bool>(j, "orientable", w);
  s.genus_or_h = get_or<int>(j, "genus_or_h", 0, w);
  const Json& gens = array_field(j, "generators", w);
  for (std::size_t k = 0; k < gens.size(); ++k)
    s.generators.push_back(isometry_from(gens[k], w + ".generators[" + std::to_string(k) + "]"));
  for (const auto& p : array_field(j, "peripherals", w)) {
    const std::string pw = w + ".peripherals";
    s.peripherals.push_back({word_from(field(p, "loop", pw), pw + ".loop"), get<int>(p, "q", pw)});
  }
  for (const auto& sp : array_field(j, "spikes", w)) {
    const std::string sw = w + ".spikes";
    s.spikes.push_back({get<int>(sp, "peripheral", sw), get<int>(sp, "index", sw), vec_from_json(field(sp, "v", sw))});
  }
  const Json& d = field(j, "domain", w);
  const std::string dw = w + ".domain";
  for (const auto& v : array_field(d, "vertices", dw)) s.domain.vertices.push_back(vec_from_json(v));
  for (const auto& sd : array_field(d, "sides", dw)) {
    const auto kind = get<std::string>(sd, "kind", dw + ".sides");
    if (kind == "boundary") {
      s.domain.sides.push_back({});
    } else if (kind == "paired") {
      s.domain.sides.push_back(
          {SideKind::Paired, get<int>(sd, "generator", dw + ".sides"), get<bool>(sd, "target", dw + ".sides")});
    } else {
      parse_fail(dw + ".sides", "unknown side kind '" + kind + "'");
    }
  }
  for (const auto& v : array_field(d, "vertex_spikes", dw))
    s.domain.vertex_spikes.push_back(
        {get<int>(v, "spike", dw + ".vertex_spikes"), word_from(field(v, "word", dw), dw + ".vertex_spikes.word")});
  if (s.domain.sides.size() != s.domain.vertices.size() || s.domain.vertex_spikes.size() != s.domain.vertices.size())
    parse_fail(dw, "vertices, sides and vertex_spikes must have equal length");
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    s.tol.lightlike = get_or<double>(t, "lightlike", s.tol.lightlike, w + ".tolerances");
    s.tol.geodesic = get_or<double>(t, "geodesic", s.tol.geodesic, w + ".tolerances");
    s.tol.check_word_length = get_or<int>(t, "check_word_length", s.tol.check_word_length, w + ".tolerances");
  }
  return s;
}

DecoratedSurface surface_from_document(const Json& j) {
  if (!j.is_object() || !j.contains("construct")) return surface_from_json(j);
  const std::string w = "recipe";
  const auto kind = get<std::string>(j, "construct", w);
  auto list = [&](const char* key) { return get_or<std::vector<double>>(j, key, {}, w); };
  if (kind == "bundled") return bundled(get<std::string>(j, "name", w)).surface;
  if (kind == "ideal_polygon") {
    std::vector<Vec21> pts;
    for (const auto& v : array_field(j, "ideal_points", w)) pts.push_back(vec_from_json(v));
    return build_ideal_polygon(pts);
  }
  if (kind == "crown") {
    CrownParams p;
    p.first_angle = get_or<double>(j, "first_angle", p.first_angle, w);
    p.fractions = list("fractions");
    p.scales = list("scales");
    return build_crown(get<int>(j, "q", w), get<double>(j, "translation_length", w), p);
  }
  if (kind == "spiked_annulus") {
    AnnulusParams p;
    p.translation_length = get_or<double>(j, "translation_length", p.translation_length, w);
    p.crossing_angle = get_or<double>(j, "crossing_angle", p.crossing_angle, w);
    p.top_fractions = list("top_fractions");
    p.bottom_fractions = list("bottom_fractions");
    p.scales = list("scales");
    return build_spiked_annulus(get<int>(j, "q1", w), get<int>(j, "q2", w), p);
  }
  if (kind == "spiked_moebius") {
    MoebiusParams p;
    p.translation_length = get_or<double>(j, "translation_length", p.translation_length, w);
    p.first_angle = get_or<double>(j, "first_angle", p.first_angle, w);
    p.fractions = list("fractions");
    p.scales = list("scales");
    return build_spiked_moebius(get<int>(j, "q", w), p);
  }
  parse_fail(w, "unknown construction '" + kind + "'");
}

Json audit_to_json(const AuditReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items) items.push_back({{"check", i.check}, {"ok", i.ok}, {"detail", i.detail}});
  return {{"ok", r.ok()}, {"items", items}};
}

Json arcs_to_json(const WeightedArcFamily& x) {
  Json arcs = Json::array();
  for (const auto& a : x.arcs)
    arcs.push_back({{"kind", arc_kind_name(a.kind)}, {"start", endpoint_json(a.start)}, {"end", endpoint_json(a.end)}});
  return {{"arcs", arcs}, {"weights", x.weights}};
}

WeightedArcFamily arcs_from_json(const Json& j) {
  const std::string w = "arcs";
  WeightedArcFamily x;
  for (const auto& a : array_field(j, "arcs", w)) {
    GeodesicArc arc;
    const auto kind = get<std::string>(a, "kind", w);
    if (kind == arc_kind_name(ArcKind::EdgeToEdge))
      arc.kind = ArcKind::EdgeToEdge;
    else if (kind == arc_kind_name(ArcKind::SpikeToEdge))
      arc.kind = ArcKind::SpikeToEdge;
    else
      parse_fail(w, "unknown arc kind '" + kind + "'");
    arc.start = endpoint_from(field(a, "start", w), w + ".start");
    arc.end = endpoint_from(field(a, "end", w), w + ".end");
    x.arcs.push_back(arc);
  }
  x.weights = get<std::vector<double>>(j, "weights", w);
  if (x.weights.size() != x.arcs.size()) parse_fail(w, "one weight per arc expected");
  return x;
}

Json tangent_to_json(const TangentVector& t, int base_tile) {
  Json gens = Json::object(), motions = Json::array();
  for (std::size_t k = 0; k < t.cocycle.size(); ++k) gens[generator_name(int(k))] = vec_to_json(t.cocycle[k]);
  for (const auto& m : t.spike_motion) motions.push_back(vec_to_json(m));
  // horoball normalization <v, v'> = -2 at unit connection length; weights sum to 1
  return {{"generators", gens},
          {"spike_motions", motions},
          {"base_tile", base_tile},
          {"normalization", {{"c", -2}, {"sigma_c", 1}}}};
}

TangentVector tangent_from_json(const Json& j) {
  const std::string w = "tangent";
  TangentVector t;
  const Json& gens = field(j, "generators", w);
  if (!gens.is_object()) parse_fail(w + ".generators", "expected an object");
  t.cocycle.resize(gens.size());
  std::vector<bool> seen(gens.size(), false);
  for (auto it = gens.begin(); it != gens.end(); ++it) {
    const std::string& name = it.key();
    std::size_t k = 0;
    try {
      if (name.size() < 2 || name[0] != 'g') throw std::invalid_argument(name);
      k = std::stoul(name.substr(1));
    } catch (const std::exception&) {
      parse_fail(w + ".generators", "bad generator name '" + name + "'");
    }
    if (k >= gens.size() || seen[k]) parse_fail(w + ".generators", "generators must be g0..g" + std::to_string(gens.size() - 1));
    seen[k] = true;
    t.cocycle[k] = vec_from_json(it.value());
  }
  for (const auto& m : array_field(j, "spike_motions", w)) t.spike_motion.push_back(vec_from_json(m));
  return t;
}

Json tile_map_to_json(const TileMap& m) {
  auto vecs = [](const std::vector<Vec21>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(vec_to_json(x));
    return a;
  };
  return {{"base_piece", m.base_piece},
          {"piece_values", vecs(m.piece_value)},
          {"tile_values", vecs(m.tile_value)},
          {"chord_jumps", vecs(m.chord_jump)},
          {"gluing_residual", m.residual}};
}

Json admissible_to_json(const AdmissibleReport& r) {
  return {{"verdict", r.verdict()},
          {"pass", r.pass},
          {"cutoffs", {{"word_length", r.word_cutoff}, {"max_length", r.length_cutoff}, {"epsilon", r.epsilon}}},
          {"closed_checked", r.closed_checked},
          {"connections_checked", r.connections_checked},
          {"closed_min", witness_json(r.closed_min)},
          {"connection_min", witness_json(r.connection_min)},
          {"shortest_failure", witness_json(r.shortest_failure)}};
}

Json opposite_sign_to_json(const OppositeSignReport& r) {
  return {{"verdict", sign_census_name(r.verdict)},
          {"classes", r.classes},
          {"min_alpha", r.min_alpha},
          {"max_alpha", r.max_alpha},
          {"min_word", word_json(r.min_word)},
          {"max_word", word_json(r.max_word)}};
}

Json spacetime_to_json(const DecoratedSpacetime& d) {
  Json cocycle = Json::object();
  for (std::size_t k = 0; k < d.cocycle.size(); ++k) cocycle[generator_name(int(k))] = vec_to_json(d.cocycle[k]);
  Json photons = Json::array();
  for (const auto& l : d.photons) photons.push_back({{"w", vec_to_json(l.w)}, {"v0", vec_to_json(l.v0)}});

  // side pairings of the fundamental region: e and f = (rho, u)(pairing) . e
  Json planes = Json::array(), pairings = Json::array();
  for (const auto& p : d.crooked_fd) {
    const int i = int(planes.size());
    Json e = plane_json(p.e), f = plane_json(p.f);
    e["arc"] = f["arc"] = p.arc;
    e["paired_with"] = i + 1;
    f["paired_with"] = i;
    e["pairing_word"] = word_json(p.pairing);
    f["pairing_word"] = word_json(inverse(p.pairing));
    planes.push_back(e);
    planes.push_back(f);
    pairings.push_back({{"arc", p.arc},
                        {"pairing_word", word_json(p.pairing)},
                        {"residual", p.residual},
                        {"stem_quadrant", p.disjoint.quadrant},
                        {"sampled", p.disjoint.sampled},
                        {"exact", p.disjoint.exact},
                        {"sample_separation", p.disjoint.sample_separation}});
  }
  Json offsets = Json::array();
  for (const auto& w : d.region_offsets) offsets.push_back(word_json(w));

  const auto& pc = d.photon_census;
  const auto& cc = d.crooked_census;
  Json checks{{"handedness",
               {{"sign", pc.sign()},
                {"pairs", pc.pairs},
                {"positive", pc.positive},
                {"negative", pc.negative},
                {"intersecting", pc.intersecting},
                {"min_abs_pairing", pc.min_abs_pairing},
                {"witness", pc.witness}}},
              {"disjointness",
               {{"region_planes", d.planes.size()},
                {"pairs", cc.pairs},
                {"disjoint", cc.disjoint},
                {"disagreements", cc.disagreements},
                {"stems_cross", cc.stems_cross},
                {"stems_cross_meeting", cc.stems_cross_meeting},
                {"max_residual", cc.max_residual},
                {"side_pairings", pairings}}},
              {"opposite_sign", d.opposite_sign ? opposite_sign_to_json(*d.opposite_sign) : Json(nullptr)}};
  return {{"cocycle", cocycle},
          {"photons", photons},
          {"crooked_planes", planes},
          {"region", {{"tiles", d.region_tiles}, {"offsets", offsets}}},
          {"checks", checks}};
}

}  // namespace dms
