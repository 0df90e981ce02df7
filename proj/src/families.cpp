#include <algorithm>
#include <cmath>

#include "dms/error.hpp"
#include "dms/surface.hpp"

namespace dms {

namespace {

double angle_of(const Vec21& v) {
  const auto k = to_klein(v);
  double a = std::atan2(k[1], k[0]);
  if (a < 0) a += 2 * M_PI;
  return a;
}

Isometry translation_along_x(double length) {
  const double a = std::exp(length / 2);
  return make_isometry({a, 0, 0, 1 / a});
}

Isometry glide_along_x(double length) {
  const double a = std::exp(length / 2);
  return make_isometry({a, 0, 0, -1 / a});
}

double scale_at(const std::vector<double>& scales, std::size_t i) {
  if (scales.empty()) return 1.0;
  if (i >= scales.size()) fail(Errc::InvalidArgument, "missing decoration scale");
  if (!(scales[i] > 0)) fail(Errc::NonPositiveScale, "decoration scale must be positive");
  return scales[i];
}

void check_fractions(const std::vector<double>& f, std::size_t expected, Errc code) {
  if (f.size() != expected) fail(code, "expected " + std::to_string(expected) + " spike fractions");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0 && f[i] < 1)) fail(code, "spike fractions must lie in (0,1)");
    if (i && !(f[i] > f[i - 1])) fail(code, "spike fractions must increase");
  }
}

// Evenly spaced defaults when the caller gave none.
std::vector<double> default_fractions(const std::vector<double>& f, int count) {
  if (!f.empty() || count <= 0) return f;
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) out.push_back(double(i) / (count + 1));
  return out;
}

// Foot of the perpendicular from an ideal point to the geodesic with dual n.
Vec21 perpendicular_foot(const Vec21& ideal, const Vec21& n) {
  const Vec21 m = mcross(ideal, n);
  return make_point(mcross(n, m)).v;
}

// Angle between a geodesic with dual m and the geodesic with dual n at their crossing.
double crossing_angle(const Vec21& m, const Vec21& n) {
  const double c = bilinear(unit(m), unit(n));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

DecoratedSurface build_ideal_polygon(const std::vector<Vec21>& pts) {
  if (pts.size() < 3) fail(Errc::TooFewPoints, "an ideal polygon needs at least 3 vertices");
  const std::size_t q = pts.size();
  double total = 0;
  for (std::size_t i = 0; i < q; ++i) {
    if (!is_future_lightlike(pts[i])) fail(Errc::BadOrder, "vertex " + std::to_string(i) + " is not future lightlike");
    double gap = angle_of(pts[(i + 1) % q]) - angle_of(pts[i]);
    if (gap < 0) gap += 2 * M_PI;
    if (!(gap > 1e-9)) fail(Errc::BadOrder, "repeated or unordered vertex");
    total += gap;
  }
  if (std::fabs(total - 2 * M_PI) > 1e-6) fail(Errc::BadOrder, "vertices are not in counterclockwise order");
  DecoratedSurface s;
  s.family = Family::IdealPolygon;
  s.orientable = true;
  s.genus_or_h = 0;
  s.peripherals = {{Word{}, int(q)}};
  for (std::size_t i = 0; i < q; ++i) {
    s.spikes.push_back({0, int(i), pts[i]});
    s.domain.vertices.push_back(normalize_ideal(pts[i]));
    s.domain.sides.push_back({SideKind::Boundary, -1, false});
    s.domain.vertex_spikes.push_back({int(i), {}});
  }
  return s;
}

DecoratedSurface build_crown(int q, double L, const CrownParams& p) {
  if (q < 1) fail(Errc::InvalidArgument, "a crown needs q >= 1");
  if (!(L > 0)) fail(Errc::NonPositiveLength, "translation length must be positive");
  if (!(p.first_angle > 0 && p.first_angle < M_PI)) fail(Errc::BadSpikeOrder, "x1 must lie above the axis");
  const std::vector<double> fr = default_fractions(p.fractions, q - 1);
  check_fractions(fr, std::size_t(q - 1), Errc::BadSpikeOrder);

  const Isometry g = translation_along_x(L);
  const Vec21 n{0, 1, 0};  // axis: the x-axis geodesic
  const Vec21 x1 = ideal_point(p.first_angle);
  const Vec21 gx1 = normalize_ideal(act_point(g, x1));
  const double a1 = p.first_angle, ag = angle_of(gx1);
  std::vector<Vec21> spikes{x1};
  for (double f : fr) spikes.push_back(ideal_point(a1 - f * (a1 - ag)));

  DecoratedSurface s;
  s.family = Family::Crown;
  s.orientable = true;
  s.genus_or_h = 0;
  s.generators = {g};
  s.peripherals = {{Word{1}, 0}, {Word{1}, q}};
  for (int k = 0; k < q; ++k) s.spikes.push_back({1, k, scale_at(p.scales, k) * spikes[k]});

  const Vec21 f1 = perpendicular_foot(x1, n);
  const Vec21 f2 = act_point(g, f1);
  Domain& d = s.domain;
  auto push = [&](const Vec21& v, DomainSide side, VertexSpike vs) {
    d.vertices.push_back(v);
    d.sides.push_back(side);
    d.vertex_spikes.push_back(std::move(vs));
  };
  push(x1, {SideKind::Paired, 0, false}, {0, {}});
  push(f1, {SideKind::Boundary, -1, false}, {-1, {}});
  push(f2, {SideKind::Paired, 0, true}, {-1, {}});
  push(gx1, {SideKind::Boundary, -1, false}, {0, {1}});
  for (int k = q - 1; k >= 1; --k) push(spikes[k], {SideKind::Boundary, -1, false}, {k, {}});
  return s;
}

DecoratedSurface build_spiked_annulus(int q1, int q2, const AnnulusParams& p) {
  if (q1 < 1 || q2 < 1) fail(Errc::InvalidArgument, "a spiked annulus needs q1, q2 >= 1");
  if (!(p.translation_length > 0)) fail(Errc::NonPositiveLength, "translation length must be positive");
  if (!(p.crossing_angle > 0 && p.crossing_angle < M_PI)) fail(Errc::BadGluing, "crossing angle must lie in (0, pi)");
  const std::vector<double> top = default_fractions(p.top_fractions, q1 - 1);
  const std::vector<double> bot = default_fractions(p.bottom_fractions, q2 - 1);
  check_fractions(top, std::size_t(q1 - 1), Errc::BadGluing);
  check_fractions(bot, std::size_t(q2 - 1), Errc::BadGluing);

  const double L = p.translation_length;
  const Isometry g = translation_along_x(L);
  const double s0 = -L / 2;
  const Vec21 P1{std::sinh(s0), 0, std::cosh(s0)};
  const Vec21 T{std::cosh(s0), 0, std::sinh(s0)};
  const Vec21 N{0, 1, 0};
  const Vec21 dir = std::cos(p.crossing_angle) * T + std::sin(p.crossing_angle) * N;
  const Vec21 upper = normalize_ideal(P1 + dir);  // x_{q1+1}
  const Vec21 lower = normalize_ideal(P1 - dir);  // x_{q1+2}
  const Vec21 x1 = normalize_ideal(act_point(g, upper));
  const Vec21 xq = normalize_ideal(act_point(g, lower));

  // equal crossing angles of l1 and l2 = g l1 with the axis
  const Vec21 m1 = mcross(upper, lower), m2 = mcross(x1, xq);
  if (std::fabs(crossing_angle(m1, N) - crossing_angle(m2, N)) > 1e-9) fail(Errc::BadGluing, "crossing angles differ");

  std::vector<Vec21> verts;  // counterclockwise x1 .. xq
  std::vector<VertexSpike> tags;
  verts.push_back(x1);
  tags.push_back({0, {}});
  const double at = angle_of(x1), au = angle_of(upper);
  for (int k = 0; k < q1 - 1; ++k) {
    verts.push_back(ideal_point(at + top[k] * (au - at)));
    tags.push_back({k + 1, {}});
  }
  verts.push_back(upper);
  tags.push_back({0, {-1}});
  verts.push_back(lower);
  tags.push_back({q1, {}});
  double al = angle_of(lower), aq = angle_of(xq);
  if (aq < al) aq += 2 * M_PI;
  for (int k = 0; k < q2 - 1; ++k) {
    verts.push_back(ideal_point(al + bot[k] * (aq - al)));
    tags.push_back({q1 + 1 + k, {}});
  }
  verts.push_back(xq);
  tags.push_back({q1, {1}});

  DecoratedSurface s;
  s.family = Family::SpikedAnnulus;
  s.orientable = true;
  s.genus_or_h = 0;
  s.generators = {g};
  s.peripherals = {{Word{1}, q1}, {Word{1}, q2}};
  // base lifts: spikes 0..q1-1 on top, q1..q1+q2-1 on the bottom
  std::vector<Vec21> base(q1 + q2);
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (tags[i].word.empty()) base[tags[i].spike] = verts[i];
  for (int k = 0; k < q1 + q2; ++k)
    s.spikes.push_back({k < q1 ? 0 : 1, k < q1 ? k : k - q1, scale_at(p.scales, k) * base[k]});

  const std::size_t n = verts.size();
  const std::size_t l1 = std::size_t(q1), l2 = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    DomainSide side{SideKind::Boundary, -1, false};
    if (i == l1) side = {SideKind::Paired, 0, false};
    if (i == l2) side = {SideKind::Paired, 0, true};
    s.domain.vertices.push_back(verts[i]);
    s.domain.sides.push_back(side);
    s.domain.vertex_spikes.push_back(tags[i]);
  }
  return s;
}

DecoratedSurface build_spiked_moebius(int q, const MoebiusParams& p) {
  if (q < 1) fail(Errc::InvalidArgument, "a spiked Moebius strip needs q >= 1");
  if (!(p.translation_length > 0)) fail(Errc::NonPositiveLength, "translation length must be positive");
  if (!(p.first_angle > 0 && p.first_angle < M_PI)) fail(Errc::BadGluing, "x1 must lie above the axis");
  const std::vector<double> fr = default_fractions(p.fractions, q - 1);
  check_fractions(fr, std::size_t(q - 1), Errc::BadGluing);

  const Isometry h = glide_along_x(p.translation_length);
  const Vec21 x1 = ideal_point(p.first_angle);
  const Vec21 x2 = normalize_ideal(act_point(h, x1));
  const Vec21 x3 = normalize_ideal(act_point(h, x2));
  // the axis meets l1 and l2 = h l1 at complementary angles
  const Vec21 N{0, 1, 0};
  const double t1 = crossing_angle(mcross(x1, x2), N), t2 = crossing_angle(mcross(x2, x3), N);
  if (std::fabs(t1 + t2 - M_PI) > 1e-9 && std::fabs(t1 - t2) > 1e-9) fail(Errc::BadGluing, "angles are not complementary");

  DecoratedSurface s;
  s.family = Family::SpikedMoebius;
  s.orientable = false;
  s.genus_or_h = 1;
  s.generators = {h};
  s.peripherals = {{Word{1, 1}, q}};
  s.spikes.push_back({0, 0, scale_at(p.scales, 0) * x1});
  Domain& d = s.domain;
  d.vertices = {x1, x2, x3};
  d.sides = {{SideKind::Paired, 0, false}, {SideKind::Paired, 0, true}, {SideKind::Boundary, -1, false}};
  d.vertex_spikes = {{0, {}}, {0, {1}}, {0, {1, 1}}};
  const double a3 = angle_of(x3), a1 = p.first_angle;
  for (int k = 0; k < q - 1; ++k) {
    const Vec21 y = ideal_point(a3 + fr[k] * (a1 - a3));
    s.spikes.push_back({0, k + 1, scale_at(p.scales, k + 1) * y});
    d.vertices.push_back(y);
    d.sides.push_back({SideKind::Boundary, -1, false});
    d.vertex_spikes.push_back({k + 1, {}});
  }
  return s;
}

}  // namespace dms
