#include "dms/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dms/error.hpp"

namespace dms {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// SVG has y pointing down
std::string pt(const std::array<double, 2>& k) { return num(k[0]) + "," + num(-k[1]); }

std::string line(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::string& style) {
  return "  <line x1=\"" + num(a[0]) + "\" y1=\"" + num(-a[1]) + "\" x2=\"" + num(b[0]) + "\" y2=\"" + num(-b[1]) +
         "\" " + style + "/>\n";
}

}  // namespace

std::vector<std::array<double, 2>> horocycle_klein(const Vec21& v0, int points) {
  if (!is_future_lightlike(v0)) fail(Errc::NonLightlike, "horocycle needs a future lightlike vector");
  if (points < 3) fail(Errc::InvalidArgument, "horocycle needs at least 3 points");
  // point of the horocycle on the geodesic from the origin toward [v]: <p, v> = -v.z e^-r
  const double r = std::log(v0.z);
  const Vec21 u{v0.x / v0.z, v0.y / v0.z, 0};
  const Vec21 p0 = std::cosh(r) * Vec21{0, 0, 1} + std::sinh(r) * u;
  std::vector<std::array<double, 2>> out;
  out.reserve(points);
  for (int k = 1; k < points; ++k) {
    const double t = std::tan(M_PI * (double(k) / points - 0.5));
    out.push_back(to_klein(act_point(killing_flow(v0, t), p0)));
  }
  out.push_back(to_klein(v0));
  return out;
}

std::string render_klein(const DecoratedSurface& s, const std::vector<GeodesicArc>& arcs, const RenderOptions& opt) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.pixels << "\" height=\"" << opt.pixels
    << "\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
  o << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.006\"/>\n";

  if (opt.axes) {
    for (std::size_t g = 0; g < s.generators.size(); ++g) {
      const IsometryClass k = classify_isometry(s.generators[g]);
      if (k != IsometryClass::Hyperbolic && k != IsometryClass::GlideReflection) continue;
      const Geodesic a = axis(s.generators[g]);
      o << line(to_klein(a.vminus), to_klein(a.vplus),
                "stroke=\"#888888\" stroke-width=\"0.004\" stroke-dasharray=\"0.02,0.015\" class=\"axis\"");
    }
  }

  // fundamental domain: boundary sides solid, paired sides dashed
  const std::size_t n = s.domain.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = to_klein(s.domain.vertices[i]), b = to_klein(s.domain.vertices[(i + 1) % n]);
    const bool paired = s.domain.sides[i].kind == SideKind::Paired;
    o << line(a, b,
              paired ? "stroke=\"#2b8c3e\" stroke-width=\"0.005\" stroke-dasharray=\"0.03,0.01\" class=\"paired\""
                     : "stroke=\"black\" stroke-width=\"0.007\" class=\"boundary\"");
  }

  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const ArcLift l = lift_arc(s, arcs, int(k), {});
    const bool e2e = arcs[k].kind == ArcKind::EdgeToEdge;
    o << line(to_klein(l.a), to_klein(l.b),
              std::string("stroke=\"") + (e2e ? "#1f4fbf" : "#c8321e") +
                  "\" stroke-width=\"0.006\" class=\"arc " + arc_kind_name(arcs[k].kind) + "\"");
  }

  if (opt.horoballs) {
    for (const auto& sp : s.spikes) {
      o << "  <polygon points=\"";
      const auto h = horocycle_klein(sp.v);
      for (std::size_t k = 0; k < h.size(); ++k) o << (k ? " " : "") << pt(h[k]);
      o << "\" fill=\"#f2c14e\" fill-opacity=\"0.35\" stroke=\"#b8860b\" stroke-width=\"0.003\" class=\"horoball\"/>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace dms
