// dmsctl: strip deformations and decorated Margulis spacetimes from the command line.
// Exit codes: 0 pass, 2 verdict failure, 3 input error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "dms/bundled.hpp"
#include "dms/error.hpp"
#include "dms/io.hpp"
#include "dms/render.hpp"

using namespace dms;

namespace {

constexpr int kPass = 0, kVerdictFail = 2, kInputError = 3;

struct Config {
  std::string command;
  std::vector<std::string> inputs;
  int word_length = 3;
  double max_length = 6;
  double epsilon = 1e-6;
  double dt = 1e-3;
  unsigned seed = 1;
  int threads = 1;
  std::string output;

  Json echo() const {
    return {{"command", command}, {"inputs", inputs},     {"word_length", word_length}, {"max_length", max_length},
            {"epsilon", epsilon}, {"dt", dt},             {"seed", seed},               {"threads", threads}};
  }
};

void emit(const Config& c, const std::string& text) {
  if (c.output.empty())
    std::cout << text;
  else
    write_text_file(c.output, text);
}

DecoratedSurface load_surface(const std::string& path) {
  DecoratedSurface s = surface_from_document(read_json_file(path));
  require_valid(s);
  return s;
}

// Weights off the simplex are rescaled; the deformation is projective in them.
WeightedArcFamily load_arcs(const std::string& path) {
  WeightedArcFamily x = arcs_from_json(read_json_file(path));
  double sum = 0;
  for (double w : x.weights) sum += w;
  if (sum > 0 && std::fabs(sum - 1) > 1e-12) {
    std::cerr << "warning: weights sum to " << sum << ", normalizing\n";
    x = normalized(x);
  }
  return x;
}

int cmd_surface_build(const Config& c) {
  const DecoratedSurface s = surface_from_document(read_json_file(c.inputs.at(0)));
  const AuditReport r = audit_surface(s);
  if (!r.ok()) fail(Errc::InvariantViolation, r.failures());
  Json out = surface_to_json(s);
  out["audit"] = audit_to_json(r);
  emit(c, dump(out));
  return kPass;
}

int cmd_surface_audit(const Config& c) {
  const DecoratedSurface s = surface_from_document(read_json_file(c.inputs.at(0)));
  const AuditReport r = audit_surface(s);
  emit(c, dump({{"config", c.echo()}, {"audit", audit_to_json(r)}}));
  if (!r.ok()) std::cerr << r.failures() << "\n";
  return r.ok() ? kPass : kInputError;
}

int cmd_arcs_check(const Config& c) {
  const DecoratedSurface s = load_surface(c.inputs.at(0));
  const WeightedArcFamily x = arcs_from_json(read_json_file(c.inputs.at(1)));
  const PrunedPointReport r = validate_pruned_point(s, x);
  Json out{{"config", c.echo()},
           {"ok", r.ok()},
           {"weights_positive", r.weights_positive},
           {"weights_normalized", r.weights_normalized},
           {"disjoint", r.disjoint},
           {"filling", r.filling},
           {"problems", r.problems}};
  if (r.disjoint) {
    const Tiling t = tiles(s, x.arcs);
    Json tl = Json::array();
    for (const auto& tile : t.tiles) {
      Json spikes = Json::array();
      for (const auto& [i, w] : tile.spikes) spikes.push_back({{"spike", i}, {"word", w}});
      tl.push_back({{"pieces", tile.pieces}, {"internal_sides", tile.internal_sides.size()}, {"spikes", spikes},
                    {"disk", tile.disk}});
    }
    out["tiles"] = tl;
    out["window"] = t.window;
    out["deformation_dim"] = deformation_dim(s);
  }
  emit(c, dump(out));
  for (const auto& p : r.problems) std::cerr << p << "\n";
  return r.ok() ? kPass : kInputError;
}

int cmd_strip_map(const Config& c) {
  const DecoratedSurface s = load_surface(c.inputs.at(0));
  const WeightedArcFamily x = load_arcs(c.inputs.at(1));
  require_pruned(s, x);
  const Tiling t = tiles(s, x.arcs);
  const TileMap m = tile_map(s, t, x.arcs, x.weights, default_template(s, x.arcs));
  const TangentVector tv = tangent_from_map(s, t, m);
  // equivariance self-check: rho(g) carries the source piece next to the target piece, inside one tile
  double equivariance = 0;
  for (const auto& gl : t.gluings) {
    const Vec21 carried = tile_value_at(s, m, gl.source_piece, {gl.generator + 1});
    equivariance = std::max(equivariance, max_abs(carried - m.piece_value[gl.target_piece]));
  }
  Json out{{"config", c.echo()},
           {"tangent", tangent_to_json(tv, t.pieces.at(m.base_piece).tile)},
           {"tile_map", tile_map_to_json(m)},
           {"self_check", {{"gluing_residual", m.residual}, {"equivariance_residual", equivariance}}}};
  emit(c, dump(out));
  return kPass;
}

int cmd_admissible(const Config& c) {
  const DecoratedSurface s = load_surface(c.inputs.at(0));
  Json tj = read_json_file(c.inputs.at(1));
  // accept a bare tangent or the output of `strip map`
  if (tj.contains("tangent")) tj = tj.at("tangent");
  const TangentVector tv = tangent_from_json(tj);
  const AdmissibleReport r = admissible_check(s, tv, c.word_length, c.max_length, c.epsilon);
  emit(c, dump({{"config", c.echo()}, {"report", admissible_to_json(r)}}));
  std::cerr << r.verdict() << "\n";
  return r.pass ? kPass : kVerdictFail;
}

int cmd_margulis_fd(const Config& c) {
  const DecoratedSurface s = load_surface(c.inputs.at(0));
  const WeightedArcFamily x = load_arcs(c.inputs.at(1));
  const DecoratedSpacetime d = build_decorated_spacetime(s, x, c.word_length);
  Json out = spacetime_to_json(d);
  out["config"] = c.echo();
  emit(c, dump(out));
  return kPass;
}

double rel_err(double a, double b) {
  const double den = std::max(std::fabs(a), std::fabs(b));
  return den == 0 ? 0 : std::fabs(a - b) / den;
}

int cmd_verify_derivatives(const Config& c) {
  const DecoratedSurface s = load_surface(c.inputs.at(0));
  const WeightedArcFamily x = load_arcs(c.inputs.at(1));
  require_pruned(s, x);
  const Tiling t = tiles(s, x.arcs);
  const TileMap m = tile_map(s, t, x.arcs, x.weights, default_template(s, x.arcs));
  const double tol = 1e-6;
  Json closed = Json::array(), conns = Json::array();
  double worst = 0;
  for (const auto& g : enumerate_closed_geodesics(s, c.word_length)) {
    const double a = dl_closed_analytic(s, t, x.arcs, x.weights, default_template(s, x.arcs), g.word).value;
    const double f = dl_closed_fd(s, m.cocycle, g.word, c.dt);
    worst = std::max(worst, rel_err(a, f));
    closed.push_back({{"word", g.word}, {"length", g.length}, {"analytic", a}, {"fd", f}, {"rel_err", rel_err(a, f)}});
  }
  for (const auto& h : enumerate_horoball_connections(s, c.word_length, c.max_length)) {
    const double a = dl_horoball_analytic(s, t, m, h);
    const double f = dl_horoball_fd(s, t, m, h, c.dt);
    worst = std::max(worst, rel_err(a, f));
    conns.push_back({{"spike_from", h.spike_from}, {"spike_to", h.spike_to}, {"word", h.word}, {"length", h.length},
                     {"analytic", a}, {"fd", f}, {"rel_err", rel_err(a, f)}});
  }
  const bool pass = worst < tol;
  emit(c, dump({{"config", c.echo()},
                {"closed_geodesics", closed},
                {"horoball_connections", conns},
                {"max_rel_err", worst},
                {"tolerance", tol},
                {"pass", pass}}));
  return pass ? kPass : kVerdictFail;
}

int cmd_render(const Config& c) {
  const DecoratedSurface s = load_surface(c.inputs.at(0));
  std::vector<GeodesicArc> arcs;
  if (c.inputs.size() > 1 && !c.inputs[1].empty()) arcs = arcs_from_json(read_json_file(c.inputs[1])).arcs;
  for (const auto& a : arcs) check_arc(s, a);
  emit(c, render_klein(s, arcs));
  return kPass;
}

// Writes the bundled surfaces, their arc families and a few render recipes.
int cmd_examples_write(const Config& c) {
  const std::filesystem::path dir = c.inputs.at(0);
  std::filesystem::create_directories(dir);
  for (const auto& name : bundled_names()) {
    const BundledExample ex = bundled(name);
    write_text_file((dir / (name + ".json")).string(), dump(surface_to_json(ex.surface)));
    write_text_file((dir / (name + "_arcs.json")).string(), dump(arcs_to_json(ex.family)));
  }
  Json pts = Json::array();
  for (int k = 0; k < 5; ++k) pts.push_back(Json::array({std::cos(2 * M_PI * k / 5), std::sin(2 * M_PI * k / 5), 1.0}));
  write_text_file((dir / "ideal_pentagon_recipe.json").string(),
                  dump({{"construct", "ideal_polygon"}, {"ideal_points", pts}}));
  write_text_file((dir / "crown_2_recipe.json").string(),
                  dump({{"construct", "crown"}, {"q", 2}, {"translation_length", 2.0}, {"fractions", {0.5}}}));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strip deformations of decorated crowned surfaces and their Margulis spacetimes"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "output path (stdout if absent)");
    sub->add_option("--word-length", cfg.word_length, "word-length cutoff")->check(CLI::PositiveNumber);
    sub->add_option("--max-length", cfg.max_length, "metric length cutoff for horoball connections")
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", cfg.epsilon, "admissibility margin");
    sub->add_option("--dt", cfg.dt, "finite-difference step")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "recorded for reproducibility");
    sub->add_option("--threads", cfg.threads, "worker threads (1 is the reproducible mode)")
        ->check(CLI::PositiveNumber);
  };
  std::string in0, in1;
  auto one_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", in0, what)->required()->check(CLI::ExistingFile);
    common(sub);
  };
  auto two_inputs = [&](CLI::App* sub, const char* first, const char* second, bool second_required = true) {
    sub->add_option("input", in0, first)->required()->check(CLI::ExistingFile);
    auto* o = sub->add_option("second", in1, second)->check(CLI::ExistingFile);
    if (second_required) o->required();
    common(sub);
  };

  auto* surface = app.add_subcommand("surface", "build or audit a surface")->require_subcommand(1);
  auto* surface_build = surface->add_subcommand("build", "normalize a surface or recipe and embed its audit");
  one_input(surface_build, "surface or recipe JSON");
  auto* surface_audit = surface->add_subcommand("audit", "itemized invariant audit");
  one_input(surface_audit, "surface or recipe JSON");

  auto* arcs = app.add_subcommand("arcs", "arc families")->require_subcommand(1);
  auto* arcs_check = arcs->add_subcommand("check", "validate a pruned point and list its tiles");
  two_inputs(arcs_check, "surface JSON", "arc family JSON");

  auto* strip = app.add_subcommand("strip", "infinitesimal strip map")->require_subcommand(1);
  auto* strip_map_cmd = strip->add_subcommand("map", "tangent vector of a weighted arc family");
  two_inputs(strip_map_cmd, "surface JSON", "arc family JSON");

  auto* adm = app.add_subcommand("admissible", "admissible cone")->require_subcommand(1);
  auto* adm_check = adm->add_subcommand("check", "uniform lengthening up to the cutoffs");
  two_inputs(adm_check, "surface JSON", "tangent JSON (or strip map output)");

  auto* marg = app.add_subcommand("margulis", "decorated Margulis spacetime")->require_subcommand(1);
  auto* marg_fd = marg->add_subcommand("fd", "photons, crooked fundamental domain and checks");
  two_inputs(marg_fd, "surface JSON", "arc family JSON");

  auto* verify = app.add_subcommand("verify", "numerical verification")->require_subcommand(1);
  auto* verify_deriv = verify->add_subcommand("derivatives", "analytic vs finite-difference length derivatives");
  two_inputs(verify_deriv, "surface JSON", "arc family JSON");

  auto* render = app.add_subcommand("render", "figures")->require_subcommand(1);
  auto* render_klein_cmd = render->add_subcommand("klein", "Klein-disk SVG");
  two_inputs(render_klein_cmd, "surface JSON", "arc family JSON (optional)", false);

  auto* examples = app.add_subcommand("examples", "bundled data")->require_subcommand(1);
  auto* examples_write = examples->add_subcommand("write", "write the bundled surfaces and arc families");
  examples_write->add_option("dir", in0, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  cfg.inputs = {in0};
  if (!in1.empty()) cfg.inputs.push_back(in1);
#ifdef _OPENMP
  omp_set_num_threads(cfg.threads);
#endif

  struct Route {
    CLI::App* sub;
    const char* name;
    int (*run)(const Config&);
  };
  const Route routes[] = {{surface_build, "surface build", cmd_surface_build},
                          {surface_audit, "surface audit", cmd_surface_audit},
                          {arcs_check, "arcs check", cmd_arcs_check},
                          {strip_map_cmd, "strip map", cmd_strip_map},
                          {adm_check, "admissible check", cmd_admissible},
                          {marg_fd, "margulis fd", cmd_margulis_fd},
                          {verify_deriv, "verify derivatives", cmd_verify_derivatives},
                          {render_klein_cmd, "render klein", cmd_render},
                          {examples_write, "examples write", cmd_examples_write}};
  try {
    for (const auto& r : routes) {
      if (!r.sub->parsed()) continue;
      cfg.command = r.name;
      return r.run(cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::DisjointnessFailure ? kVerdictFail : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
