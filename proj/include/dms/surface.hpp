#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dms/hyperbolic.hpp"
#include "dms/isometry.hpp"
#include "dms/words.hpp"

namespace dms {

enum class Family { IdealPolygon, Crown, SpikedAnnulus, SpikedMoebius, Generic };
const char* family_name(Family f);
Family family_from_name(const std::string& s);

struct PeripheralStructure {
  Word loop;  // empty for the boundary of an ideal polygon
  int q = 0;  // spikes on this boundary component
};

struct SpikeDecoration {
  int peripheral_index = 0;
  int position_index = 0;
  Vec21 v;  // base lift: ideal point and horoball
};

enum class SideKind { Boundary, Paired };

// Side i of the fundamental domain runs from vertex i to vertex i+1 (counterclockwise).
// A paired side with target == false is mapped by its generator onto the partner side,
// and rho(g) F lies across the partner side.
struct DomainSide {
  SideKind kind = SideKind::Boundary;
  int generator = -1;
  bool target = false;
};

struct VertexSpike {
  int spike = -1;  // -1 for finite vertices
  Word word;       // vertex = rho(word) . base lift of the spike
};

struct Domain {
  std::vector<Vec21> vertices;  // hyperboloid points, or lightlike with z = 1
  std::vector<DomainSide> sides;
  std::vector<VertexSpike> vertex_spikes;

  std::size_t size() const { return vertices.size(); }
  bool ideal(std::size_t i) const { return vertex_spikes[i].spike >= 0; }
};

struct Tolerances {
  double lightlike = 1e-9;
  double geodesic = 1e-8;
  int check_word_length = 4;
};

struct DecoratedSurface {
  Family family = Family::Generic;
  bool orientable = true;
  int genus_or_h = 0;
  std::vector<Isometry> generators;
  std::vector<PeripheralStructure> peripherals;
  std::vector<SpikeDecoration> spikes;
  Domain domain;
  Tolerances tol;

  int rank() const { return int(generators.size()); }
  int spike_count() const { return int(spikes.size()); }
  Isometry holonomy(const Word& w) const { return evaluate(generators, w); }
  // Decoration of the lift rho(w) . spike i.
  Vec21 spike_lift(int i, const Word& w) const { return act_point(holonomy(w), spikes.at(i).v); }
};

struct AuditItem {
  std::string check;
  bool ok = true;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditItem> items;
  bool ok() const;
  std::string failures() const;
};

AuditReport audit_surface(const DecoratedSurface& s);
// Throws InvariantViolation with the itemized failures.
void require_valid(const DecoratedSurface& s);

struct ClosedGeodesic {
  Word word;
  double length = 0;
  bool unoriented = true;  // the class of w and of w^-1 share one entry
};

std::vector<ClosedGeodesic> enumerate_closed_geodesics(const DecoratedSurface& s, int max_word_len);

struct HoroballConnection {
  int spike_from = 0;
  int spike_to = 0;
  Word word;
  double length = 0;
};

Vec21 connection_far_end(const DecoratedSurface& s, const HoroballConnection& c);
double connection_length(const DecoratedSurface& s, int i, int j, const Word& w);

std::vector<HoroballConnection> enumerate_horoball_connections(const DecoratedSurface& s, int max_word_len,
                                                               double max_length);

int deformation_dim_formula(bool orientable, int genus_or_h, int n, int Q);
int deformation_dim(const DecoratedSurface& s);

DecoratedSurface rescale_decorations(const DecoratedSurface& s, double lambda);

// ---- constructors ----

DecoratedSurface build_ideal_polygon(const std::vector<Vec21>& ideal_points);

struct CrownParams {
  double first_angle = 2.2;         // Klein angle of x1, in (0, pi)
  std::vector<double> fractions;    // q-1 increasing values in (0,1): where x2..xq sit between x1 and g x1
  std::vector<double> scales;       // q decoration scales (default 1)
};
DecoratedSurface build_crown(int q, double translation_length, const CrownParams& p = {});

struct AnnulusParams {
  double translation_length = 2.0;
  double crossing_angle = 1.3;     // angle between l1 and the axis
  std::vector<double> top_fractions;     // q1-1 values in (0,1)
  std::vector<double> bottom_fractions;  // q2-1 values in (0,1)
  std::vector<double> scales;            // q1+q2 decoration scales
};
DecoratedSurface build_spiked_annulus(int q1, int q2, const AnnulusParams& p = {});

struct MoebiusParams {
  double translation_length = 1.2;  // of the glide reflection
  double first_angle = 2.0;         // Klein angle of x1, in (0, pi)
  std::vector<double> fractions;    // q-1 values in (0,1): extra spikes between x3 and x1
  std::vector<double> scales;       // q decoration scales
};
DecoratedSurface build_spiked_moebius(int q, const MoebiusParams& p = {});

// Klein-coordinate point at parameter t along side i of the domain.
Vec21 domain_side_point(const Domain& d, int side, double t);

}  // namespace dms
