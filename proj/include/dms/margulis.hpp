#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dms/strip.hpp"

namespace dms {

// <u(w), neutral_vector(rho(w))>; throws NotHyperbolic when rho(w) has no axis.
double margulis_invariant(const std::vector<Isometry>& gens, const std::vector<Vec21>& u, const Word& w);
double margulis_invariant(const DecoratedSurface& s, const std::vector<Vec21>& u, const Word& w);

// First variation of a horoball connection length under a tangent vector. The far end
// rho(w) v_j moves by mcross(u(w), .) plus the transported motion of v_j.
double dl_connection(const DecoratedSurface& s, const TangentVector& t, const HoroballConnection& c);

struct AdmissibleWitness {
  bool closed = true;
  Word word;
  int spike_from = -1, spike_to = -1;  // connections only
  double length = 0, dl = 0, ratio = 0;
  std::string describe() const;
};

struct AdmissibleReport {
  int word_cutoff = 0;
  double length_cutoff = 0, epsilon = 0;
  int closed_checked = 0, connections_checked = 0;
  std::optional<AdmissibleWitness> closed_min, connection_min;
  // first failure in enumeration order (shortest word first)
  std::optional<AdmissibleWitness> shortest_failure;
  bool pass = false;
  double min_ratio() const;
  // never claims more than the cutoffs allow
  std::string verdict() const;
};

// Closed geodesics up to word_cutoff are scored by dl / l, horoball connections up to
// (word_cutoff, length_cutoff) by dl / l, or by dl itself when l <= 0. Passes when every
// score is at least epsilon.
AdmissibleReport admissible_check(const DecoratedSurface& s, const TangentVector& t, int word_cutoff,
                                  double length_cutoff, double epsilon);

enum class SignCensus { AllPositive, AllNegative, MixedWitness };
const char* sign_census_name(SignCensus c);

struct OppositeSignReport {
  SignCensus verdict = SignCensus::AllPositive;
  int classes = 0;  // hyperbolic conjugacy classes examined
  double min_alpha = 0, max_alpha = 0;
  Word min_word, max_word;  // witnesses of the extremes; a mixed census has min <= 0 <= max
};

// Sign census of the Margulis invariant over conjugacy representatives of reduced words up to
// word_cutoff. Classes without an axis are skipped. |alpha| <= tol counts against both
// AllPositive and AllNegative.
OppositeSignReport opposite_sign_check(const std::vector<Isometry>& gens, const std::vector<Vec21>& u,
                                       int word_cutoff, double tol = 1e-12);

}  // namespace dms
