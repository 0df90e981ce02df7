#include "dms/margulis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "dms/error.hpp"
#include "dms/sweep.hpp"

namespace dms {

double margulis_invariant(const std::vector<Isometry>& gens, const std::vector<Vec21>& u, const Word& w) {
  if (u.size() != gens.size()) fail(Errc::InvalidArgument, "cocycle needs one vector per generator");
  // conjugation invariant; dropping the conjugator avoids cancelling huge terms
  const Word c = cyclic_reduce(w);
  const Isometry A = evaluate(gens, c);
  const IsometryClass k = classify_isometry(A);
  if (k != IsometryClass::Hyperbolic && k != IsometryClass::GlideReflection)
    fail(Errc::NotHyperbolic, "rho(" + word_to_string(w) + ") is " + isometry_class_name(k));
  return bilinear(evaluate_cocycle(gens, u, c), neutral_vector(A));
}

double margulis_invariant(const DecoratedSurface& s, const std::vector<Vec21>& u, const Word& w) {
  return margulis_invariant(s.generators, u, w);
}

double dl_connection(const DecoratedSurface& s, const TangentVector& t, const HoroballConnection& c) {
  if (int(t.spike_motion.size()) != s.spike_count() || int(t.cocycle.size()) != s.rank())
    fail(Errc::MismatchedSurface, "tangent vector does not match the surface");
  const Isometry A = s.holonomy(c.word);
  const Vec21 v1 = s.spikes.at(c.spike_from).v;
  const Vec21 v2 = act_point(A, s.spikes.at(c.spike_to).v);
  const Vec21 d1 = t.spike_motion[c.spike_from];
  const Vec21 d2 = mcross(evaluate_cocycle(s.generators, t.cocycle, c.word), v2) + act_point(A, t.spike_motion[c.spike_to]);
  return (bilinear(d1, v2) + bilinear(v1, d2)) / bilinear(v1, v2);
}

std::string AdmissibleWitness::describe() const {
  std::ostringstream os;
  if (closed)
    os << "closed " << word_to_string(word);
  else
    os << "connection " << spike_from << "->" << spike_to << " " << word_to_string(word);
  os << " l=" << length << " dl=" << dl << " score=" << ratio;
  return os.str();
}

double AdmissibleReport::min_ratio() const {
  double r = std::numeric_limits<double>::infinity();
  if (closed_min) r = std::min(r, closed_min->ratio);
  if (connection_min) r = std::min(r, connection_min->ratio);
  return r;
}

std::string AdmissibleReport::verdict() const {
  std::ostringstream os;
  os << (pass ? "admissible up to cutoffs" : "not admissible") << " (words <= " << word_cutoff
     << ", connection length <= " << length_cutoff << ", epsilon = " << epsilon << ")";
  return os.str();
}

AdmissibleReport admissible_check(const DecoratedSurface& s, const TangentVector& t, int word_cutoff,
                                  double length_cutoff, double epsilon) {
  if (word_cutoff < 1) fail(Errc::InvalidArgument, "word cutoff must be >= 1");
  if (!(epsilon > 0)) fail(Errc::InvalidArgument, "epsilon must be positive");
  if (int(t.spike_motion.size()) != s.spike_count() || int(t.cocycle.size()) != s.rank())
    fail(Errc::MismatchedSurface, "tangent vector does not match the surface");
  AdmissibleReport rep;
  rep.word_cutoff = word_cutoff;
  rep.length_cutoff = length_cutoff;
  rep.epsilon = epsilon;

  auto consider = [&](const AdmissibleWitness& w, std::optional<AdmissibleWitness>& slot) {
    if (!slot || w.ratio < slot->ratio) slot = w;
    if (w.ratio < epsilon && !rep.shortest_failure) rep.shortest_failure = w;
  };

  if (s.rank() > 0) {
    const auto closed = enumerate_closed_geodesics(s, word_cutoff);
    const auto dl = parallel_map<double>(int(closed.size()), [&](int i) {
      try {
        return margulis_invariant(s.generators, t.cocycle, closed[i].word);
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    });
    for (std::size_t i = 0; i < closed.size(); ++i) {
      if (std::isnan(dl[i])) fail(Errc::NotHyperbolic, "closed word " + word_to_string(closed[i].word) + " has no axis");
      AdmissibleWitness w;
      w.word = closed[i].word;
      w.length = closed[i].length;
      w.dl = dl[i];
      w.ratio = dl[i] / closed[i].length;
      consider(w, rep.closed_min);
    }
    rep.closed_checked = int(closed.size());
  }
  if (s.spike_count() > 0) {
    const auto conns = enumerate_horoball_connections(s, word_cutoff, length_cutoff);
    const auto dl = parallel_map<double>(int(conns.size()), [&](int i) { return dl_connection(s, t, conns[i]); });
    for (std::size_t i = 0; i < conns.size(); ++i) {
      AdmissibleWitness w;
      w.closed = false;
      w.word = conns[i].word;
      w.spike_from = conns[i].spike_from;
      w.spike_to = conns[i].spike_to;
      w.length = conns[i].length;
      w.dl = dl[i];
      w.ratio = w.length > 0 ? dl[i] / w.length : dl[i];
      consider(w, rep.connection_min);
    }
    rep.connections_checked = int(conns.size());
  }
  rep.pass = !rep.shortest_failure && (rep.closed_checked + rep.connections_checked) > 0;
  return rep;
}

const char* sign_census_name(SignCensus c) {
  switch (c) {
    case SignCensus::AllPositive: return "AllPositive";
    case SignCensus::AllNegative: return "AllNegative";
    case SignCensus::MixedWitness: return "MixedWitness";
  }
  return "?";
}

OppositeSignReport opposite_sign_check(const std::vector<Isometry>& gens, const std::vector<Vec21>& u,
                                       int word_cutoff, double tol) {
  if (word_cutoff < 1) fail(Errc::InvalidArgument, "word cutoff must be >= 1");
  if (u.size() != gens.size()) fail(Errc::InvalidArgument, "cocycle needs one vector per generator");
  std::set<Word, decltype(&word_less)> reps(&word_less);
  for (const Word& w : reduced_words(int(gens.size()), word_cutoff)) {
    if (cyclic_reduce(w).size() != w.size()) continue;
    const IsometryClass k = classify_isometry(evaluate(gens, w));
    if (k == IsometryClass::Hyperbolic || k == IsometryClass::GlideReflection) reps.insert(conjugacy_rep(w));
  }
  const std::vector<Word> words(reps.begin(), reps.end());
  const auto alpha = parallel_map<double>(int(words.size()), [&](int i) {
    return bilinear(evaluate_cocycle(gens, u, words[i]), neutral_vector(evaluate(gens, words[i])));
  });

  OppositeSignReport rep;
  rep.classes = int(words.size());
  if (words.empty()) fail(Errc::InvalidArgument, "no hyperbolic classes up to the cutoff");
  const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
  rep.min_alpha = *lo;
  rep.max_alpha = *hi;
  rep.min_word = words[lo - alpha.begin()];
  rep.max_word = words[hi - alpha.begin()];
  if (rep.min_alpha > tol)
    rep.verdict = SignCensus::AllPositive;
  else if (rep.max_alpha < -tol)
    rep.verdict = SignCensus::AllNegative;
  else
    rep.verdict = SignCensus::MixedWitness;
  return rep;
}

}  // namespace dms
