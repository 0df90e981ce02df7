#include "dms/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "dms/error.hpp"

namespace dms {

Word reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(out);
}

Word cyclic_reduce(const Word& w0) {
  Word w = reduce(w0);
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  return Word(w.begin() + i, w.begin() + j);
}

bool letter_less(int a, int b) {
  if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
  return a > b;
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), letter_less);
}

namespace {

Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + r, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + r);
    if (word_less(rot, best)) best = rot;
  }
  return best;
}

}  // namespace

Word conjugacy_rep(const Word& w) {
  const Word c = cyclic_reduce(w);
  const Word a = least_rotation(c);
  const Word b = least_rotation(inverse(c));
  return word_less(b, a) ? b : a;
}

std::vector<Word> reduced_words(int rank, int max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  std::vector<int> letters;
  for (int k = 1; k <= rank; ++k) {
    letters.push_back(k);
    letters.push_back(-k);
  }
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (int l : letters) {
        if (!w.empty() && w.back() == -l) continue;
        Word x = w;
        x.push_back(l);
        next.push_back(std::move(x));
      }
    std::sort(next.begin(), next.end(), word_less);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    const int k = std::abs(w[i]) - 1;
    os << 'g' << k;
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

namespace {

void check_letter(int l, std::size_t rank) {
  if (l == 0 || std::size_t(std::abs(l)) > rank) fail(Errc::InvalidArgument, "word letter out of range");
}

}  // namespace

Isometry evaluate(const std::vector<Isometry>& gens, const Word& w) {
  Isometry acc = identity_isometry();
  for (int l : w) {
    check_letter(l, gens.size());
    const Isometry& g = gens[std::abs(l) - 1];
    acc = compose(acc, l > 0 ? g : inverse(g));
  }
  return acc;
}

Vec21 evaluate_cocycle(const std::vector<Isometry>& gens, const std::vector<Vec21>& u, const Word& w) {
  Isometry acc = identity_isometry();
  Vec21 val;
  for (int l : w) {
    check_letter(l, gens.size());
    const std::size_t k = std::abs(l) - 1;
    const Isometry g = l > 0 ? gens[k] : inverse(gens[k]);
    const Vec21 ug = l > 0 ? u.at(k) : -adjoint(g, u.at(k));
    val = val + adjoint(acc, ug);
    acc = compose(acc, g);
  }
  return val;
}

}  // namespace dms
