#pragma once

#include <string>
#include <vector>

#include "dms/isometry.hpp"

namespace dms {

// Letters are +-(k+1) for generator k; negative means inverse.
using Word = std::vector<int>;

Word reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word cyclic_reduce(const Word& w);
// Letter order used for canonical representatives: 1 < -1 < 2 < -2 < ...
bool letter_less(int a, int b);
bool word_less(const Word& a, const Word& b);
// Least rotation of the cyclic reduction, merged with the class of the inverse.
Word conjugacy_rep(const Word& w);

// All reduced words of length 1..max_len (length-then-lex order).
std::vector<Word> reduced_words(int rank, int max_len);

std::string word_to_string(const Word& w);

Isometry evaluate(const std::vector<Isometry>& gens, const Word& w);

// u(ab) = u(a) + Ad(a) u(b); u(g^-1) = -Ad(g^-1) u(g)
Vec21 evaluate_cocycle(const std::vector<Isometry>& gens, const std::vector<Vec21>& u, const Word& w);

}  // namespace dms
