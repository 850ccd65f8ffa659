#pragma once

#include <random>
#include <string>
#include <vector>

#include "ulam/coloring.hpp"
#include "ulam/core.hpp"

namespace testutil {

// "BAC" -> permutation {1,0,2} over symbols A=0, B=1, C=2.
inline ulam::Permutation perm(const std::string& letters) {
  std::vector<int> seq;
  seq.reserve(letters.size());
  for (char ch : letters) seq.push_back(ch - 'A');
  return ulam::Permutation(std::move(seq));
}

inline std::string letters(const ulam::Permutation& p) {
  std::string out;
  for (int i = 0; i < p.size(); ++i)
    out.push_back(static_cast<char>('A' + p.at(i)));
  return out;
}

inline ulam::Permutation random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % (i + 1));
    std::swap(seq[i], seq[j]);
  }
  return ulam::Permutation(std::move(seq));
}

inline ulam::Instance random_instance(std::mt19937_64& rng, int max_n,
                                      int max_m, int max_k, int max_d) {
  int n = 2 + static_cast<int>(rng() % (max_n - 1));
  int m = 1 + static_cast<int>(rng() % max_m);
  ulam::Instance inst;
  inst.table = ulam::SymbolTable::lettered(n);
  inst.k = 1 + static_cast<int>(rng() % max_k);
  inst.d = static_cast<int>(rng() % (max_d + 1));
  for (int i = 0; i < m; ++i) inst.perms.push_back(random_perm(rng, n));
  return inst;
}

// Literal universality check: every pattern on every coordinate subset of
// size exactly b (and hence any smaller size) is realized by some member.
inline bool is_universal(const std::vector<ulam::ColoringPair>& family, int n,
                         int b) {
  int a = 2 * n;
  if (b > a) b = a;
  auto member_bits = [&](const ulam::ColoringPair& pr, int coord) {
    return coord < n ? pr.cand.is_red(coord) : pr.guide.is_red(coord - n);
  };
  std::vector<int> coords(b);
  // enumerate all b-subsets of [a]
  for (int i = 0; i < b; ++i) coords[i] = i;
  for (;;) {
    for (int pattern = 0; pattern < (1 << b); ++pattern) {
      bool hit = false;
      for (const auto& pr : family) {
        bool match = true;
        for (int i = 0; i < b && match; ++i)
          if (member_bits(pr, coords[i]) != (((pattern >> i) & 1) != 0))
            match = false;
        if (match) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    int pos = b - 1;
    while (pos >= 0 && coords[pos] == a - b + pos) --pos;
    if (pos < 0) break;
    ++coords[pos];
    for (int i = pos + 1; i < b; ++i) coords[i] = coords[i - 1] + 1;
  }
  return true;
}

}  // namespace testutil
