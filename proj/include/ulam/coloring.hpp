#pragma once

#include <cstdint>
#include <vector>

#include "ulam/core.hpp"
#include "ulam/errors.hpp"

namespace ulam {

/// Two-coloring of symbol ids: each symbol is red (set bit) or blue.
/// Stored as a bitmask so large families stay compact; n <= 64.
class Coloring {
 public:
  Coloring() = default;
  Coloring(int n, std::uint64_t red_bits);
  static Coloring all_blue(int n) { return Coloring(n, 0); }

  int size() const { return n_; }
  bool is_red(int symbol) const { return (bits_ >> symbol) & 1u; }
  bool is_blue(int symbol) const { return !is_red(symbol); }
  std::uint64_t red_bits() const { return bits_; }
  int red_count() const;

  Coloring with_blue(std::uint64_t cleared_bits) const {
    return Coloring(n_, bits_ & ~cleared_bits);
  }

  bool operator==(const Coloring& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Guess for one solver step: a coloring of the candidate center and one of
/// the permutation it should move toward.
struct ColoringPair {
  Coloring cand;
  Coloring guide;
};

/// Maximal substring of a permutation that starts and ends red and contains
/// no 3d consecutive blue symbols. Positions index the permutation.
struct Block {
  int start_pos = 0;
  int end_pos = 0;
  int red_count = 0;
};

enum class FamilyMode { exhaustive, randomized };

struct ColoringFamilyConfig {
  FamilyMode mode = FamilyMode::exhaustive;
  std::uint64_t seed = 0;
  int lambda = 20;          // failure exponent for the sampled family
  int exhaustive_limit = 22;  // max 2n for full-cube enumeration
  std::uint64_t max_family = 1ull << 22;  // hard cap on family size
};

/// Family of coloring pairs covering the guesses the solver branches on.
/// The pattern width is b = 12d^2 + 4d bits out of 2n (n candidate bits,
/// n guide bits). Exhaustive mode enumerates the full cube over 2n bits,
/// which trivially realizes every pattern; it refuses when 2n exceeds
/// cfg.exhaustive_limit. Randomized mode returns the full cube whenever
/// b >= 2n (sampling could not promise cube coverage any cheaper), and
/// otherwise draws ceil(2^b (b ln2 + lambda ln2 + b ln 2n)) seeded uniform
/// strings, capped at cfg.max_family, so that every (coordinate set,
/// pattern) combination is realized with probability >= 1 - 2^-lambda.
std::vector<ColoringPair> coloring_family(int n, int d, const ColoringFamilyConfig& cfg);

/// Blocks of p under c, left to right. Consecutive red positions belong to
/// the same block iff fewer than 3d blues sit between them.
std::vector<Block> compute_blocks(const Permutation& p, const Coloring& c, int d);

/// Recolor every block holding more than d reds entirely blue. Blocks are
/// separated by at least 3d blues, so one pass is enough.
Coloring normalize_blocks(const Permutation& p, const Coloring& c, int d);

}  // namespace ulam
