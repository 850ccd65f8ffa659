#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ulam {

/// Alphabet for one instance: symbol id i <-> table.name(i).
/// Names must be distinct, non-empty and whitespace-free.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> id_of(const std::string& name) const;

  /// "1", "2", ..., "n" — used by generators that number symbols.
  static SymbolTable numbered(int n);
  /// "A".."Z" for n <= 26, else "s0".."s{n-1}".
  static SymbolTable lettered(int n);

  bool operator==(const SymbolTable& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

/// Permutation of {0, .., n-1}. seq maps position -> symbol id,
/// inv maps symbol id -> position. Value type; never mutated in place.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> seq);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(seq_.size()); }
  int at(int pos) const { return seq_.at(pos); }
  int position_of(int symbol) const { return inv_.at(symbol); }
  const std::vector<int>& seq() const { return seq_; }
  const std::vector<int>& inv() const { return inv_; }

  bool operator==(const Permutation& o) const { return seq_ == o.seq_; }
  bool operator!=(const Permutation& o) const { return seq_ != o.seq_; }
  bool operator<(const Permutation& o) const { return seq_ < o.seq_; }

 private:
  std::vector<int> seq_;
  std::vector<int> inv_;
};

/// One decision instance: multiset of permutations over a shared alphabet,
/// cluster budget k (k >= 0) and distance budget d (d >= 0).
struct Instance {
  SymbolTable table;
  std::vector<Permutation> perms;
  int k = 0;
  int d = 0;

  int n() const { return table.size(); }
  int m() const { return static_cast<int>(perms.size()); }
  void validate() const;  // throws std::invalid_argument on violation
};

/// Inversion structure of a pair (a, b): vertices are symbol ids, an edge
/// joins x and y iff their relative order differs between a and b.
struct PermutationGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted lexicographically
};

/// Moves needed to turn a into b; equals n minus the length of their
/// longest common subsequence.
int ulam_distance(const Permutation& a, const Permutation& b);

int lcs_length(const Permutation& a, const Permutation& b);

/// True iff ulam_distance(a, b) <= t, with an early exit once the longest
/// increasing subsequence can no longer reach n - t.
bool distance_at_most(const Permutation& a, const Permutation& b, int t);

/// Remove the symbol at from_pos and reinsert it so that it occupies
/// to_pos in the result. Examples: ABC, 0 -> 2 gives BCA; ABCD, 3 -> 0
/// gives DABC; from_pos == to_pos returns the input.
Permutation apply_move(const Permutation& p, int from_pos, int to_pos);

PermutationGraph permutation_graph(const Permutation& a, const Permutation& b);

}  // namespace ulam
