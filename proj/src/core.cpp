#include "ulam/core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace ulam {

SymbolTable::SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : names_) {
    if (s.empty()) throw std::invalid_argument("symbol name must be non-empty");
    for (char c : s)
      if (std::isspace(static_cast<unsigned char>(c)))
        throw std::invalid_argument("symbol name contains whitespace: '" + s + "'");
    if (!seen.insert(s).second)
      throw std::invalid_argument("duplicate symbol name: '" + s + "'");
  }
}

std::optional<int> SymbolTable::id_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

SymbolTable SymbolTable::numbered(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return SymbolTable(std::move(names));
}

SymbolTable SymbolTable::lettered(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  if (n <= 26) {
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('A' + i)));
  } else {
    for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  }
  return SymbolTable(std::move(names));
}

Permutation::Permutation(std::vector<int> seq) : seq_(std::move(seq)) {
  const int n = static_cast<int>(seq_.size());
  inv_.assign(n, -1);
  for (int pos = 0; pos < n; ++pos) {
    int sym = seq_[pos];
    if (sym < 0 || sym >= n)
      throw std::invalid_argument("symbol id out of range in permutation");
    if (inv_[sym] != -1)
      throw std::invalid_argument("repeated symbol id in permutation");
    inv_[sym] = pos;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  return Permutation(std::move(seq));
}

void Instance::validate() const {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (d < 0) throw std::invalid_argument("d must be >= 0");
  for (const auto& p : perms)
    if (p.size() != table.size())
      throw std::invalid_argument("permutation length does not match alphabet size");
}

namespace {

// Longest strictly increasing subsequence via patience sorting.
int lis_length(const std::vector<int>& v) {
  std::vector<int> tails;
  tails.reserve(v.size());
  for (int x : v) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end())
      tails.push_back(x);
    else
      *it = x;
  }
  return static_cast<int>(tails.size());
}

void check_same_length(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("permutations are over different alphabet sizes");
}

}  // namespace

int ulam_distance(const Permutation& a, const Permutation& b) {
  check_same_length(a, b);
  const int n = a.size();
  // Relabel so a becomes the identity; an LCS of (a, b) is then an
  // increasing subsequence of the relabeled b.
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) t[i] = a.position_of(b.at(i));
  return n - lis_length(t);
}

int lcs_length(const Permutation& a, const Permutation& b) {
  check_same_length(a, b);
  return a.size() - ulam_distance(a, b);
}

bool distance_at_most(const Permutation& a, const Permutation& b, int t) {
  check_same_length(a, b);
  if (t < 0) throw std::invalid_argument("distance bound must be >= 0");
  const int n = a.size();
  if (t >= n) return true;
  const int need = n - t;  // LIS length required
  std::vector<int> tails;
  tails.reserve(n);
  for (int i = 0; i < n; ++i) {
    int x = a.position_of(b.at(i));
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end())
      tails.push_back(x);
    else
      *it = x;
    // Even if every remaining element extended the LIS it cannot reach `need`.
    if (static_cast<int>(tails.size()) + (n - i - 1) < need) return false;
  }
  return static_cast<int>(tails.size()) >= need;
}

Permutation apply_move(const Permutation& p, int from_pos, int to_pos) {
  const int n = p.size();
  if (from_pos < 0 || from_pos >= n || to_pos < 0 || to_pos >= n)
    throw std::invalid_argument("move position out of range");
  std::vector<int> seq;
  seq.reserve(n);
  for (int i = 0; i < n; ++i)
    if (i != from_pos) seq.push_back(p.at(i));
  seq.insert(seq.begin() + to_pos, p.at(from_pos));
  return Permutation(std::move(seq));
}

PermutationGraph permutation_graph(const Permutation& a, const Permutation& b) {
  check_same_length(a, b);
  const int n = a.size();
  PermutationGraph g;
  g.n = n;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      bool in_a = a.position_of(x) < a.position_of(y);
      bool in_b = b.position_of(x) < b.position_of(y);
      if (in_a != in_b) g.edges.emplace_back(x, y);
    }
  }
  return g;
}

}  // namespace ulam
