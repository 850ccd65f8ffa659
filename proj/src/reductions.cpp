#include "ulam/reductions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "ulam/errors.hpp"
#include "ulam/kmedian.hpp"
#include "ulam/oracles.hpp"

namespace ulam {

bool SimpleGraph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

void SimpleGraph::validate() const {
  if (vertex_count < 0)
    throw std::invalid_argument("graph: negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u > v) throw std::invalid_argument("graph: edge not normalized");
    if (!seen.insert({u, v}).second)
      throw std::invalid_argument("graph: duplicate edge");
  }
  if (!std::is_sorted(edges.begin(), edges.end()))
    throw std::invalid_argument("graph: edges not sorted");
  if (!coloring.empty()) {
    if (static_cast<int>(coloring.size()) != vertex_count)
      throw std::invalid_argument("graph: coloring size mismatch");
    for (int c : coloring)
      if (c < 0) throw std::invalid_argument("graph: negative color");
    for (auto [u, v] : edges)
      if (coloring[u] == coloring[v])
        throw std::invalid_argument("graph: coloring not proper");
  }
}

bool is_vertex_cover(const SimpleGraph& g, const std::vector<int>& cover) {
  std::vector<char> in(g.vertex_count, 0);
  for (int v : cover) {
    if (v < 0 || v >= g.vertex_count)
      throw std::invalid_argument("cover: vertex out of range");
    in[v] = 1;
  }
  for (auto [u, v] : g.edges)
    if (!in[u] && !in[v]) return false;
  return true;
}

std::vector<int> min_vertex_cover(const SimpleGraph& g) {
  g.validate();
  const int n = g.vertex_count;
  if (n > 24) throw guard_error("min_vertex_cover: graph too large");
  std::uint32_t best_mask = 0;
  int best_size = n + 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best_size) continue;
    bool ok = true;
    for (auto [u, v] : g.edges)
      if (!((mask >> u) & 1) && !((mask >> v) & 1)) {
        ok = false;
        break;
      }
    if (ok) {
      best_size = size;
      best_mask = mask;
    }
  }
  std::vector<int> cover;
  for (int v = 0; v < n; ++v)
    if ((best_mask >> v) & 1) cover.push_back(v);
  return cover;
}

std::pair<SimpleGraph, int> subdivide_2(const SimpleGraph& g) {
  g.validate();
  SimpleGraph out;
  out.vertex_count = g.vertex_count + 2 * g.edge_count();
  for (int j = 0; j < g.edge_count(); ++j) {
    auto [u, v] = g.edges[j];
    int a = g.vertex_count + 2 * j;
    int b = a + 1;
    out.edges.emplace_back(std::min(u, a), std::max(u, a));
    out.edges.emplace_back(a, b);
    out.edges.emplace_back(std::min(v, b), std::max(v, b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.validate();
  return {out, g.edge_count()};
}

namespace {

bool has_triangle(const SimpleGraph& g) {
  for (auto [u, v] : g.edges)
    for (int w = 0; w < g.vertex_count; ++w)
      if (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) return true;
  return false;
}

SymbolTable cover_table(int n_prime, int d) {
  std::vector<std::string> names;
  names.reserve(2 * n_prime * d);
  for (int i = 1; i <= n_prime; ++i)
    for (int j = 1; j <= d; ++j) {
      names.push_back("v" + std::to_string(i) + "_" + std::to_string(j));
      names.push_back("v" + std::to_string(i) + "_" + std::to_string(j) +
                      "bar");
    }
  return SymbolTable(std::move(names));
}

// Identity order with the d symbol pairs of each listed vertex flipped.
Permutation cover_perm(int n_prime, int d, const std::vector<int>& flipped) {
  std::vector<int> seq(2 * n_prime * d);
  for (int i = 0; i < 2 * n_prime * d; ++i) seq[i] = i;
  for (int v : flipped)
    for (int j = 0; j < d; ++j) {
      int base = 2 * (v * d + j);
      std::swap(seq[base], seq[base + 1]);
    }
  return Permutation(std::move(seq));
}

}  // namespace

Instance gen_center_from_vertex_cover(const SimpleGraph& g, int k_prime,
                                      int d) {
  g.validate();
  if (d < 1)
    throw std::invalid_argument("gen_center_from_vertex_cover: d must be >= 1");
  if (k_prime < 0)
    throw std::invalid_argument("gen_center_from_vertex_cover: negative k");
  if (has_triangle(g))
    throw std::invalid_argument(
        "gen_center_from_vertex_cover: graph has a triangle; apply "
        "subdivide_2 first");
  Instance inst;
  inst.table = cover_table(g.vertex_count, d);
  inst.k = k_prime;
  inst.d = d;
  for (auto [u, v] : g.edges)
    inst.perms.push_back(cover_perm(g.vertex_count, d, {u, v}));
  inst.validate();
  return inst;
}

std::vector<Permutation> center_solution_from_cover(
    const SimpleGraph& g, const std::vector<int>& cover, int d) {
  if (!is_vertex_cover(g, cover))
    throw std::invalid_argument("center_solution_from_cover: not a cover");
  std::vector<int> sorted = cover;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Permutation> out;
  out.reserve(sorted.size());
  for (int v : sorted) out.push_back(cover_perm(g.vertex_count, d, {v}));
  return out;
}

Instance gen_center_from_closest_string(
    const std::vector<std::string>& strings, int d) {
  if (strings.empty())
    throw std::invalid_argument("gen_center_from_closest_string: no strings");
  if (d < 0)
    throw std::invalid_argument("gen_center_from_closest_string: d < 0");
  std::size_t len = strings[0].size();
  for (const auto& s : strings)
    if (s.size() != len)
      throw std::invalid_argument(
          "gen_center_from_closest_string: length mismatch");
  Instance inst;
  inst.table = SymbolTable::numbered(static_cast<int>(2 * len));
  inst.k = 1;
  inst.d = d;
  for (const auto& s : strings) inst.perms.push_back(pair_scheme_encode(s));
  inst.validate();
  return inst;
}

namespace {

SymbolTable mcc_table(int k_prime, int n_prime, int m_prime, int q) {
  std::vector<std::string> names;
  names.reserve(k_prime + n_prime * q + 3 * m_prime * q);
  for (int j = 1; j <= m_prime; ++j)
    for (int i = 1; i <= q; ++i) {
      names.push_back("x" + std::to_string(j) + "_" + std::to_string(i));
      names.push_back("y" + std::to_string(j) + "_" + std::to_string(i));
    }
  for (int j = 1; j <= n_prime; ++j)
    for (int i = 1; i <= q; ++i)
      names.push_back("v" + std::to_string(j) + "_" + std::to_string(i));
  for (int j = 1; j <= m_prime; ++j)
    for (int i = 1; i <= q; ++i)
      names.push_back("z" + std::to_string(j) + "_" + std::to_string(i));
  for (int c = 1; c <= k_prime; ++c) names.push_back("c" + std::to_string(c));
  return SymbolTable(std::move(names));
}

}  // namespace

std::pair<Instance, MccParams> gen_median_from_multicolored_clique(
    const SimpleGraph& g, int k_prime) {
  g.validate();
  if (k_prime < 4)
    throw std::invalid_argument(
        "gen_median_from_multicolored_clique: needs at least 4 colors");
  if (g.coloring.empty())
    throw std::invalid_argument(
        "gen_median_from_multicolored_clique: graph has no coloring");
  for (int c : g.coloring)
    if (c >= k_prime)
      throw std::invalid_argument(
          "gen_median_from_multicolored_clique: color id beyond k'");

  MccParams p;
  p.k_prime = k_prime;
  p.n_prime = g.vertex_count;
  p.m_prime = g.edge_count();
  int pairs = k_prime * (k_prime - 1) / 2;
  p.q = pairs * (k_prime - 2) + 1;
  p.d = pairs * (p.q + k_prime - 2);
  p.k = p.m_prime - pairs + 1;
  if (p.k < 0)
    throw std::invalid_argument(
        "gen_median_from_multicolored_clique: too few edges for k >= 0");
  p.table = mcc_table(k_prime, p.n_prime, p.m_prime, p.q);
  p.edges = g.edges;
  p.coloring = g.coloring;

  const int n = p.table.size();
  {
    std::vector<int> seq(n);
    for (int i = 0; i < n; ++i) seq[i] = i;
    p.base = Permutation(std::move(seq));
  }

  Instance inst;
  inst.table = p.table;
  inst.k = p.k;
  inst.d = p.d;
  for (int j = 0; j < p.m_prime; ++j) {
    auto [a, b] = p.edges[j];
    int alpha = p.coloring[a], beta = p.coloring[b];
    std::vector<int> seq;
    seq.reserve(n);
    for (int j2 = 0; j2 < p.m_prime; ++j2)
      for (int i = 0; i < p.q; ++i) {
        int x = p.xy_id(j2, i, false), y = p.xy_id(j2, i, true);
        if (j2 == j) {
          seq.push_back(y);
          seq.push_back(x);
        } else {
          seq.push_back(x);
          seq.push_back(y);
        }
      }
    for (int v = 0; v < p.n_prime; ++v) {
      for (int i = 0; i < p.q; ++i) seq.push_back(p.v_id(v, i));
      if (v == a) seq.push_back(p.color_id(alpha));
      if (v == b) seq.push_back(p.color_id(beta));
    }
    for (int j2 = 0; j2 < p.m_prime; ++j2) {
      for (int i = 0; i < p.q; ++i) seq.push_back(p.z_id(j2, i));
      if (j2 == j)
        for (int c = 0; c < p.k_prime; ++c)
          if (c != alpha && c != beta) seq.push_back(p.color_id(c));
    }
    inst.perms.emplace_back(std::move(seq));
  }
  inst.validate();
  return {inst, p};
}

Permutation mcc_sigma_from_clique(const MccParams& p,
                                  const std::vector<int>& clique) {
  if (static_cast<int>(clique.size()) != p.k_prime)
    throw std::invalid_argument("mcc_sigma_from_clique: wrong clique size");
  std::vector<int> sorted = clique;
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> used_color(p.k_prime, 0);
  std::vector<char> in_clique(p.n_prime, 0);
  for (int v : sorted) {
    if (v < 0 || v >= p.n_prime)
      throw std::invalid_argument("mcc_sigma_from_clique: vertex out of range");
    if (in_clique[v])
      throw std::invalid_argument("mcc_sigma_from_clique: repeated vertex");
    in_clique[v] = 1;
    int c = p.coloring[v];
    if (used_color[c])
      throw std::invalid_argument(
          "mcc_sigma_from_clique: two vertices share a color");
    used_color[c] = 1;
  }
  auto adjacent = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    return std::binary_search(p.edges.begin(), p.edges.end(),
                              std::make_pair(u, v));
  };
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      if (!adjacent(sorted[i], sorted[j]))
        throw std::invalid_argument("mcc_sigma_from_clique: not a clique");

  std::vector<int> seq;
  seq.reserve(p.table.size());
  for (int j = 0; j < p.m_prime; ++j)
    for (int i = 0; i < p.q; ++i) {
      seq.push_back(p.xy_id(j, i, false));
      seq.push_back(p.xy_id(j, i, true));
    }
  for (int v = 0; v < p.n_prime; ++v) {
    for (int i = 0; i < p.q; ++i) seq.push_back(p.v_id(v, i));
    if (in_clique[v]) seq.push_back(p.color_id(p.coloring[v]));
  }
  for (int j = 0; j < p.m_prime; ++j)
    for (int i = 0; i < p.q; ++i) seq.push_back(p.z_id(j, i));
  return Permutation(std::move(seq));
}

PlantedInstance gen_planted(int n, int m, int k, int d, std::uint64_t seed,
                            PlantedMode mode) {
  if (n < 1 || m < 0 || k < 1 || d < 0 || k > m)
    throw std::invalid_argument("gen_planted: need n >= 1, 1 <= k <= m, d >= 0");
  std::mt19937_64 rng(seed);
  auto random_perm = [&]() {
    std::vector<int> seq(n);
    for (int i = 0; i < n; ++i) seq[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(rng() % (i + 1));
      std::swap(seq[i], seq[j]);
    }
    return Permutation(std::move(seq));
  };

  PlantedInstance out;
  out.instance.table = SymbolTable::lettered(n);
  out.instance.k = k;
  out.instance.d = d;
  for (int c = 0; c < k; ++c) out.centers.push_back(random_perm());

  int remaining = d;
  for (int i = 0; i < m; ++i) {
    int c = static_cast<int>(rng() % k);
    int budget = mode == PlantedMode::center ? d : remaining;
    int moves = budget > 0 ? static_cast<int>(rng() % (budget + 1)) : 0;
    if (mode == PlantedMode::median) remaining -= moves;
    Permutation p = out.centers[c];
    for (int t = 0; t < moves; ++t) {
      int from = static_cast<int>(rng() % n);
      int to = static_cast<int>(rng() % n);
      p = apply_move(p, from, to);
    }
    out.instance.perms.push_back(std::move(p));
  }
  out.instance.validate();

  if (mode == PlantedMode::center) {
    if (!verify_center_solution(out.instance, out.centers).ok)
      throw std::logic_error("gen_planted: planted centers fail verification");
  } else {
    if (!verify_median_solution(out.instance, out.centers).ok)
      throw std::logic_error("gen_planted: planted medians fail verification");
  }
  return out;
}

}  // namespace ulam
