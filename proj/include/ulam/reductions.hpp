#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ulam/core.hpp"

namespace ulam {

/// Simple undirected graph; vertices 0-based. coloring is empty or one color
/// id per vertex and must then be proper.
struct SimpleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
  std::vector<int> coloring;

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_edge(int u, int v) const;
  void validate() const;  // throws std::invalid_argument
};

/// True iff some edge has both endpoints outside the set.
bool is_vertex_cover(const SimpleGraph& g, const std::vector<int>& cover);

/// Smallest cover by exhaustive search, lowest vertex set on ties;
/// guarded to small graphs.
std::vector<int> min_vertex_cover(const SimpleGraph& g);

/// Replace every edge by a path of length 3 through two fresh vertices.
/// The result is triangle-free and its minimum vertex cover is exactly
/// cover_shift = |E| larger than the input's.
std::pair<SimpleGraph, int> subdivide_2(const SimpleGraph& g);

/// Encode Vertex Cover as k-center: one symbol pair per (vertex, copy) with
/// copies 1..d, base order v1_1 v1_1bar v1_2 ... ; one input permutation per
/// edge with both endpoints' pairs flipped. Distance from the vertex
/// permutation (own pairs flipped) to an edge permutation is d iff the
/// vertex lies on the edge, else 3d, so covers of size k' correspond to
/// radius-d center sets. Requires a triangle-free graph and d >= 1.
Instance gen_center_from_vertex_cover(const SimpleGraph& g, int k_prime,
                                      int d);

/// The center permutations for a vertex cover, ascending by vertex.
std::vector<Permutation> center_solution_from_cover(const SimpleGraph& g,
                                                    const std::vector<int>& cover,
                                                    int d);

/// Encode Closest String as 1-center: inputs are the pair-scheme encodings
/// of the bitstrings, so radius-d feasibility matches Hamming radius d.
Instance gen_center_from_closest_string(const std::vector<std::string>& strings,
                                        int d);

/// Layout constants and context of one clique-to-median construction.
/// Symbol ids follow the base permutation: per edge j the alternating block
/// xj_1 yj_1 .. xj_q yj_q, then per vertex its v-run, then per edge its
/// z-run, then the colors.
struct MccParams {
  int q = 0;
  Permutation base;
  int d = 0;
  int k = 0;
  int k_prime = 0;
  int n_prime = 0;
  int m_prime = 0;
  SymbolTable table;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> coloring;

  int xy_id(int edge, int copy, bool y) const {
    return 2 * q * edge + 2 * copy + (y ? 1 : 0);
  }
  int v_id(int vertex, int copy) const {
    return 2 * q * m_prime + q * vertex + copy;
  }
  int z_id(int edge, int copy) const {
    return 2 * q * m_prime + q * n_prime + q * edge + copy;
  }
  int color_id(int color) const {
    return 2 * q * m_prime + q * n_prime + q * m_prime + color;
  }
};

/// Encode Multicolored Clique (k_prime >= 4 color classes, proper coloring)
/// as k-median with q = C(k',2)(k'-2)+1 copies per symbol group,
/// k = m' - C(k',2) + 1 and d = C(k',2)(q + k'-2). One input permutation per
/// edge: its own x/y pairs swapped, the endpoint colors moved behind the
/// endpoint v-runs, the remaining colors behind its z-run.
std::pair<Instance, MccParams> gen_median_from_multicolored_clique(
    const SimpleGraph& g, int k_prime);

/// Median certificate for a multicolored clique: the base order with each
/// clique color moved behind its vertex's v-run. Together with the
/// non-clique edge permutations it forms a cost-d solution; each clique edge
/// sits at distance exactly q + k'-2.
Permutation mcc_sigma_from_clique(const MccParams& params,
                                  const std::vector<int>& clique);

enum class PlantedMode { center, median };

struct PlantedInstance {
  Instance instance;
  std::vector<Permutation> centers;
};

/// Sample k centers uniformly and derive each of the m inputs by random
/// moves: per input at most d moves in center mode, at most d in total in
/// median mode, so the planted centers are a feasible witness by
/// construction. Deterministic under seed.
PlantedInstance gen_planted(int n, int m, int k, int d, std::uint64_t seed,
                            PlantedMode mode = PlantedMode::center);

}  // namespace ulam
