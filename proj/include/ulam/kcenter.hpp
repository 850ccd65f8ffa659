#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ulam/coloring.hpp"
#include "ulam/core.hpp"
#include "ulam/result.hpp"

namespace ulam {

/// One node of the budgeted branching search: current centers and how many
/// more refinement moves each one may still absorb.
struct SearchState {
  std::vector<Permutation> centers;
  std::vector<int> budgets;

  /// Progress measure; every branch step reduces it by exactly one, so it
  /// bounds the search depth by k(d+1).
  int measure(int k, int d) const {
    int mu = (k - static_cast<int>(centers.size())) * (d + 1);
    for (int b : budgets) mu += b;
    return mu;
  }
};

struct KCenterOptions {
  ColoringFamilyConfig family;
  int threads = 1;
};

struct KCenterResult {
  Verdict verdict = Verdict::no;
  std::vector<Permutation> centers;
  std::vector<int> assignment;  // input index -> index into centers
  int radius = -1;
  SearchStats stats;
};

/// All inclusion-wise minimal vertex covers of g with size <= bound, each
/// sorted ascending, the list sorted lexicographically. Branches on the
/// lowest-id endpoint of the lowest uncovered edge first.
std::vector<std::vector<int>> minimal_vertex_covers(const PermutationGraph& g, int bound);

/// First symbol in the cover (ascending id) that is red in the candidate
/// coloring and blue in the guide coloring.
std::optional<int> pick_witness_symbol(const std::vector<int>& cover,
                                       const ColoringPair& pair);

/// Re-insertions of x in pc between its nearest both-blue neighbors in pg
/// (b_l left, b_r right, running off the ends when none exists). The slot
/// list spans from directly before b_l to directly after b_r; when it
/// exceeds 6d+2 slots only the ones nearest x's own position survive.
std::vector<Permutation> progress_candidates(const Permutation& pc, const Permutation& pg,
                                             int x, const ColoringPair& pair, int d);

/// Union over the family and over the minimal vertex covers of (pc, pg) of
/// the progress candidates for each cover's witness symbol, deduplicated and
/// sorted. Requires d < dist(pc, pg) <= 2d.
std::vector<Permutation> guide_set(const Permutation& pc, const Permutation& pg, int d,
                                   const std::vector<ColoringPair>& family);

/// Budgeted branching search for a k-center solution of radius d. Exhaustive
/// family mode decides exactly; randomized mode may miss a witness, so its
/// "no" is reported as no_probabilistic. Yes verdicts always carry a
/// verified set of centers and a nearest-center assignment.
KCenterResult solve_kcenter(const Instance& inst, const KCenterOptions& opts = {});

}  // namespace ulam
