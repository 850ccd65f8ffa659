#pragma once

#include <optional>
#include <vector>

#include "ulam/core.hpp"
#include "ulam/errors.hpp"

namespace ulam {

/// Size guards for the reference oracles. Guards exist so the deliberately
/// dumb reference implementations fail loudly instead of running for hours;
/// all bounds are adjustable for larger offline runs. ULAM_WORK_LIMIT in the
/// environment switches the brute-force guards from fixed size caps to an
/// estimated operation budget, and raises the search-state cap of exact_kcenter.
struct OracleGuards {
  int max_n_bfs = 8;
  int max_cap_bfs = 4;
  int max_n_center = 6;
  int max_n_median = 5;
  int max_k = 2;
  int max_distinct_exact = 16;
  unsigned long long state_limit_exact = 4'000'000;
  // 0 means "use the fixed caps above"; nonzero allows any brute-force call
  // whose estimated work stays within this many elementary operations.
  unsigned long long work_limit = 0;

  static OracleGuards from_env();
};

struct CenterVerdict {
  bool feasible = false;
  std::vector<Permutation> centers;
  std::vector<int> assignment;  // input index -> index into centers
  int radius = -1;
};

struct MedianVerdict {
  bool feasible = false;
  std::vector<Permutation> medians;
  std::vector<int> assignment;
  long long cost = -1;
};

struct CenterCheck {
  bool ok = false;
  int radius = -1;
  std::vector<int> assignment;
};

struct MedianCheck {
  bool ok = false;
  long long cost = -1;
  std::vector<int> assignment;
};

/// Breadth-first search over single-symbol moves; returns the move distance
/// from a to b when it is at most cap, absent otherwise. Independent of the
/// subsequence-based distance and used to cross-check it.
std::optional<int> bfs_ulam_distance(const Permutation& a, const Permutation& b,
                                     int cap, const OracleGuards& g = OracleGuards::from_env());

/// Enumerates every k-multiset of S_n as candidate centers, in lexicographic
/// order, and returns the first one covering all inputs within distance d.
CenterVerdict brute_kcenter(const Instance& inst,
                            const OracleGuards& g = OracleGuards::from_env());

/// Enumerates every k-multiset of S_n and minimizes total nearest-median
/// distance; feasible iff the optimum is at most d. Returns the optimum cost
/// in the witness.
MedianVerdict brute_kmedian(const Instance& inst,
                            const OracleGuards& g = OracleGuards::from_env());

/// Exact k-center decision that scales past brute_kcenter: any useful center
/// lies within distance d of some input, so per-subset feasibility is decided
/// by a depth-d move search from the subset's first member (pruning states
/// that cannot return to within d of every member), and the instance is a yes
/// iff the inputs are coverable by at most k feasible subsets. Validated
/// against brute_kcenter on the small range before being trusted at scale.
CenterVerdict exact_kcenter(const Instance& inst,
                            const OracleGuards& g = OracleGuards::from_env());

/// Radius check: every input within inst.d of its nearest center (ties toward
/// the lowest center index). Empty centers with m > 0 is false by convention.
CenterCheck verify_center_solution(const Instance& inst,
                                   const std::vector<Permutation>& centers);

/// Total-cost check: sum of nearest-median distances at most inst.d.
MedianCheck verify_median_solution(const Instance& inst,
                                   const std::vector<Permutation>& medians);

}  // namespace ulam
