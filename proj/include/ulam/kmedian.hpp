#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ulam/core.hpp"
#include "ulam/result.hpp"

namespace ulam {

/// Encode a bitstring s of length l as a permutation of {1..2l}: bit i = 0
/// emits the pair (2i-1, 2i), bit i = 1 emits (2i, 2i-1), 1-based. Hamming
/// distance between bitstrings equals the insertion-move distance between
/// their encodings. Example: encode("00101") has token sequence
/// 1 2 3 4 6 5 7 8 10 9.
Permutation pair_scheme_encode(const std::string& bits);

/// Inverse of pair_scheme_encode. Empty result if p is not an encoding
/// (odd length, or some pair is not {2i-1, 2i} in consecutive positions).
bool pair_scheme_decode(const Permutation& p, std::string& bits_out);

/// Partition input indices into connected components of the graph that joins
/// two permutations when their distance is at most d. Duplicates land in one
/// component (distance 0). Components are ordered by smallest member index;
/// members are ascending.
std::vector<std::vector<int>> connectivity_components(
    const std::vector<Permutation>& perms, int d);

/// Split the common alphabet into maximal runs of symbols that appear
/// consecutively, in the same order, in every input permutation. Every
/// symbol belongs to exactly one run; runs are listed in the order their
/// first symbol appears in perms[0]. Requires a non-empty input on a shared
/// symbol set.
std::vector<std::vector<int>> maximal_common_substrings(
    const std::vector<Permutation>& perms);

/// One contracted run: the original symbols (in run order) that were replaced
/// by d+1 fresh kernel symbols.
struct KernelContraction {
  std::vector<int> original;
  std::vector<int> replacement;
};

struct KernelComponent {
  /// Positions (in the kept-occurrence list) belonging to this component.
  std::vector<int> occurrences;
  std::vector<KernelContraction> contractions;
  /// original symbol id -> kernel symbol id for symbols kept one-to-one;
  /// -1 for symbols absorbed into a contraction.
  std::vector<int> relabel;
  /// Component tag encoded into the shared prefix; empty when the instance
  /// has a single component and no prefix is emitted.
  std::string prefix_bits;
  /// Number of kernel symbols this component's reduced core uses.
  int core_size = 0;
};

struct KernelReport {
  /// Set when the distinct-input count already exceeds k + d and the output
  /// is a fixed trivially infeasible instance.
  bool trivial_no = false;
  int original_n = 0;
  int original_m = 0;
  int reduced_n = 0;
  int reduced_m = 0;
  int removed_duplicates = 0;
  /// Original occurrence index of each kernel occurrence, in kernel order.
  std::vector<int> kept_occurrences;
  /// Component index of each kernel occurrence.
  std::vector<int> occurrence_component;
  /// Kernel symbols [0, prefix_symbols) hold the component tags; cores start
  /// at core_base = prefix_symbols. Zero when no prefix is emitted.
  int prefix_symbols = 0;
  int core_base = 0;
  /// Largest component core size; kernel alphabet is core_base + max_core.
  int max_core = 0;
  std::vector<KernelComponent> components;
};

/// Shrink an instance without changing the yes/no answer: answer no outright
/// when the distinct count exceeds k + d, keep at most d+1 copies of each
/// input, and per distance-d component contract shared runs longer than d+1
/// down to d+1 fresh symbols. With several components each output gains a
/// tag prefix keeping the components far apart, plus an ascending suffix
/// padding all outputs to a common alphabet. The reduced instance has at
/// most (k+d)(d+1) inputs. The report carries everything needed to map a
/// reduced solution back.
std::pair<Instance, KernelReport> kernelize(const Instance& inst);

struct KMedianResult {
  Verdict verdict = Verdict::no;
  std::vector<Permutation> medians;
  /// Per input occurrence: index into medians of its closest median, ties to
  /// the lowest index. Empty on a no.
  std::vector<int> assignment;
  long long cost = -1;
  SearchStats stats;
};

/// Exact search over move sequences: find the minimum total number of
/// insertion moves, applied across occurrences, that leaves at most k
/// distinct permutations; yes iff that minimum is at most d. Deepens the
/// budget one move at a time, so a yes reports the optimal cost. Worker
/// count never changes verdict, medians, assignment, or cost.
KMedianResult xp_solve(const Instance& inst, int threads = 1);

/// Kernelize, run the move search on the reduced instance, and lift the
/// medians back to the original alphabet (re-expanding contracted runs and
/// dropping tag/padding symbols). The lifted solution is re-verified against
/// the original instance.
KMedianResult solve_kmedian(const Instance& inst, int threads = 1);

}  // namespace ulam
