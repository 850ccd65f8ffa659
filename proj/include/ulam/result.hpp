#pragma once

#include <cstddef>

namespace ulam {

/// no_probabilistic marks a "no" from a randomized coloring family, which may
/// have missed a witness; exhaustive-mode verdicts are exact.
enum class Verdict { yes, no, no_probabilistic };

struct SearchStats {
  long long nodes_expanded = 0;
  std::size_t family_size = 0;
};

}  // namespace ulam
