#pragma once

#include <stdexcept>

namespace ulam {

/// A request exceeded a size guard (oracles, search state caps).
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration asked for something the chosen mode cannot honor
/// (e.g. exhaustive coloring enumeration beyond the enumeration limit).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ulam
