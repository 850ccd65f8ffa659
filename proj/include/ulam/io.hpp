#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ulam/core.hpp"
#include "ulam/kcenter.hpp"
#include "ulam/kmedian.hpp"
#include "ulam/reductions.hpp"

namespace ulam {

/// Instance text format. Header `u <n> <m> <k> <d>`, then one line with the
/// n symbol tokens, then m permutation lines of n tokens. Lines starting
/// with '#' and blank lines are skipped. Throws std::invalid_argument with
/// a line number on malformed input.
Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
std::string emit_instance(const Instance& inst);

/// Graph text format: `p <n> <m>` header, `e <u> <v>` per edge and optional
/// `c <v> <color>` lines; vertices and colors 1-based in the file.
SimpleGraph parse_graph(std::istream& in);
SimpleGraph parse_graph_file(const std::string& path);
std::string emit_graph(const SimpleGraph& g);

/// Solution format: one permutation per line, tokens from the instance
/// alphabet; '#' comments allowed.
std::vector<Permutation> parse_solution(std::istream& in,
                                        const SymbolTable& table);
std::vector<Permutation> parse_solution_file(const std::string& path,
                                             const SymbolTable& table);
std::string emit_solution(const std::vector<Permutation>& perms,
                          const SymbolTable& table);

std::string perm_tokens(const Permutation& p, const SymbolTable& table);
Permutation parse_perm_tokens(const std::string& line,
                              const SymbolTable& table);

/// One JSON result document per solver/verify run; shape documented in
/// docs/result-schema.json.
struct ResultDocument {
  std::string problem;        // "center" or "median"
  std::string verdict;        // "yes", "no", "no_probabilistic"
  int n = 0, m = 0, k = 0, d = 0;
  bool has_witness = false;
  std::vector<std::vector<std::string>> witness_perms;
  std::vector<int> assignment;
  long long objective = -1;   // radius or cost
  long long nodes_expanded = 0;
  std::size_t family_size = 0;
  long long elapsed_ms = 0;
  std::string mode;           // coloring family mode, when relevant
  std::uint64_t seed = 0;
  bool has_seed = false;

  std::string to_json() const;
};

ResultDocument make_center_document(const Instance& inst,
                                    const KCenterResult& res);
ResultDocument make_median_document(const Instance& inst,
                                    const KMedianResult& res);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ulam
