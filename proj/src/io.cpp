#include "ulam/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ulam {

namespace {

// Reads the next content line (skipping blanks and '#' comments); returns
// false at end of stream. line_no tracks position for error messages.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

long long to_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) fail(line_no, "not an integer: " + tok);
    return v;
  } catch (const std::invalid_argument&) {
    fail(line_no, "not an integer: " + tok);
  } catch (const std::out_of_range&) {
    fail(line_no, "integer out of range: " + tok);
  }
}

}  // namespace

Permutation parse_perm_tokens(const std::string& line,
                              const SymbolTable& table) {
  auto toks = split_tokens(line);
  if (static_cast<int>(toks.size()) != table.size())
    throw std::invalid_argument("permutation has " +
                                std::to_string(toks.size()) + " tokens, want " +
                                std::to_string(table.size()));
  std::vector<int> seq;
  seq.reserve(toks.size());
  for (const auto& t : toks) {
    auto id = table.id_of(t);
    if (!id) throw std::invalid_argument("unknown symbol: " + t);
    seq.push_back(*id);
  }
  return Permutation(std::move(seq));
}

std::string perm_tokens(const Permutation& p, const SymbolTable& table) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += table.name(p.at(i));
  }
  return out;
}

Instance parse_instance(std::istream& in) {
  int line_no = 0;
  std::string line;
  if (!next_content_line(in, line, line_no))
    fail(line_no, "missing header line");
  auto head = split_tokens(line);
  if (head.size() != 5 || head[0] != "u")
    fail(line_no, "header must be: u <n> <m> <k> <d>");
  long long n = to_int(head[1], line_no), m = to_int(head[2], line_no);
  long long k = to_int(head[3], line_no), d = to_int(head[4], line_no);
  if (n < 0 || m < 0 || k < 0 || d < 0) fail(line_no, "negative header value");
  if (n > 100000 || m > 100000) fail(line_no, "instance too large");

  if (!next_content_line(in, line, line_no))
    fail(line_no, "missing symbol line");
  auto names = split_tokens(line);
  if (static_cast<long long>(names.size()) != n)
    fail(line_no, "symbol line has " + std::to_string(names.size()) +
                      " tokens, want " + std::to_string(n));
  Instance inst;
  try {
    inst.table = SymbolTable(names);
  } catch (const std::invalid_argument& e) {
    fail(line_no, e.what());
  }
  inst.k = static_cast<int>(k);
  inst.d = static_cast<int>(d);
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no))
      fail(line_no, "missing permutation line " + std::to_string(i + 1));
    try {
      inst.perms.push_back(parse_perm_tokens(line, inst.table));
    } catch (const std::invalid_argument& e) {
      fail(line_no, e.what());
    }
  }
  inst.validate();
  return inst;
}

std::string emit_instance(const Instance& inst) {
  std::string out = "u " + std::to_string(inst.n()) + " " +
                    std::to_string(inst.m()) + " " + std::to_string(inst.k) +
                    " " + std::to_string(inst.d) + "\n";
  for (int i = 0; i < inst.n(); ++i) {
    if (i) out += ' ';
    out += inst.table.name(i);
  }
  out += '\n';
  for (const auto& p : inst.perms) out += perm_tokens(p, inst.table) + "\n";
  return out;
}

SimpleGraph parse_graph(std::istream& in) {
  int line_no = 0;
  std::string line;
  if (!next_content_line(in, line, line_no))
    fail(line_no, "missing graph header");
  auto head = split_tokens(line);
  if (head.size() != 3 || head[0] != "p")
    fail(line_no, "header must be: p <n> <m>");
  long long n = to_int(head[1], line_no), m = to_int(head[2], line_no);
  if (n < 0 || m < 0 || n > 1000000) fail(line_no, "bad graph size");
  SimpleGraph g;
  g.vertex_count = static_cast<int>(n);
  std::vector<int> colors;
  long long edges_seen = 0;
  while (next_content_line(in, line, line_no)) {
    auto toks = split_tokens(line);
    if (toks[0] == "e") {
      if (toks.size() != 3) fail(line_no, "edge line must be: e <u> <v>");
      long long u = to_int(toks[1], line_no), v = to_int(toks[2], line_no);
      if (u < 1 || v < 1 || u > n || v > n)
        fail(line_no, "edge endpoint out of range");
      if (u == v) fail(line_no, "self-loop");
      int a = static_cast<int>(u) - 1, b = static_cast<int>(v) - 1;
      g.edges.emplace_back(std::min(a, b), std::max(a, b));
      ++edges_seen;
    } else if (toks[0] == "c") {
      if (toks.size() != 3) fail(line_no, "color line must be: c <v> <color>");
      long long v = to_int(toks[1], line_no), c = to_int(toks[2], line_no);
      if (v < 1 || v > n) fail(line_no, "colored vertex out of range");
      if (c < 1) fail(line_no, "colors are 1-based");
      if (colors.empty()) colors.assign(g.vertex_count, -1);
      colors[static_cast<int>(v) - 1] = static_cast<int>(c) - 1;
    } else {
      fail(line_no, "unknown line type: " + toks[0]);
    }
  }
  if (edges_seen != m)
    fail(line_no, "header announced " + std::to_string(m) + " edges, got " +
                      std::to_string(edges_seen));
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  if (static_cast<long long>(g.edges.size()) != m)
    fail(line_no, "duplicate edges");
  if (!colors.empty()) {
    for (int v = 0; v < g.vertex_count; ++v)
      if (colors[v] < 0)
        fail(line_no, "vertex " + std::to_string(v + 1) + " has no color");
    g.coloring = colors;
  }
  g.validate();
  return g;
}

std::string emit_graph(const SimpleGraph& g) {
  std::string out = "p " + std::to_string(g.vertex_count) + " " +
                    std::to_string(g.edge_count()) + "\n";
  for (auto [u, v] : g.edges)
    out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  for (std::size_t v = 0; v < g.coloring.size(); ++v)
    out += "c " + std::to_string(v + 1) + " " +
           std::to_string(g.coloring[v] + 1) + "\n";
  return out;
}

std::vector<Permutation> parse_solution(std::istream& in,
                                        const SymbolTable& table) {
  int line_no = 0;
  std::string line;
  std::vector<Permutation> out;
  while (next_content_line(in, line, line_no)) {
    try {
      out.push_back(parse_perm_tokens(line, table));
    } catch (const std::invalid_argument& e) {
      fail(line_no, e.what());
    }
  }
  return out;
}

std::string emit_solution(const std::vector<Permutation>& perms,
                          const SymbolTable& table) {
  std::string out;
  for (const auto& p : perms) out += perm_tokens(p, table) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_instance(in);
}

SimpleGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_graph(in);
}

std::vector<Permutation> parse_solution_file(const std::string& path,
                                             const SymbolTable& table) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_solution(in, table);
}

std::string ResultDocument::to_json() const {
  nlohmann::json j;
  j["problem"] = problem;
  j["verdict"] = verdict;
  j["parameters"] = {{"n", n}, {"m", m}, {"k", k}, {"d", d}};
  if (has_witness) {
    nlohmann::json w;
    w[problem == "center" ? "centers" : "medians"] = witness_perms;
    w["assignment"] = assignment;
    w[problem == "center" ? "radius" : "cost"] = objective;
    j["witness"] = w;
  }
  j["stats"] = {{"nodes_expanded", nodes_expanded},
                {"family_size", family_size},
                {"elapsed_ms", elapsed_ms}};
  if (!mode.empty()) j["mode"] = mode;
  if (has_seed) j["seed"] = seed;
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::vector<std::string>> witness_tokens(
    const SymbolTable& table, const std::vector<Permutation>& perms) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : perms) {
    std::vector<std::string> toks;
    toks.reserve(p.size());
    for (int i = 0; i < p.size(); ++i) toks.push_back(table.name(p.at(i)));
    out.push_back(std::move(toks));
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    default:
      return "no_probabilistic";
  }
}

}  // namespace

ResultDocument make_center_document(const Instance& inst,
                                    const KCenterResult& res) {
  ResultDocument doc;
  doc.problem = "center";
  doc.verdict = verdict_name(res.verdict);
  doc.n = inst.n();
  doc.m = inst.m();
  doc.k = inst.k;
  doc.d = inst.d;
  if (res.verdict == Verdict::yes) {
    doc.has_witness = true;
    doc.witness_perms = witness_tokens(inst.table, res.centers);
    doc.assignment = res.assignment;
    doc.objective = res.radius;
  }
  doc.nodes_expanded = res.stats.nodes_expanded;
  doc.family_size = res.stats.family_size;
  return doc;
}

ResultDocument make_median_document(const Instance& inst,
                                    const KMedianResult& res) {
  ResultDocument doc;
  doc.problem = "median";
  doc.verdict = verdict_name(res.verdict);
  doc.n = inst.n();
  doc.m = inst.m();
  doc.k = inst.k;
  doc.d = inst.d;
  if (res.verdict == Verdict::yes) {
    doc.has_witness = true;
    doc.witness_perms = witness_tokens(inst.table, res.medians);
    doc.assignment = res.assignment;
    doc.objective = res.cost;
  }
  doc.nodes_expanded = res.stats.nodes_expanded;
  doc.family_size = res.stats.family_size;
  return doc;
}

}  // namespace ulam
