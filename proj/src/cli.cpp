#include "ulam/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ulam/errors.hpp"
#include "ulam/io.hpp"
#include "ulam/kcenter.hpp"
#include "ulam/kmedian.hpp"
#include "ulam/oracles.hpp"
#include "ulam/reductions.hpp"

namespace ulam {

namespace {

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

// dist arguments are either a path to a token file or the tokens themselves.
std::vector<std::string> dist_tokens(const std::string& arg) {
  std::string text = file_exists(arg) ? read_file(arg) : arg;
  std::istringstream ss(text);
  std::vector<std::string> toks;
  std::string tok;
  while (ss >> tok)
    if (tok[0] == '#') {
      std::string rest;
      std::getline(ss, rest);
    } else {
      toks.push_back(tok);
    }
  return toks;
}

int cmd_dist(const std::string& a, const std::string& b, std::ostream& out) {
  auto ta = dist_tokens(a), tb = dist_tokens(b);
  if (ta.size() != tb.size() || ta.empty())
    throw std::invalid_argument("dist: the two permutations differ in length");
  SymbolTable table(ta);
  std::string joined;
  for (const auto& t : tb) joined += t + " ";
  Permutation pa = Permutation::identity(table.size());
  Permutation pb = parse_perm_tokens(joined, table);
  out << ulam_distance(pa, pb) << "\n";
  return 0;
}

long long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void print_human(const ResultDocument& doc, std::ostream& out) {
  out << "verdict: " << doc.verdict << "\n";
  if (doc.has_witness) {
    out << (doc.problem == "center" ? "radius: " : "cost: ") << doc.objective
        << "\n";
    for (std::size_t i = 0; i < doc.witness_perms.size(); ++i) {
      out << (doc.problem == "center" ? "center " : "median ") << i << ":";
      for (const auto& t : doc.witness_perms[i]) out << ' ' << t;
      out << "\n";
    }
    out << "assignment:";
    for (int a : doc.assignment) out << ' ' << a;
    out << "\n";
  }
  out << "nodes: " << doc.nodes_expanded << "  family: " << doc.family_size
      << "  elapsed_ms: " << doc.elapsed_ms << "\n";
}

struct SolveFlags {
  std::string family = "exhaustive";
  std::uint64_t seed = 0;
  int lambda = 20;
  int threads = 1;
  bool json = false;
  bool oracle = false;
};

int cmd_solve(const std::string& problem, const std::string& path,
              const SolveFlags& flags, std::ostream& out) {
  Instance inst = parse_instance_file(path);
  long long t0 = now_ms();
  ResultDocument doc;
  if (problem == "center") {
    if (flags.oracle) {
      auto v = brute_kcenter(inst);
      KCenterResult res;
      res.verdict = v.feasible ? Verdict::yes : Verdict::no;
      res.centers = v.centers;
      res.assignment = v.assignment;
      res.radius = v.radius;
      doc = make_center_document(inst, res);
    } else {
      KCenterOptions opts;
      opts.family.mode = flags.family == "random" ? FamilyMode::randomized
                                                  : FamilyMode::exhaustive;
      opts.family.seed = flags.seed;
      opts.family.lambda = flags.lambda;
      opts.threads = flags.threads;
      doc = make_center_document(inst, solve_kcenter(inst, opts));
      doc.mode = flags.family;
      if (flags.family == "random") {
        doc.seed = flags.seed;
        doc.has_seed = true;
      }
    }
  } else {
    if (flags.oracle) {
      auto v = brute_kmedian(inst);
      KMedianResult res;
      res.verdict = v.feasible ? Verdict::yes : Verdict::no;
      res.medians = v.medians;
      res.assignment = v.assignment;
      res.cost = v.cost;
      doc = make_median_document(inst, res);
    } else {
      doc = make_median_document(inst, solve_kmedian(inst, flags.threads));
    }
  }
  doc.elapsed_ms = now_ms() - t0;
  if (flags.json)
    out << doc.to_json();
  else
    print_human(doc, out);
  return doc.verdict == "yes" ? 0 : 1;
}

int find_multicolored_clique(const MccParams& p, std::vector<int>& clique_out) {
  // one vertex per color class, product search; fine for the small graphs
  // this generator is used with
  std::vector<std::vector<int>> classes(p.k_prime);
  for (int v = 0; v < p.n_prime; ++v) classes[p.coloring[v]].push_back(v);
  long long product = 1;
  for (const auto& cls : classes) {
    if (cls.empty()) return 1;
    product *= static_cast<long long>(cls.size());
    if (product > 2'000'000) throw guard_error("mcc clique search too large");
  }
  std::vector<int> pick(p.k_prime, 0);
  auto adjacent = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    return std::binary_search(p.edges.begin(), p.edges.end(),
                              std::make_pair(u, v));
  };
  for (;;) {
    bool ok = true;
    for (int i = 0; i < p.k_prime && ok; ++i)
      for (int j = i + 1; j < p.k_prime && ok; ++j)
        if (!adjacent(classes[i][pick[i]], classes[j][pick[j]])) ok = false;
    if (ok) {
      clique_out.clear();
      for (int i = 0; i < p.k_prime; ++i)
        clique_out.push_back(classes[i][pick[i]]);
      return 0;
    }
    int pos = p.k_prime - 1;
    while (pos >= 0 &&
           ++pick[pos] == static_cast<int>(classes[pos].size())) {
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) return 1;
  }
}

struct GenFlags {
  std::string out_path;
  int d = 1;
  int k = -1;
  int n = 5, m = 3;
  std::uint64_t seed = 0;
  std::string mode = "center";
  std::string input;
};

int cmd_gen(const std::string& kind, const GenFlags& f, std::ostream& out,
            std::ostream& err) {
  Instance inst;
  std::vector<Permutation> cert;
  bool have_cert = false;

  if (kind == "vc") {
    SimpleGraph g = parse_graph_file(f.input);
    int k = f.k;
    std::vector<int> cover;
    bool have_cover = false;
    try {
      cover = min_vertex_cover(g);
      have_cover = true;
    } catch (const guard_error&) {
      if (k < 0) throw;  // no explicit --k and too large to compute one
      err << "gen vc: graph too large for the cover search; no sidecar\n";
    }
    if (k < 0) k = static_cast<int>(cover.size());
    inst = gen_center_from_vertex_cover(g, k, f.d);
    if (have_cover && static_cast<int>(cover.size()) <= k) {
      cert = center_solution_from_cover(g, cover, f.d);
      have_cert = true;
    }
  } else if (kind == "cs") {
    std::istringstream ss(read_file(f.input));
    std::vector<std::string> strings;
    std::string line;
    while (ss >> line)
      if (line[0] != '#') strings.push_back(line);
    inst = gen_center_from_closest_string(strings, f.d);
  } else if (kind == "mcc") {
    SimpleGraph g = parse_graph_file(f.input);
    if (g.coloring.empty())
      throw std::invalid_argument("gen mcc: graph file has no color lines");
    int k_prime = 0;
    for (int c : g.coloring) k_prime = std::max(k_prime, c + 1);
    auto [mi, params] = gen_median_from_multicolored_clique(g, k_prime);
    inst = std::move(mi);
    std::vector<int> clique;
    if (find_multicolored_clique(params, clique) == 0) {
      cert = {mcc_sigma_from_clique(params, clique)};
      for (int j = 0; j < params.m_prime; ++j) {
        auto [a, b] = params.edges[j];
        bool inside = std::find(clique.begin(), clique.end(), a) !=
                          clique.end() &&
                      std::find(clique.begin(), clique.end(), b) !=
                          clique.end();
        if (!inside) cert.push_back(inst.perms[j]);
      }
      have_cert = true;
    } else {
      err << "gen mcc: no multicolored clique; certificate sidecar skipped\n";
    }
  } else if (kind == "planted") {
    auto planted =
        gen_planted(f.n, f.m, f.k < 0 ? 1 : f.k, f.d, f.seed,
                    f.mode == "median" ? PlantedMode::median
                                       : PlantedMode::center);
    inst = std::move(planted.instance);
    cert = std::move(planted.centers);
    have_cert = true;
  } else {
    throw std::invalid_argument("gen: unknown kind " + kind);
  }

  std::string text = emit_instance(inst);
  if (f.out_path.empty()) {
    out << text;
  } else {
    write_file(f.out_path, text);
    if (have_cert)
      write_file(f.out_path + ".cert", emit_solution(cert, inst.table));
    out << "wrote " << f.out_path << " (n=" << inst.n() << " m=" << inst.m()
        << " k=" << inst.k << " d=" << inst.d << ")"
        << (have_cert ? " with certificate" : "") << "\n";
  }
  return 0;
}

int cmd_kernelize(const std::string& path, bool json,
                  const std::string& out_path, std::ostream& out) {
  Instance inst = parse_instance_file(path);
  auto [kern, rep] = kernelize(inst);
  std::string text = emit_instance(kern);
  if (!out_path.empty()) write_file(out_path, text);
  if (json) {
    nlohmann::json j;
    j["trivial_no"] = rep.trivial_no;
    j["original"] = {{"n", rep.original_n}, {"m", rep.original_m}};
    j["reduced"] = {{"n", rep.reduced_n}, {"m", rep.reduced_m}};
    j["removed_duplicates"] = rep.removed_duplicates;
    j["components"] = rep.components.size();
    j["prefix_symbols"] = rep.prefix_symbols;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& kc : rep.components) {
      nlohmann::json c;
      c["core_size"] = kc.core_size;
      c["contractions"] = kc.contractions.size();
      c["occurrences"] = kc.occurrences.size();
      if (!kc.prefix_bits.empty()) c["prefix_bits"] = kc.prefix_bits;
      comps.push_back(c);
    }
    j["component_detail"] = comps;
    out << j.dump(2) << "\n";
  } else {
    out << "n: " << rep.original_n << " -> " << rep.reduced_n << "\n";
    out << "m: " << rep.original_m << " -> " << rep.reduced_m << "\n";
    out << "removed duplicates: " << rep.removed_duplicates << "\n";
    out << "components: " << rep.components.size() << "\n";
    if (rep.trivial_no) out << "trivially infeasible\n";
  }
  if (out_path.empty() && !json) out << text;
  return 0;
}

int cmd_verify(const std::string& problem, const std::string& inst_path,
               const std::string& sol_path, std::ostream& out) {
  Instance inst = parse_instance_file(inst_path);
  auto sol = parse_solution_file(sol_path, inst.table);
  if (problem == "center") {
    auto chk = verify_center_solution(inst, sol);
    out << "radius: " << chk.radius << " (budget " << inst.d << ")\n";
    return chk.ok ? 0 : 1;
  }
  auto chk = verify_median_solution(inst, sol);
  out << "cost: " << chk.cost << " (budget " << inst.d << ")\n";
  return chk.ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact clustering of permutations under the move distance"};
  app.require_subcommand(1);

  auto* dist = app.add_subcommand("dist", "distance between two permutations");
  std::string dist_a, dist_b;
  dist->add_option("a", dist_a, "tokens or file")->required();
  dist->add_option("b", dist_b, "tokens or file")->required();

  auto* solve = app.add_subcommand("solve", "decide a clustering instance");
  std::string problem, inst_path;
  SolveFlags sf;
  solve->add_option("problem", problem, "center | median")
      ->required()
      ->check(CLI::IsMember({"center", "median"}));
  solve->add_option("instance", inst_path, "instance file")->required();
  solve->add_option("--family", sf.family, "coloring family mode")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  solve->add_option("--seed", sf.seed, "random family seed");
  solve->add_option("--lambda", sf.lambda, "failure exponent for random mode");
  solve->add_option("--threads", sf.threads, "worker threads");
  solve->add_flag("--json", sf.json, "machine-readable result");
  solve->add_flag("--oracle", sf.oracle, "use the brute-force reference");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string kind;
  GenFlags gf;
  gen->add_option("kind", kind, "vc | cs | mcc | planted")
      ->required()
      ->check(CLI::IsMember({"vc", "cs", "mcc", "planted"}));
  gen->add_option("input", gf.input, "graph/strings file (vc, cs, mcc)");
  gen->add_option("--out", gf.out_path, "output instance path");
  gen->add_option("--d", gf.d, "distance budget");
  gen->add_option("--k", gf.k, "cluster budget (vc: default min cover)");
  gen->add_option("--n", gf.n, "alphabet size (planted)");
  gen->add_option("--m", gf.m, "input count (planted)");
  gen->add_option("--seed", gf.seed, "rng seed (planted)");
  gen->add_option("--mode", gf.mode, "planted flavor")
      ->check(CLI::IsMember({"center", "median"}));

  auto* kern = app.add_subcommand("kernelize", "shrink a median instance");
  std::string kern_path, kern_out;
  bool kern_json = false;
  kern->add_option("instance", kern_path, "instance file")->required();
  kern->add_flag("--json", kern_json, "machine-readable report");
  kern->add_option("--out", kern_out, "write reduced instance here");

  auto* verify = app.add_subcommand("verify", "check a solution file");
  std::string v_problem, v_inst, v_sol;
  verify->add_option("problem", v_problem, "center | median")
      ->required()
      ->check(CLI::IsMember({"center", "median"}));
  verify->add_option("instance", v_inst, "instance file")->required();
  verify->add_option("solution", v_sol, "solution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dist->parsed()) return cmd_dist(dist_a, dist_b, out);
    if (solve->parsed()) return cmd_solve(problem, inst_path, sf, out);
    if (gen->parsed()) {
      if (kind != "planted" && gf.input.empty())
        throw std::invalid_argument("gen " + kind + ": input file required");
      return cmd_gen(kind, gf, out, err);
    }
    if (kern->parsed())
      return cmd_kernelize(kern_path, kern_json, kern_out, out);
    if (verify->parsed()) return cmd_verify(v_problem, v_inst, v_sol, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ulam
