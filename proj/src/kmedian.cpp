#include "ulam/kmedian.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ulam/errors.hpp"
#include "ulam/oracles.hpp"

namespace ulam {

Permutation pair_scheme_encode(const std::string& bits) {
  if (bits.empty())
    throw std::invalid_argument("pair_scheme_encode: empty bitstring");
  std::vector<int> seq;
  seq.reserve(2 * bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    int a = static_cast<int>(2 * i);
    if (bits[i] == '0') {
      seq.push_back(a);
      seq.push_back(a + 1);
    } else if (bits[i] == '1') {
      seq.push_back(a + 1);
      seq.push_back(a);
    } else {
      throw std::invalid_argument("pair_scheme_encode: bits must be 0 or 1");
    }
  }
  return Permutation(std::move(seq));
}

bool pair_scheme_decode(const Permutation& p, std::string& bits_out) {
  if (p.size() % 2 != 0) return false;
  std::string bits;
  bits.reserve(p.size() / 2);
  for (int i = 0; i + 1 < p.size(); i += 2) {
    int a = p.at(i), b = p.at(i + 1);
    if (a == i && b == i + 1)
      bits.push_back('0');
    else if (a == i + 1 && b == i)
      bits.push_back('1');
    else
      return false;
  }
  bits_out = std::move(bits);
  return true;
}

std::vector<std::vector<int>> connectivity_components(
    const std::vector<Permutation>& perms, int d) {
  if (d < 0) throw std::invalid_argument("connectivity_components: d < 0");
  int m = static_cast<int>(perms.size());
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < members.size(); ++head) {
      int u = members[head];
      for (int v = 0; v < m; ++v) {
        if (comp[v] >= 0) continue;
        if (distance_at_most(perms[u], perms[v], d)) {
          comp[v] = comp[s];
          members.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::vector<int>> maximal_common_substrings(
    const std::vector<Permutation>& perms) {
  if (perms.empty())
    throw std::invalid_argument("maximal_common_substrings: no permutations");
  int n = perms[0].size();
  for (const auto& p : perms)
    if (p.size() != n)
      throw std::invalid_argument("maximal_common_substrings: size mismatch");
  if (n == 0) return {};

  // next[x] = the symbol following x in every input, or -1.
  std::vector<int> next(n, -1);
  for (int x = 0; x < n; ++x) {
    int succ = -2;
    for (const auto& p : perms) {
      int pos = p.position_of(x);
      int here = pos + 1 < n ? p.at(pos + 1) : -1;
      if (succ == -2)
        succ = here;
      else if (succ != here)
        succ = -1;
      if (succ == -1) break;
    }
    next[x] = succ == -2 ? -1 : succ;
  }
  std::vector<char> has_pred(n, 0);
  for (int x = 0; x < n; ++x)
    if (next[x] >= 0) has_pred[next[x]] = 1;

  std::vector<std::vector<int>> runs;
  const auto& first = perms[0].seq();
  for (int sym : first) {
    if (has_pred[sym]) continue;
    std::vector<int> run;
    for (int x = sym; x >= 0; x = next[x]) run.push_back(x);
    runs.push_back(std::move(run));
  }
  return runs;
}

namespace {

// Bit pattern tagging component ci (0-based) out of r, with runs of length
// d+1: zeros, then ones in block ci, then zeros.
std::string component_tag(int ci, int r, int d) {
  std::string bits((d + 1) * r, '0');
  for (int j = 0; j < d + 1; ++j) bits[(d + 1) * ci + j] = '1';
  return bits;
}

}  // namespace

std::pair<Instance, KernelReport> kernelize(const Instance& inst) {
  inst.validate();
  KernelReport rep;
  rep.original_n = inst.n();
  rep.original_m = inst.m();
  const int d = inst.d;
  const int n = inst.n();
  const int m = inst.m();

  if (m == 0) {
    rep.reduced_n = n;
    rep.reduced_m = 0;
    return {inst, rep};
  }

  std::vector<Permutation> distinct;
  std::vector<int> occ_distinct(m, -1);
  for (int i = 0; i < m; ++i) {
    for (std::size_t dj = 0; dj < distinct.size(); ++dj)
      if (distinct[dj] == inst.perms[i]) {
        occ_distinct[i] = static_cast<int>(dj);
        break;
      }
    if (occ_distinct[i] < 0) {
      occ_distinct[i] = static_cast<int>(distinct.size());
      distinct.push_back(inst.perms[i]);
    }
  }

  // Too many distinct inputs: k medians cannot serve more than k + d distinct
  // values within total budget d, so emit a fixed infeasible instance.
  if (static_cast<int>(distinct.size()) > inst.k + d) {
    rep.trivial_no = true;
    Instance out;
    out.table = SymbolTable::lettered(2);
    out.perms = {Permutation({0, 1}), Permutation({1, 0})};
    out.k = 1;
    out.d = 0;
    rep.reduced_n = out.n();
    rep.reduced_m = out.m();
    return {out, rep};
  }

  // Multiplicity cap: beyond d+1 copies, extra duplicates never change the
  // answer.
  std::vector<int> copies(distinct.size(), 0);
  for (int i = 0; i < m; ++i) {
    if (copies[occ_distinct[i]] < d + 1) {
      ++copies[occ_distinct[i]];
      rep.kept_occurrences.push_back(i);
    }
  }
  rep.removed_duplicates = m - static_cast<int>(rep.kept_occurrences.size());

  auto comps = connectivity_components(distinct, d);
  const int r = static_cast<int>(comps.size());
  const bool with_prefix = r >= 2;
  rep.prefix_symbols = with_prefix ? 2 * (d + 1) * r : 0;
  rep.core_base = rep.prefix_symbols;

  std::vector<int> distinct_comp(distinct.size(), -1);
  for (int ci = 0; ci < r; ++ci)
    for (int idx : comps[ci]) distinct_comp[idx] = ci;

  rep.components.resize(r);
  std::vector<std::vector<int>> core_seq(distinct.size());
  for (int ci = 0; ci < r; ++ci) {
    KernelComponent& kc = rep.components[ci];
    std::vector<Permutation> members;
    for (int idx : comps[ci]) members.push_back(distinct[idx]);
    auto runs = maximal_common_substrings(members);

    kc.relabel.assign(n, -1);
    std::vector<int> head_con(n, -1);
    int next_local = 0;
    for (auto& run : runs) {
      if (static_cast<int>(run.size()) > d + 1) {
        KernelContraction con;
        con.original = run;
        for (int t = 0; t <= d; ++t)
          con.replacement.push_back(rep.core_base + next_local++);
        head_con[run[0]] = static_cast<int>(kc.contractions.size());
        kc.contractions.push_back(std::move(con));
      } else {
        for (int sym : run) kc.relabel[sym] = rep.core_base + next_local++;
      }
    }
    kc.core_size = next_local;
    if (with_prefix) kc.prefix_bits = component_tag(ci, r, d);

    for (int idx : comps[ci]) {
      const auto& seq = distinct[idx].seq();
      std::vector<int> out;
      out.reserve(kc.core_size);
      int pos = 0;
      while (pos < n) {
        int sym = seq[pos];
        if (head_con[sym] >= 0) {
          const auto& con = kc.contractions[head_con[sym]];
          out.insert(out.end(), con.replacement.begin(), con.replacement.end());
          pos += static_cast<int>(con.original.size());
        } else if (kc.relabel[sym] >= 0) {
          out.push_back(kc.relabel[sym]);
          ++pos;
        } else {
          throw std::logic_error("kernelize: shared run misaligned");
        }
      }
      core_seq[idx] = std::move(out);
    }
  }

  rep.max_core = 0;
  for (const auto& kc : rep.components)
    rep.max_core = std::max(rep.max_core, kc.core_size);
  const int kernel_n = rep.core_base + rep.max_core;

  Instance out;
  out.table = SymbolTable::numbered(kernel_n);
  out.k = inst.k;
  out.d = inst.d;
  for (std::size_t kpos = 0; kpos < rep.kept_occurrences.size(); ++kpos) {
    int i = rep.kept_occurrences[kpos];
    int di = occ_distinct[i];
    int ci = distinct_comp[di];
    rep.occurrence_component.push_back(ci);
    rep.components[ci].occurrences.push_back(static_cast<int>(kpos));
    std::vector<int> seq;
    seq.reserve(kernel_n);
    if (with_prefix) {
      Permutation tag = pair_scheme_encode(rep.components[ci].prefix_bits);
      seq.insert(seq.end(), tag.seq().begin(), tag.seq().end());
    }
    seq.insert(seq.end(), core_seq[di].begin(), core_seq[di].end());
    for (int pad = rep.core_base + rep.components[ci].core_size;
         pad < kernel_n; ++pad)
      seq.push_back(pad);
    out.perms.emplace_back(std::move(seq));
  }
  out.validate();
  rep.reduced_n = kernel_n;
  rep.reduced_m = out.m();
  return {out, rep};
}

namespace {

int count_distinct(const std::vector<Permutation>& perms) {
  int count = 0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) dup = perms[j] == perms[i];
    if (!dup) ++count;
  }
  return count;
}

struct MoveSearch {
  int k = 0;
  std::vector<Permutation> state;
  // Per occurrence, the values already visited on the current path; moving
  // back to one of them wastes budget, so such branches are skipped.
  std::vector<std::vector<Permutation>> trail;
  long long nodes = 0;
  const std::atomic<long long>* cancel_below = nullptr;  // multi-worker only
  long long branch_index = LLONG_MAX;

  bool cancelled() const {
    return cancel_below != nullptr &&
           cancel_below->load(std::memory_order_relaxed) < branch_index;
  }

  // Moves are enumerated with non-decreasing occurrence index: moves on
  // different occurrences commute, so every solution has a representative in
  // this order.
  bool dfs(int min_occ, int budget) {
    ++nodes;
    int distinct = count_distinct(state);
    if (distinct <= k) return true;
    if (budget <= 0) return false;
    if (distinct - k > budget) return false;  // one move removes at most one
    int m = static_cast<int>(state.size());
    int n = state.empty() ? 0 : state[0].size();
    for (int occ = min_occ; occ < m; ++occ) {
      for (int from = 0; from < n; ++from) {
        for (int to = 0; to < n; ++to) {
          if (from == to) continue;
          if (cancelled()) return false;
          Permutation cand = apply_move(state[occ], from, to);
          bool seen = false;
          for (const auto& old : trail[occ])
            if (old == cand) {
              seen = true;
              break;
            }
          if (seen) continue;
          trail[occ].push_back(std::move(state[occ]));
          state[occ] = std::move(cand);
          if (dfs(occ, budget - 1)) return true;
          state[occ] = std::move(trail[occ].back());
          trail[occ].pop_back();
        }
      }
    }
    return false;
  }
};

KMedianResult accept_from_state(const Instance& inst,
                                const std::vector<Permutation>& state,
                                long long cost, long long nodes) {
  KMedianResult res;
  res.verdict = Verdict::yes;
  for (const auto& p : state) {
    bool dup = false;
    for (const auto& q : res.medians)
      if (q == p) {
        dup = true;
        break;
      }
    if (!dup) res.medians.push_back(p);
  }
  auto chk = verify_median_solution(inst, res.medians);
  if (!chk.ok || chk.cost != cost)
    throw std::logic_error("xp_solve: accepted state fails verification");
  res.assignment = chk.assignment;
  res.cost = chk.cost;
  res.stats.nodes_expanded = nodes;
  return res;
}

void warn_if_heavy(const Instance& inst) {
  const auto g = OracleGuards::from_env();
  long double limit =
      g.work_limit > 0 ? static_cast<long double>(g.work_limit) : 2e8L;
  long double per_level = static_cast<long double>(inst.m()) * inst.n() *
                          std::max(inst.n() - 1, 1);
  long double est = 1;
  for (int t = 0; t < inst.d && est <= limit; ++t) est *= per_level;
  if (est > limit)
    std::fprintf(stderr,
                 "xp_solve: search tree may reach ~%.2Lg nodes "
                 "(m=%d n=%d d=%d); expect a long run\n",
                 est, inst.m(), inst.n(), inst.d);
}

}  // namespace

KMedianResult xp_solve(const Instance& inst, int threads) {
  inst.validate();
  const int m = inst.m();
  const int n = inst.n();

  if (inst.k == 0 || m == 0) {
    KMedianResult res;
    if (m == 0) {
      res.verdict = Verdict::yes;
      res.cost = 0;
    }
    return res;
  }
  warn_if_heavy(inst);

  long long nodes = 0;
  for (int t = 0; t <= inst.d; ++t) {
    int distinct0 = count_distinct(inst.perms);
    if (distinct0 <= inst.k)
      return accept_from_state(inst, inst.perms, 0, nodes + 1);
    if (distinct0 - inst.k > t) continue;

    if (threads <= 1 || t == 0) {
      MoveSearch s;
      s.k = inst.k;
      s.state = inst.perms;
      s.trail.assign(m, {});
      bool hit = s.dfs(0, t);
      nodes += s.nodes;
      if (hit) return accept_from_state(inst, s.state, t, nodes);
      continue;
    }

    // Split the first move choice across workers. The accepted branch is the
    // lowest-index one whose subtree accepts — identical to the sequential
    // order — so the witness does not depend on the worker count.
    struct Branch {
      int occ, from, to;
    };
    std::vector<Branch> branches;
    for (int occ = 0; occ < m; ++occ)
      for (int from = 0; from < n; ++from)
        for (int to = 0; to < n; ++to)
          if (from != to) branches.push_back({occ, from, to});

    std::atomic<long long> best(LLONG_MAX);
    std::atomic<std::size_t> cursor(0);
    std::atomic<long long> total_nodes(1);
    std::mutex found_mu;
    std::vector<std::pair<long long, std::vector<Permutation>>> found;

    auto worker = [&]() {
      for (;;) {
        std::size_t b = cursor.fetch_add(1);
        if (b >= branches.size()) return;
        if (static_cast<long long>(b) > best.load()) continue;
        const Branch& br = branches[b];
        MoveSearch s;
        s.k = inst.k;
        s.state = inst.perms;
        s.trail.assign(m, {});
        s.cancel_below = &best;
        s.branch_index = static_cast<long long>(b);
        Permutation cand = apply_move(s.state[br.occ], br.from, br.to);
        s.trail[br.occ].push_back(std::move(s.state[br.occ]));
        s.state[br.occ] = std::move(cand);
        bool hit = s.dfs(br.occ, t - 1);
        total_nodes.fetch_add(s.nodes + 1);
        if (hit) {
          long long prev = best.load();
          while (static_cast<long long>(b) < prev &&
                 !best.compare_exchange_weak(prev, static_cast<long long>(b))) {
          }
          std::lock_guard<std::mutex> lk(found_mu);
          found.emplace_back(static_cast<long long>(b), s.state);
        }
      }
    };
    int nw = std::min(threads, std::max(1, static_cast<int>(branches.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    nodes += total_nodes.load();

    if (!found.empty()) {
      auto it = std::min_element(
          found.begin(), found.end(),
          [](const auto& a, const auto& b) { return a.first < b.first; });
      return accept_from_state(inst, it->second, t, nodes);
    }
  }

  KMedianResult res;
  res.verdict = Verdict::no;
  res.stats.nodes_expanded = nodes;
  return res;
}

namespace {

Permutation lift_median(const Permutation& med, const KernelComponent& kc,
                        const KernelReport& rep, int orig_n) {
  int kernel_n = rep.core_base + rep.max_core;
  std::vector<int> orig_of(kernel_n, -1);
  std::vector<int> con_of(kernel_n, -1);
  for (int sym = 0; sym < orig_n; ++sym)
    if (kc.relabel[sym] >= 0) orig_of[kc.relabel[sym]] = sym;
  for (std::size_t j = 0; j < kc.contractions.size(); ++j)
    for (int id : kc.contractions[j].replacement)
      con_of[id] = static_cast<int>(j);

  std::vector<int> seq;
  seq.reserve(orig_n);
  std::vector<char> con_done(kc.contractions.size(), 0);
  for (int id : med.seq()) {
    if (id < rep.core_base || id >= rep.core_base + kc.core_size)
      continue;  // component tag or padding symbol
    if (orig_of[id] >= 0) {
      seq.push_back(orig_of[id]);
    } else {
      int j = con_of[id];
      if (j < 0) throw std::logic_error("lift_median: unmapped symbol");
      if (con_done[j]) continue;
      con_done[j] = 1;
      const auto& run = kc.contractions[j].original;
      seq.insert(seq.end(), run.begin(), run.end());
    }
  }
  if (static_cast<int>(seq.size()) != orig_n)
    throw std::logic_error("lift_median: wrong length");
  return Permutation(std::move(seq));
}

}  // namespace

KMedianResult solve_kmedian(const Instance& inst, int threads) {
  inst.validate();
  auto [kern, rep] = kernelize(inst);

  if (rep.trivial_no) {
    KMedianResult res;
    res.verdict = Verdict::no;
    return res;
  }

  KMedianResult kr = xp_solve(kern, threads);
  if (kr.verdict != Verdict::yes) {
    KMedianResult res;
    res.verdict = Verdict::no;
    res.stats = kr.stats;
    return res;
  }
  if (inst.m() == 0) {
    kr.medians.clear();
    kr.assignment.clear();
    return kr;
  }

  // Map each used reduced median back to the original alphabet through its
  // component's relabeling and contractions.
  int km = kern.m();
  std::vector<Permutation> lifted;
  std::vector<std::vector<int>> cluster_occ;  // kernel occurrences per median
  for (std::size_t c = 0; c < kr.medians.size(); ++c) {
    std::vector<int> occs;
    for (int j = 0; j < km; ++j)
      if (kr.assignment[j] == static_cast<int>(c)) occs.push_back(j);
    if (occs.empty()) continue;
    int ci = rep.occurrence_component[occs[0]];
    lifted.push_back(
        lift_median(kr.medians[c], rep.components[ci], rep, inst.n()));
    cluster_occ.push_back(std::move(occs));
  }

  auto chk = verify_median_solution(inst, lifted);
  if (!chk.ok || chk.cost != kr.cost) {
    // A reduced median may interleave symbols across contracted runs in a
    // way the direct expansion does not reproduce; re-solve each cluster on
    // its original members with that cluster's share of the budget.
    std::vector<Permutation> redo;
    for (std::size_t c = 0; c < lifted.size(); ++c) {
      long long share = 0;
      std::vector<int> medseq;
      Instance sub;
      sub.table = inst.table;
      sub.k = 1;
      for (int j : cluster_occ[c]) {
        const Permutation& med = kr.medians[kr.assignment[j]];
        share += ulam_distance(kern.perms[j], med);
        sub.perms.push_back(inst.perms[rep.kept_occurrences[j]]);
      }
      sub.d = static_cast<int>(share);
      KMedianResult sres = xp_solve(sub, threads);
      if (sres.verdict != Verdict::yes)
        throw std::logic_error("solve_kmedian: cluster re-solve infeasible");
      redo.push_back(sres.medians[0]);
    }
    lifted = std::move(redo);
    chk = verify_median_solution(inst, lifted);
    if (!chk.ok || chk.cost != kr.cost)
      throw std::logic_error("solve_kmedian: lifted solution fails check");
  }

  KMedianResult res;
  res.verdict = Verdict::yes;
  res.medians = std::move(lifted);
  res.assignment = chk.assignment;
  res.cost = chk.cost;
  res.stats = kr.stats;
  return res;
}

}  // namespace ulam
