#include "ulam/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace ulam {

namespace {

unsigned long long env_work_limit() {
  const char* s = std::getenv("ULAM_WORK_LIMIT");
  if (!s) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s) return 0;
  return v;
}

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Number of k-multisets over a ground set of (approximately) p elements.
double multiset_count(double p, int k) {
  double c = 1;
  for (int i = 0; i < k; ++i) c = c * (p + i) / (i + 1);
  return c;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  std::vector<Permutation> out;
  do {
    out.emplace_back(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

std::string state_key(const std::vector<int>& seq) {
  std::string k;
  k.reserve(seq.size());
  for (int x : seq) k.push_back(static_cast<char>(x));
  return k;
}

void check_instance_alphabet(const Instance& inst) {
  inst.validate();
}

}  // namespace

OracleGuards OracleGuards::from_env() {
  OracleGuards g;
  g.work_limit = env_work_limit();
  if (g.work_limit > 0 && g.work_limit > g.state_limit_exact)
    g.state_limit_exact = g.work_limit;
  return g;
}

std::optional<int> bfs_ulam_distance(const Permutation& a, const Permutation& b,
                                     int cap, const OracleGuards& g) {
  if (a.size() != b.size())
    throw std::invalid_argument("permutations are over different alphabet sizes");
  if (cap < 0) throw std::invalid_argument("cap must be >= 0");
  const int n = a.size();
  if (n > g.max_n_bfs)
    throw guard_error("bfs_ulam_distance guard: n > " + std::to_string(g.max_n_bfs));
  if (cap > g.max_cap_bfs)
    throw guard_error("bfs_ulam_distance guard: cap > " + std::to_string(g.max_cap_bfs));
  if (a == b) return 0;
  if (cap == 0) return std::nullopt;

  std::unordered_set<std::string> visited;
  std::vector<std::vector<int>> frontier{a.seq()};
  visited.insert(state_key(a.seq()));
  const std::string target = state_key(b.seq());
  for (int depth = 1; depth <= cap; ++depth) {
    std::vector<std::vector<int>> next;
    for (const auto& seq : frontier) {
      for (int from = 0; from < n; ++from) {
        for (int to = 0; to < n; ++to) {
          if (from == to) continue;
          std::vector<int> s;
          s.reserve(n);
          for (int i = 0; i < n; ++i)
            if (i != from) s.push_back(seq[i]);
          s.insert(s.begin() + to, seq[from]);
          std::string key = state_key(s);
          if (key == target) return depth;
          if (visited.insert(std::move(key)).second) next.push_back(std::move(s));
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

namespace {

// Shared enumeration driver: visits k-multisets of S_n in non-decreasing
// lexicographic index order and stops when visit() returns true.
template <typename Visit>
void for_each_multiset(const std::vector<Permutation>& space, int k, Visit visit) {
  std::vector<int> chosen;
  // Iterative non-recursive enumeration keeps the order obvious.
  std::vector<int> stack{0};
  while (true) {
    if (static_cast<int>(chosen.size()) == k) {
      if (visit(chosen)) return;
      // backtrack
      while (!chosen.empty()) {
        int last = chosen.back();
        chosen.pop_back();
        if (last + 1 < static_cast<int>(space.size())) {
          chosen.push_back(last + 1);
          break;
        }
      }
      if (chosen.empty()) return;
    } else {
      int start = chosen.empty() ? 0 : chosen.back();
      if (start >= static_cast<int>(space.size())) return;
      chosen.push_back(start);
    }
  }
}

std::vector<int> nearest_assignment(const std::vector<std::vector<int>>& dist,
                                    const std::vector<int>& chosen, int m) {
  std::vector<int> assign(m, -1);
  for (int i = 0; i < m; ++i) {
    int best = std::numeric_limits<int>::max();
    for (int c = 0; c < static_cast<int>(chosen.size()); ++c) {
      int v = dist[i][chosen[c]];
      if (v < best) {
        best = v;
        assign[i] = c;
      }
    }
  }
  return assign;
}

}  // namespace

CenterVerdict brute_kcenter(const Instance& inst, const OracleGuards& g) {
  check_instance_alphabet(inst);
  const int n = inst.n();
  const int m = inst.m();
  const int k = inst.k;
  if (g.work_limit > 0) {
    double work = multiset_count(factorial(n), k) * std::max(m, 1);
    if (work > static_cast<double>(g.work_limit))
      throw guard_error("brute_kcenter guard: estimated work exceeds ULAM_WORK_LIMIT");
  } else {
    if (n > g.max_n_center)
      throw guard_error("brute_kcenter guard: n > " + std::to_string(g.max_n_center));
    if (k > g.max_k)
      throw guard_error("brute_kcenter guard: k > " + std::to_string(g.max_k));
  }

  CenterVerdict v;
  if (m == 0) {
    v.feasible = true;
    v.radius = 0;
    return v;
  }
  if (k == 0) return v;

  const auto space = all_permutations(n);
  std::vector<std::vector<int>> dist(m, std::vector<int>(space.size()));
  for (int i = 0; i < m; ++i)
    for (size_t j = 0; j < space.size(); ++j)
      dist[i][j] = ulam_distance(inst.perms[i], space[j]);

  for_each_multiset(space, k, [&](const std::vector<int>& chosen) {
    int radius = 0;
    for (int i = 0; i < m; ++i) {
      int best = std::numeric_limits<int>::max();
      for (int idx : chosen) best = std::min(best, dist[i][idx]);
      radius = std::max(radius, best);
      if (radius > inst.d) return false;
    }
    v.feasible = true;
    v.radius = radius;
    for (int idx : chosen) v.centers.push_back(space[idx]);
    v.assignment = nearest_assignment(dist, chosen, m);
    return true;
  });
  return v;
}

MedianVerdict brute_kmedian(const Instance& inst, const OracleGuards& g) {
  check_instance_alphabet(inst);
  const int n = inst.n();
  const int m = inst.m();
  const int k = inst.k;
  if (g.work_limit > 0) {
    double work = multiset_count(factorial(n), k) * std::max(m, 1);
    if (work > static_cast<double>(g.work_limit))
      throw guard_error("brute_kmedian guard: estimated work exceeds ULAM_WORK_LIMIT");
  } else {
    if (n > g.max_n_median)
      throw guard_error("brute_kmedian guard: n > " + std::to_string(g.max_n_median));
    if (k > g.max_k)
      throw guard_error("brute_kmedian guard: k > " + std::to_string(g.max_k));
  }

  MedianVerdict v;
  if (m == 0) {
    v.feasible = true;
    v.cost = 0;
    return v;
  }
  if (k == 0) return v;

  const auto space = all_permutations(n);
  std::vector<std::vector<int>> dist(m, std::vector<int>(space.size()));
  for (int i = 0; i < m; ++i)
    for (size_t j = 0; j < space.size(); ++j)
      dist[i][j] = ulam_distance(inst.perms[i], space[j]);

  long long best_cost = std::numeric_limits<long long>::max();
  std::vector<int> best_chosen;
  for_each_multiset(space, k, [&](const std::vector<int>& chosen) {
    long long cost = 0;
    for (int i = 0; i < m; ++i) {
      int best = std::numeric_limits<int>::max();
      for (int idx : chosen) best = std::min(best, dist[i][idx]);
      cost += best;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_chosen = chosen;
    }
    return false;  // keep scanning: the optimum is wanted, not the first hit
  });

  if (best_cost <= inst.d) {
    v.feasible = true;
    v.cost = best_cost;
    for (int idx : best_chosen) v.medians.push_back(space[idx]);
    v.assignment = nearest_assignment(dist, best_chosen, m);
  }
  return v;
}

namespace {

// Feasibility search for exact_kcenter: is there a permutation within d of
// every member of the subset? Any such center is at most d moves from the
// first member, so walk the move ball around it, cutting states that cannot
// get back within d of some member with the budget left.
std::optional<Permutation> subset_center(const std::vector<Permutation>& members, int d,
                                         unsigned long long state_limit) {
  const auto within_all = [&](const Permutation& c) {
    for (const auto& p : members)
      if (!distance_at_most(c, p, d)) return false;
    return true;
  };
  if (within_all(members[0])) return members[0];
  const int n = members[0].size();
  std::unordered_set<std::string> visited;
  std::vector<Permutation> frontier{members[0]};
  visited.insert(state_key(members[0].seq()));
  unsigned long long states = 1;
  for (int depth = 1; depth <= d; ++depth) {
    const int budget_left = d - depth;
    std::vector<Permutation> next;
    for (const auto& c : frontier) {
      for (int from = 0; from < n; ++from) {
        for (int to = 0; to < n; ++to) {
          if (from == to) continue;
          Permutation cand = apply_move(c, from, to);
          std::string key = state_key(cand.seq());
          if (!visited.insert(std::move(key)).second) continue;
          if (++states > state_limit)
            throw guard_error("exact_kcenter guard: move-ball state limit exceeded");
          bool ok = true, prune = false;
          for (const auto& p : members) {
            int dist = ulam_distance(cand, p);
            if (dist > d) ok = false;
            if (dist > d + budget_left) {
              prune = true;
              break;
            }
          }
          if (ok) return cand;
          if (!prune) next.push_back(std::move(cand));
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

}  // namespace

CenterVerdict exact_kcenter(const Instance& inst, const OracleGuards& g) {
  check_instance_alphabet(inst);
  const int m = inst.m();
  CenterVerdict v;
  if (m == 0) {
    v.feasible = true;
    v.radius = 0;
    return v;
  }
  if (inst.k == 0) return v;

  // Duplicates share a cluster, so work on distinct inputs.
  std::vector<Permutation> distinct;
  std::vector<int> input_to_distinct(m, -1);
  for (int i = 0; i < m; ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), inst.perms[i]);
    if (it == distinct.end()) {
      input_to_distinct[i] = static_cast<int>(distinct.size());
      distinct.push_back(inst.perms[i]);
    } else {
      input_to_distinct[i] = static_cast<int>(it - distinct.begin());
    }
  }
  const int D = static_cast<int>(distinct.size());
  if (D > g.max_distinct_exact)
    throw guard_error("exact_kcenter guard: distinct inputs > " +
                      std::to_string(g.max_distinct_exact));

  if (inst.k >= D) {
    v.feasible = true;
    v.centers = distinct;
    v.radius = 0;
    auto chk = verify_center_solution(inst, v.centers);
    v.assignment = chk.assignment;
    return v;
  }

  // Subsets whose members are pairwise within 2d are the only ones that can
  // share a center (triangle inequality).
  std::vector<unsigned> close_row(D, 0);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      if (distance_at_most(distinct[i], distinct[j], 2 * inst.d))
        close_row[i] |= 1u << j;

  const unsigned full = (D == 32) ? ~0u : ((1u << D) - 1);
  std::vector<bool> pairwise_ok(full + 1, false);
  pairwise_ok[0] = true;
  for (unsigned mask = 1; mask <= full; ++mask) {
    unsigned low = mask & (~mask + 1);
    int b = __builtin_ctz(mask);
    unsigned rest = mask ^ low;
    pairwise_ok[mask] = pairwise_ok[rest] && ((close_row[b] & rest) == rest);
  }

  std::unordered_map<unsigned, std::optional<Permutation>> feasible_memo;
  const auto feasible = [&](unsigned mask) -> const std::optional<Permutation>& {
    auto it = feasible_memo.find(mask);
    if (it != feasible_memo.end()) return it->second;
    std::vector<Permutation> members;
    for (int i = 0; i < D; ++i)
      if (mask & (1u << i)) members.push_back(distinct[i]);
    std::optional<Permutation> c;
    if (members.size() == 1)
      c = members[0];
    else
      c = subset_center(members, inst.d, g.state_limit_exact);
    return feasible_memo.emplace(mask, std::move(c)).first->second;
  };

  // Minimum number of feasible subsets needed to cover a mask.
  const int INF = std::numeric_limits<int>::max() / 2;
  std::unordered_map<unsigned, int> cover_memo;
  const std::function<int(unsigned)> min_cover = [&](unsigned mask) -> int {
    if (mask == 0) return 0;
    auto it = cover_memo.find(mask);
    if (it != cover_memo.end()) return it->second;
    int b = __builtin_ctz(mask);
    unsigned others = mask & ~(1u << b);
    int best = INF;
    // Enumerate subsets of `others`, always together with bit b.
    unsigned sub = others;
    while (true) {
      unsigned s = sub | (1u << b);
      if (pairwise_ok[s] && feasible(s).has_value()) {
        int rest = min_cover(mask & ~s);
        if (rest + 1 < best) best = rest + 1;
      }
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
    cover_memo[mask] = best;
    return best;
  };

  if (min_cover(full) > inst.k) return v;

  // Reconstruct one optimal cover for the witness.
  unsigned mask = full;
  std::vector<Permutation> centers;
  while (mask != 0) {
    int b = __builtin_ctz(mask);
    unsigned others = mask & ~(1u << b);
    unsigned sub = others;
    bool found = false;
    while (!found) {
      unsigned s = sub | (1u << b);
      if (pairwise_ok[s] && feasible(s).has_value() &&
          min_cover(mask) == min_cover(mask & ~s) + 1) {
        centers.push_back(*feasible(s));
        mask &= ~s;
        found = true;
      }
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
    if (!found) throw std::logic_error("exact_kcenter: cover reconstruction failed");
  }

  v.feasible = true;
  v.centers = std::move(centers);
  auto chk = verify_center_solution(inst, v.centers);
  if (!chk.ok) throw std::logic_error("exact_kcenter: witness failed verification");
  v.radius = chk.radius;
  v.assignment = chk.assignment;
  return v;
}

CenterCheck verify_center_solution(const Instance& inst,
                                   const std::vector<Permutation>& centers) {
  check_instance_alphabet(inst);
  for (const auto& c : centers)
    if (c.size() != inst.n())
      throw std::invalid_argument("center is over a different alphabet size");
  CenterCheck r;
  if (centers.empty()) {
    r.ok = inst.m() == 0;
    r.radius = 0;
    return r;
  }
  r.radius = 0;
  r.assignment.assign(inst.m(), -1);
  for (int i = 0; i < inst.m(); ++i) {
    int best = std::numeric_limits<int>::max();
    for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
      int v = ulam_distance(inst.perms[i], centers[c]);
      if (v < best) {
        best = v;
        r.assignment[i] = c;
      }
    }
    r.radius = std::max(r.radius, best);
  }
  r.ok = r.radius <= inst.d;
  return r;
}

MedianCheck verify_median_solution(const Instance& inst,
                                   const std::vector<Permutation>& medians) {
  check_instance_alphabet(inst);
  for (const auto& c : medians)
    if (c.size() != inst.n())
      throw std::invalid_argument("median is over a different alphabet size");
  MedianCheck r;
  if (medians.empty()) {
    r.ok = inst.m() == 0;
    r.cost = 0;
    return r;
  }
  r.cost = 0;
  r.assignment.assign(inst.m(), -1);
  for (int i = 0; i < inst.m(); ++i) {
    int best = std::numeric_limits<int>::max();
    for (int c = 0; c < static_cast<int>(medians.size()); ++c) {
      int v = ulam_distance(inst.perms[i], medians[c]);
      if (v < best) {
        best = v;
        r.assignment[i] = c;
      }
    }
    r.cost += best;
  }
  r.ok = r.cost <= inst.d;
  return r;
}

}  // namespace ulam
