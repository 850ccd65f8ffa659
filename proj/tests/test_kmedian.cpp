#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "ulam/io.hpp"
#include "ulam/kmedian.hpp"
#include "ulam/oracles.hpp"

using namespace ulam;
using testutil::perm;

namespace {

Instance make_inst(std::vector<Permutation> perms, int k, int d, int n = -1) {
  Instance inst;
  if (n < 0) n = perms.empty() ? 2 : perms[0].size();
  inst.table = SymbolTable::lettered(n);
  inst.perms = std::move(perms);
  inst.k = k;
  inst.d = d;
  return inst;
}

}  // namespace

TEST_CASE("pair scheme encode") {
  SymbolTable t = SymbolTable::numbered(10);
  auto f = pair_scheme_encode("00101");
  CHECK(perm_tokens(f, t) == "1 2 3 4 6 5 7 8 10 9");
  CHECK(pair_scheme_encode("0000") == Permutation::identity(8));
  CHECK(pair_scheme_encode("1") == Permutation({1, 0}));
  CHECK_THROWS_AS(pair_scheme_encode(""), std::invalid_argument);
  CHECK_THROWS_AS(pair_scheme_encode("02"), std::invalid_argument);
}

TEST_CASE("pair scheme decode") {
  std::string bits;
  REQUIRE(pair_scheme_decode(pair_scheme_encode("00101"), bits));
  CHECK(bits == "00101");
  std::mt19937_64 rng(4);
  for (int len = 1; len <= 10; ++len) {
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(rng() % 2 ? '1' : '0');
    std::string back;
    REQUIRE(pair_scheme_decode(pair_scheme_encode(s), back));
    CHECK(back == s);
  }
  // pair {0,1} split across non-pair positions
  CHECK(!pair_scheme_decode(Permutation({0, 2, 1, 3}), bits));
  CHECK(!pair_scheme_decode(Permutation({0, 1, 2}), bits));
}

TEST_CASE("hamming equals move distance after encoding") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int len = 1 + static_cast<int>(rng() % 10);
    std::string s, t;
    int hamming = 0;
    for (int i = 0; i < len; ++i) {
      char a = rng() % 2 ? '1' : '0';
      char b = rng() % 2 ? '1' : '0';
      s.push_back(a);
      t.push_back(b);
      if (a != b) ++hamming;
    }
    CHECK(ulam_distance(pair_scheme_encode(s), pair_scheme_encode(t)) ==
          hamming);
  }
}

TEST_CASE("connectivity components") {
  // single permutation
  CHECK(connectivity_components({perm("ABC")}, 1) ==
        std::vector<std::vector<int>>{{0}});
  // distance exactly d: one component
  CHECK(connectivity_components({perm("ABC"), perm("BCA")}, 1) ==
        std::vector<std::vector<int>>{{0, 1}});
  // distance d+1: split
  CHECK(connectivity_components({perm("ABC"), perm("CBA")}, 1) ==
        std::vector<std::vector<int>>{{0}, {1}});
  // chain: a-b close, b-c close, a-c far -> still one component
  auto comps = connectivity_components(
      {perm("ABCD"), perm("BACD"), perm("BADC")}, 1);
  CHECK(ulam_distance(perm("ABCD"), perm("BADC")) == 2);
  CHECK(comps == std::vector<std::vector<int>>{{0, 1, 2}});
  // duplicates share a component with their twin
  auto dup = connectivity_components(
      {perm("ABCD"), perm("DCBA"), perm("ABCD")}, 1);
  CHECK(dup == std::vector<std::vector<int>>{{0, 2}, {1}});
}

TEST_CASE("maximal common substrings") {
  auto whole = maximal_common_substrings({perm("ABCD")});
  CHECK(whole == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  auto some = maximal_common_substrings({perm("ABCD"), perm("ABDC")});
  CHECK(some == std::vector<std::vector<int>>{{0, 1}, {2}, {3}});
  auto none = maximal_common_substrings({perm("ABC"), perm("CBA")});
  CHECK(none == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK_THROWS_AS(maximal_common_substrings({}), std::invalid_argument);
}

TEST_CASE("xp solver basics") {
  auto triple = xp_solve(make_inst({perm("ABC"), perm("ABC"), perm("ABC")}, 1, 0));
  CHECK(triple.verdict == Verdict::yes);
  CHECK(triple.cost == 0);
  CHECK(triple.medians == std::vector<Permutation>{perm("ABC")});

  auto merge = xp_solve(make_inst({perm("ABC"), perm("BAC")}, 1, 1));
  CHECK(merge.verdict == Verdict::yes);
  CHECK(merge.cost == 1);

  // k+d+1 distinct permutations cannot be merged with d moves
  auto no = xp_solve(make_inst(
      {perm("ABCD"), perm("DCBA"), perm("BADC"), perm("CDAB")}, 1, 2));
  CHECK(no.verdict == Verdict::no);

  auto empty = xp_solve(make_inst({}, 1, 0));
  CHECK(empty.verdict == Verdict::yes);
  CHECK(empty.cost == 0);

  CHECK(xp_solve(make_inst({perm("AB")}, 0, 1)).verdict == Verdict::no);
}

TEST_CASE("xp solver matches brute oracle including cost") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = testutil::random_instance(rng, 4, 4, 2, 2);
    auto expect = brute_kmedian(inst);
    auto got = xp_solve(inst);
    REQUIRE(got.verdict == (expect.feasible ? Verdict::yes : Verdict::no));
    if (expect.feasible) {
      CHECK(got.cost == expect.cost);
      auto chk = verify_median_solution(inst, got.medians);
      CHECK(chk.ok);
      CHECK(chk.cost == got.cost);
    }
  }
}

TEST_CASE("xp solver multithreaded is deterministic") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = testutil::random_instance(rng, 4, 3, 1, 2);
    auto a = xp_solve(inst, 1);
    auto b = xp_solve(inst, 4);
    REQUIRE(a.verdict == b.verdict);
    if (a.verdict == Verdict::yes) {
      CHECK(a.medians == b.medians);
      CHECK(a.assignment == b.assignment);
      CHECK(a.cost == b.cost);
    }
  }
}

TEST_CASE("kernelize trivial no rule") {
  // three distinct inputs with k=1, d=1: more than k+d distinct
  auto [kern, rep] = kernelize(
      make_inst({perm("ABC"), perm("BCA"), perm("CAB")}, 1, 1));
  CHECK(rep.trivial_no);
  CHECK(kern.m() == 2);
  CHECK(kern.k == 1);
  CHECK(kern.d == 0);
  CHECK(xp_solve(kern).verdict == Verdict::no);
}

TEST_CASE("kernelize multiplicity cap") {
  std::vector<Permutation> perms(6, perm("ABC"));  // d+5 copies at d=1
  auto [kern, rep] = kernelize(make_inst(perms, 1, 1));
  CHECK(!rep.trivial_no);
  CHECK(kern.m() == 2);  // d+1 copies survive
  CHECK(rep.removed_duplicates == 4);
  CHECK(rep.kept_occurrences == std::vector<int>{0, 1});
}

TEST_CASE("kernelize contraction and idempotence") {
  // shared run CDEF (length 4 > d+1 = 2) contracts to two fresh symbols
  auto inst = make_inst({perm("ABCDEF"), perm("BACDEF")}, 2, 1);
  auto [kern, rep] = kernelize(inst);
  CHECK(kern.n() == 4);
  CHECK(kern.m() == 2);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].contractions.size() == 1);
  CHECK(rep.components[0].contractions[0].original ==
        std::vector<int>{2, 3, 4, 5});
  CHECK(rep.components[0].contractions[0].replacement.size() == 2);
  CHECK(rep.prefix_symbols == 0);

  // single-component kernels are fixed points
  auto [kern2, rep2] = kernelize(kern);
  CHECK(kern2.perms == kern.perms);
  CHECK(kern2.n() == kern.n());
  for (const auto& kc : rep2.components) CHECK(kc.contractions.empty());
}

TEST_CASE("kernelize components get separating prefixes") {
  // two far-apart groups, each with a long shared run; k + d must stay at or
  // above the distinct count or the trivial rule fires first
  auto a1 = perm("ABCDEFGH");
  auto a2 = perm("BACDEFGH");
  auto b1 = perm("HGFEDCBA");
  auto b2 = perm("GHFEDCBA");
  auto inst = make_inst({a1, a2, b1, b2}, 2, 2);
  auto comps = connectivity_components({a1, a2, b1, b2}, 2);
  REQUIRE(comps.size() == 2);

  auto [kern, rep] = kernelize(inst);
  REQUIRE(!rep.trivial_no);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.prefix_symbols == 2 * 3 * 2);  // 2(d+1)r
  CHECK(rep.components[0].prefix_bits == "111000");
  CHECK(rep.components[1].prefix_bits == "000111");
  // cross-component kernel inputs stay far apart
  CHECK(ulam_distance(kern.perms[0], kern.perms[2]) > kern.d);
  CHECK(ulam_distance(kern.perms[1], kern.perms[3]) > kern.d);
  // suffix padding gives every kernel permutation the full alphabet
  for (const auto& p : kern.perms) CHECK(p.size() == kern.n());
}

TEST_CASE("kernel preserves verdict and lifts witnesses") {
  std::mt19937_64 rng(8080);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = testutil::random_instance(rng, 6, 5, 2, 2);
    auto [kern, rep] = kernelize(inst);
    auto direct = xp_solve(inst);
    auto solved = solve_kmedian(inst);
    REQUIRE(direct.verdict == solved.verdict);
    if (!rep.trivial_no)
      CHECK(kern.m() <= (inst.k + inst.d) * (inst.d + 1));
    if (solved.verdict == Verdict::yes) {
      CHECK(solved.cost == direct.cost);
      auto chk = verify_median_solution(inst, solved.medians);
      CHECK(chk.ok);
      CHECK(chk.cost == solved.cost);
    }
  }
}

TEST_CASE("solve kmedian basics") {
  auto res = solve_kmedian(make_inst({perm("ABC"), perm("ABC"), perm("ABC")}, 1, 0));
  CHECK(res.verdict == Verdict::yes);
  CHECK(res.medians == std::vector<Permutation>{perm("ABC")});
  CHECK(res.cost == 0);

  CHECK(solve_kmedian(make_inst({perm("ABC"), perm("BCA"), perm("CAB")}, 1, 1))
            .verdict == Verdict::no);

  auto empty = solve_kmedian(make_inst({}, 1, 0));
  CHECK(empty.verdict == Verdict::yes);
}
