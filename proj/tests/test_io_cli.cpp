#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "ulam/cli.hpp"
#include "ulam/io.hpp"

using namespace ulam;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("ulam");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ulam_test_" + name))
      .string();
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  std::istringstream ss(text);
  try {
    parse_instance(ss);
    FAIL_CHECK("no parse error for: " << text);
  } catch (const std::invalid_argument& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  "message was: " << e.what());
  }
}

// Minimal structural checker for the subset of json-schema the result schema
// uses: type, enum, minimum, required, properties, additionalProperties,
// items, and #/definitions refs.
bool schema_accepts(const json& value, const json& schema_in, const json& root,
                    std::string& why) {
  const json* schema = &schema_in;
  if (schema->contains("$ref")) {
    std::string ref = (*schema)["$ref"];
    schema = &root["definitions"][ref.substr(ref.rfind('/') + 1)];
  }
  if (schema->contains("type")) {
    std::string t = (*schema)["type"];
    bool ok = (t == "object" && value.is_object()) ||
              (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "boolean" && value.is_boolean());
    if (!ok) {
      why = "type should be " + t;
      return false;
    }
  }
  if (schema->contains("enum")) {
    bool hit = false;
    for (const auto& e : (*schema)["enum"]) hit = hit || e == value;
    if (!hit) {
      why = "value " + value.dump() + " outside enum";
      return false;
    }
  }
  if (schema->contains("minimum") && value.is_number() &&
      value.get<double>() < (*schema)["minimum"].get<double>()) {
    why = "below minimum";
    return false;
  }
  if (value.is_object()) {
    if (schema->contains("required"))
      for (const auto& key : (*schema)["required"])
        if (!value.contains(key.get<std::string>())) {
          why = "missing key " + key.get<std::string>();
          return false;
        }
    bool closed = schema->contains("additionalProperties") &&
                  (*schema)["additionalProperties"] == json(false);
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (schema->contains("properties") &&
          (*schema)["properties"].contains(it.key())) {
        if (!schema_accepts(it.value(), (*schema)["properties"][it.key()],
                            root, why)) {
          why = it.key() + ": " + why;
          return false;
        }
      } else if (closed) {
        why = "unexpected key " + it.key();
        return false;
      }
    }
  }
  if (value.is_array() && schema->contains("items"))
    for (const auto& item : value)
      if (!schema_accepts(item, (*schema)["items"], root, why)) return false;
  return true;
}

void check_against_schema(const std::string& doc_text) {
  json doc = json::parse(doc_text);
  json schema = json::parse(read_file(ULAM_SCHEMA_PATH));
  std::string why;
  CHECK_MESSAGE(schema_accepts(doc, schema, schema, why), why);
}

}  // namespace

TEST_CASE("instance text round trip") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = testutil::random_instance(rng, 6, 5, 2, 2);
    std::string text = emit_instance(inst);
    std::istringstream ss(text);
    auto back = parse_instance(ss);
    CHECK(emit_instance(back) == text);
    CHECK(back.perms == inst.perms);
    CHECK(back.k == inst.k);
    CHECK(back.d == inst.d);
  }
  // comments and blank lines are skipped
  std::istringstream ss(
      "# sample\n\nu 3 2 1 1\n  A B C\nA B C\n# inner note\nB A C\n");
  auto inst = parse_instance(ss);
  CHECK(inst.m() == 2);
  CHECK(inst.perms[1] == testutil::perm("BAC"));
}

TEST_CASE("instance parse errors carry line numbers") {
  expect_parse_error("", "missing header");
  expect_parse_error("x 2 1 1 0\nA B\nA B\n", "header must be");
  expect_parse_error("u 2 1 1 zero\nA B\nA B\n", "not an integer");
  expect_parse_error("u 2 1 -1 0\nA B\nA B\n", "negative");
  expect_parse_error("u 3 1 1 0\nA B\nA B C\n", "symbol line has 2");
  expect_parse_error("u 2 1 1 0\nA A\nA A\n", "line 2");
  expect_parse_error("u 2 2 1 0\nA B\nA B\n", "missing permutation line 2");
  expect_parse_error("u 2 1 1 0\nA B\nA C\n", "unknown symbol: C");
  expect_parse_error("u 2 1 1 0\nA B\nA\n", "line 3");
}

TEST_CASE("graph text round trip") {
  std::istringstream ss("p 3 2\ne 1 2\ne 3 2\nc 1 1\nc 2 2\nc 3 1\n");
  auto g = parse_graph(ss);
  CHECK(g.vertex_count == 3);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(g.coloring == std::vector<int>{0, 1, 0});
  std::istringstream ss2(emit_graph(g));
  auto g2 = parse_graph(ss2);
  CHECK(g2.edges == g.edges);
  CHECK(g2.coloring == g.coloring);

  auto bad = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      parse_graph(in);
      FAIL_CHECK("no parse error for: " << text);
    } catch (const std::invalid_argument& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                    "message was: " << e.what());
    }
  };
  bad("p 2 1\ne 1 2\ne 1 2\n", "announced");
  bad("p 2 2\ne 1 2\ne 2 1\n", "duplicate");
  bad("p 2 1\ne 1 1\n", "self-loop");
  bad("p 2 1\ne 1 3\n", "out of range");
  bad("p 2 1\ne 1 2\nc 1 0\n", "1-based");
  bad("p 2 1\ne 1 2\nc 1 1\n", "has no color");
}

TEST_CASE("solution text round trip") {
  auto table = SymbolTable::lettered(3);
  std::vector<Permutation> sol = {testutil::perm("BAC"), testutil::perm("CAB")};
  std::istringstream ss(emit_solution(sol, table));
  CHECK(parse_solution(ss, table) == sol);
  std::istringstream bad("B A X\n");
  CHECK_THROWS_AS(parse_solution(bad, table), std::invalid_argument);
}

TEST_CASE("cli dist") {
  auto r = cli({"dist", "A B C", "B C A"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");

  auto fa = tmp_path("dist_a.txt"), fb = tmp_path("dist_b.txt");
  write_file(fa, "# left\nA B C D\n");
  write_file(fb, "D C B A\n");
  auto rf = cli({"dist", fa, fb});
  CHECK(rf.code == 0);
  CHECK(rf.out == "3\n");

  auto bad = cli({"dist", "A B", "A B C"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("cli solve exit codes") {
  auto yes_path = tmp_path("solve_yes.inst");
  write_file(yes_path, "u 3 2 1 1\nA B C\nA B C\nB A C\n");
  auto no_path = tmp_path("solve_no.inst");
  write_file(no_path, "u 3 2 1 0\nA B C\nA B C\nB C A\n");

  CHECK(cli({"solve", "center", yes_path}).code == 0);
  CHECK(cli({"solve", "center", no_path}).code == 1);
  CHECK(cli({"solve", "median", yes_path}).code == 0);
  CHECK(cli({"solve", "median", no_path}).code == 1);
  CHECK(cli({"solve", "center", yes_path, "--oracle"}).code == 0);
  CHECK(cli({"solve", "median", no_path, "--oracle"}).code == 1);
  CHECK(cli({"solve", "center", tmp_path("nope.inst")}).code == 2);
  CHECK(cli({"solve", "both", yes_path}).code == 2);

  auto human = cli({"solve", "center", yes_path});
  CHECK(human.out.find("verdict: yes") != std::string::npos);
  CHECK(human.out.find("radius:") != std::string::npos);
}

TEST_CASE("cli solve json matches the published schema") {
  auto yes_path = tmp_path("json_yes.inst");
  write_file(yes_path, "u 3 2 1 1\nA B C\nA B C\nB A C\n");
  auto r = cli({"solve", "center", yes_path, "--json"});
  REQUIRE(r.code == 0);
  check_against_schema(r.out);
  json doc = json::parse(r.out);
  CHECK(doc["problem"] == "center");
  CHECK(doc["verdict"] == "yes");
  CHECK(doc["parameters"]["n"] == 3);
  CHECK(doc["witness"].contains("centers"));
  CHECK(doc["witness"]["radius"].get<int>() <= 1);

  auto no_path = tmp_path("json_no.inst");
  write_file(no_path, "u 3 2 1 0\nA B C\nA B C\nB C A\n");
  auto rn = cli({"solve", "median", no_path, "--json"});
  CHECK(rn.code == 1);
  check_against_schema(rn.out);
  json nd = json::parse(rn.out);
  CHECK(nd["verdict"] == "no");
  CHECK(!nd.contains("witness"));

  auto rr = cli({"solve", "center", yes_path, "--json", "--family", "random",
                 "--seed", "7"});
  CHECK(rr.code == 0);
  check_against_schema(rr.out);
  json rd = json::parse(rr.out);
  CHECK(rd["mode"] == "random");
  CHECK(rd["seed"] == 7);
}

TEST_CASE("cli solve rejects an oversized exhaustive family") {
  auto path = tmp_path("wide.inst");
  auto gen = cli({"gen", "planted", "--n", "12", "--m", "2", "--k", "1",
                  "--d", "1", "--seed", "3", "--out", path});
  REQUIRE(gen.code == 0);
  auto r = cli({"solve", "center", path, "--family", "exhaustive"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("cli gen planted is deterministic and certified") {
  auto p1 = tmp_path("plant1.inst"), p2 = tmp_path("plant2.inst");
  std::vector<std::string> base = {"gen",  "planted", "--n",   "6",  "--m",
                                   "4",    "--k",     "2",     "--d", "2",
                                   "--seed", "11"};
  auto a1 = base, a2 = base;
  a1.insert(a1.end(), {"--out", p1});
  a2.insert(a2.end(), {"--out", p2});
  REQUIRE(cli(a1).code == 0);
  REQUIRE(cli(a2).code == 0);
  CHECK(read_file(p1) == read_file(p2));
  CHECK(read_file(p1 + ".cert") == read_file(p2 + ".cert"));
  CHECK(cli({"verify", "center", p1, p1 + ".cert"}).code == 0);

  auto med = tmp_path("plantm.inst");
  REQUIRE(cli({"gen", "planted", "--n", "5", "--m", "3", "--k", "1", "--d",
               "2", "--seed", "4", "--mode", "median", "--out", med})
              .code == 0);
  CHECK(cli({"verify", "median", med, med + ".cert"}).code == 0);
}

TEST_CASE("cli gen vc reproduces the frozen fixture") {
  std::string graph_path = std::string(ULAM_DATA_DIR) + "/figure1.graph";
  auto r = cli({"gen", "vc", graph_path, "--d", "1", "--k", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == read_file(std::string(ULAM_DATA_DIR) + "/figure1.inst"));
  std::istringstream ss(r.out);
  auto inst = parse_instance(ss);
  CHECK(inst.n() == 10);
  CHECK(inst.m() == 4);
  CHECK(inst.k == 2);
  CHECK(inst.d == 1);

  auto tri_path = tmp_path("triangle.graph");
  write_file(tri_path, "p 3 3\ne 1 2\ne 1 3\ne 2 3\n");
  auto tri = cli({"gen", "vc", tri_path, "--d", "1"});
  CHECK(tri.code == 2);
  CHECK(tri.err.find("error:") != std::string::npos);
}

TEST_CASE("cli kernelize") {
  auto path = tmp_path("kern.inst");
  write_file(path, "u 3 4 1 1\nA B C\nA B C\nA B C\nA B C\nB A C\n");
  auto out_path = tmp_path("kern_out.inst");
  auto r = cli({"kernelize", path, "--json", "--out", out_path});
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["trivial_no"] == false);
  CHECK(rep["original"]["m"] == 4);
  CHECK(rep["reduced"]["m"] == 3);
  CHECK(rep["removed_duplicates"] == 1);
  CHECK(rep["components"] == 1);
  auto reduced = parse_instance_file(out_path);
  CHECK(reduced.m() == 3);

  auto far = tmp_path("kern_far.inst");
  write_file(far, "u 3 3 2 0\nA B C\nA B C\nB C A\nC A B\n");
  auto rf = cli({"kernelize", far, "--json"});
  REQUIRE(rf.code == 0);
  CHECK(json::parse(rf.out)["trivial_no"] == true);
}

TEST_CASE("cli verify exit codes") {
  auto inst = tmp_path("verify.inst");
  write_file(inst, "u 3 1 1 0\nA B C\nB C A\n");
  auto good = tmp_path("verify_good.sol");
  write_file(good, "B C A\n");
  auto bad = tmp_path("verify_bad.sol");
  write_file(bad, "A B C\n");
  CHECK(cli({"verify", "center", inst, good}).code == 0);
  CHECK(cli({"verify", "center", inst, bad}).code == 1);
  CHECK(cli({"verify", "median", inst, good}).code == 0);
  CHECK(cli({"verify", "median", inst, bad}).code == 1);
  CHECK(cli({"verify", "center", inst, tmp_path("missing.sol")}).code == 2);
}

TEST_CASE("cli usage errors and help") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"gen", "vc"}).code == 2);  // input file required
}
