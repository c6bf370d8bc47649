#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cfevrp/encoder.hpp"
#include "cfevrp/model.hpp"
#include "cfevrp/smtlib.hpp"
#include "doctest.h"

using namespace cfevrp;

namespace {

Instance line3() {
  Instance inst;
  inst.graph.nodes = {"a", "b", "c"};
  inst.graph.hub = {false, false, false};
  for (auto [f, t] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) {
    inst.graph.edges[{f, t}] = EdgeAttr{1, 1};
  }
  inst.graph.rebuild_adjacency();
  inst.vehicles = {{"v1", 0}};
  Job job;
  job.id = "j1";
  job.eligible = {0};
  job.tasks = {Task{"p", 1, {}, 0, 4}, Task{"d", 2, {0}, 0, 6}};
  inst.jobs = {job};
  inst.battery = {10, 1, 1, {0}};
  inst.deadline = 8;
  inst.finalize();
  return inst;
}

std::vector<std::string> lines_of(const std::string& doc) {
  std::vector<std::string> out;
  std::istringstream in(doc);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

int count_prefix(const std::vector<std::string>& lines,
                 const std::string& prefix) {
  int n = 0;
  for (const std::string& l : lines) {
    if (l.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("document sections come in parse order") {
  EncodedModel model = encode(line3());
  EmitOptions opt;
  std::string doc = emit_smtlib(model, opt);
  std::vector<std::string> lines = lines_of(doc);

  // Phase of each line: options < declarations < definitions < assertions
  // < check-sat < get-unsat-core < get-value < exit.
  auto phase = [](const std::string& l) {
    if (l.rfind("(set-option", 0) == 0) return 0;
    if (l.rfind("(declare-const", 0) == 0) return 1;
    if (l.rfind("(define-fun", 0) == 0) return 2;
    if (l.rfind("(assert", 0) == 0) return 3;
    if (l == "(check-sat)") return 4;
    if (l == "(get-unsat-core)") return 5;
    if (l.rfind("(get-value", 0) == 0) return 6;
    if (l == "(exit)") return 7;
    return -1;
  };
  int prev = 0;
  for (const std::string& l : lines) {
    int p = phase(l);
    CHECK(p >= 0);      // no unclassifiable output
    CHECK(p >= prev);   // phases never interleave
    prev = p;
  }
  CHECK(lines.back() == "(exit)");

  CHECK(count_prefix(lines, "(declare-const") ==
        static_cast<int>(model.declarations.size()));
  // Shared definitions plus the cost function.
  CHECK(count_prefix(lines, "(define-fun") ==
        static_cast<int>(model.definitions.size()) + 1);
  CHECK(count_prefix(lines, "(assert") ==
        static_cast<int>(model.assertions.size()));
  CHECK(count_prefix(lines, "(check-sat)") == 1);
}

TEST_CASE("assertion names carry the family and a running index") {
  EncodedModel model = encode(line3());
  std::string doc = emit_smtlib(model, EmitOptions{});
  // First and second family-14 assertions.
  CHECK(doc.find(":named f14_0") != std::string::npos);
  CHECK(doc.find(":named f14_1") != std::string::npos);
  CHECK(doc.find(":named f9_0") != std::string::npos);
  // Indices restart per family, so every name is unique.
  std::set<std::string> seen;
  std::size_t pos = 0;
  while ((pos = doc.find(":named ", pos)) != std::string::npos) {
    pos += 7;
    std::size_t end = doc.find(')', pos);
    std::string name = doc.substr(pos, end - pos);
    CHECK(!seen.count(name));
    seen.insert(name);
  }
  CHECK(seen.size() == model.assertions.size());
}

TEST_CASE("value extraction is chunked") {
  EncodedModel model = encode(line3());
  REQUIRE(model.declarations.size() == 93);

  EmitOptions opt;
  opt.value_chunk = 40;
  std::vector<std::string> lines = lines_of(emit_smtlib(model, opt));
  // 93 declarations + total_cost = 94 names -> 40 + 40 + 14.
  CHECK(count_prefix(lines, "(get-value") == 3);

  opt.value_chunk = 300;
  lines = lines_of(emit_smtlib(model, opt));
  CHECK(count_prefix(lines, "(get-value") == 1);

  // Every declared name is queried exactly once, plus the cost.
  std::string all;
  for (const std::string& l : lines) {
    if (l.rfind("(get-value", 0) == 0) all += l + "\n";
  }
  for (const Declaration& d : model.declarations) {
    CHECK(all.find(d.name) != std::string::npos);
  }
  CHECK(all.find("total_cost") != std::string::npos);
}

TEST_CASE("empty model emits a bare check") {
  EncodedModel model;
  CHECK(emit_smtlib(model, EmitOptions{}) == "(check-sat)\n(exit)\n");
}

TEST_CASE("solve modes control the minimize command") {
  EncodedModel model = encode(line3());
  EmitOptions opt;

  opt.mode = SolveMode::satisfy;
  CHECK(emit_smtlib(model, opt).find("(minimize") == std::string::npos);

  opt.mode = SolveMode::optimize_bound_search;
  CHECK(emit_smtlib(model, opt).find("(minimize") == std::string::npos);

  opt.mode = SolveMode::optimize_native;
  std::string doc = emit_smtlib(model, opt);
  CHECK(doc.find("(minimize total_cost)\n(check-sat)") != std::string::npos);
}

TEST_CASE("a cost bound becomes one extra assertion") {
  EncodedModel model = encode(line3());
  EmitOptions opt;
  opt.cost_bound = 7;
  std::string doc = emit_smtlib(model, opt);
  CHECK(doc.find("(assert (<= total_cost 7))") != std::string::npos);

  opt.cost_bound.reset();
  CHECK(emit_smtlib(model, opt).find("(<= total_cost") == std::string::npos);
}

TEST_CASE("core production and seeding are optional") {
  EncodedModel model = encode(line3());
  EmitOptions opt;
  opt.unsat_cores = false;
  std::string doc = emit_smtlib(model, opt);
  CHECK(doc.find(":produce-unsat-cores") == std::string::npos);
  CHECK(doc.find("(get-unsat-core)") == std::string::npos);

  opt.unsat_cores = true;
  doc = emit_smtlib(model, opt);
  CHECK(doc.find("(set-option :produce-unsat-cores true)") !=
        std::string::npos);
  CHECK(doc.find("(get-unsat-core)") != std::string::npos);

  opt.random_seed = 17;
  doc = emit_smtlib(model, opt);
  CHECK(doc.find("(set-option :smt.random_seed 17)") != std::string::npos);
}

TEST_CASE("mode names round-trip") {
  for (SolveMode mode : {SolveMode::satisfy, SolveMode::optimize_native,
                         SolveMode::optimize_bound_search}) {
    CHECK(solve_mode_from_string(to_string(mode)) == mode);
  }
  CHECK_THROWS(solve_mode_from_string("branch-and-bound"));
}
