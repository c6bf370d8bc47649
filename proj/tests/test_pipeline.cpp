#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfevrp/bench.hpp"
#include "cfevrp/encoder.hpp"
#include "cfevrp/generator.hpp"
#include "cfevrp/json_io.hpp"
#include "cfevrp/model.hpp"
#include "cfevrp/oracle.hpp"
#include "cfevrp/plot.hpp"
#include "cfevrp/solver.hpp"
#include "doctest.h"

using namespace cfevrp;
namespace fs = std::filesystem;

namespace {

bool has(const std::string& s, const std::string& sub) {
  return s.find(sub) != std::string::npos;
}

// Two nodes, one pickup across the single edge; optimum cost 2. Deadline 1
// leaves no way back, so that variant is infeasible.
Instance hop(int deadline) {
  Instance inst;
  inst.graph.nodes = {"a", "b"};
  inst.graph.hub = {false, false};
  inst.graph.edges[{0, 1}] = EdgeAttr{1, 1};
  inst.graph.edges[{1, 0}] = EdgeAttr{1, 1};
  inst.graph.rebuild_adjacency();
  inst.vehicles = {{"v1", 0}};
  Job job;
  job.id = "j1";
  job.eligible = {0};
  job.tasks = {Task{"p", 1, {}, 0, deadline}};
  inst.jobs = {job};
  inst.battery = {6, 1, 1, {}};
  inst.deadline = deadline;
  inst.finalize();
  return inst;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool solver_available() { return !default_solver_command().empty(); }

const char* cli_path() {
#ifdef CFEVRP_CLI_PATH
  return CFEVRP_CLI_PATH;
#else
  return std::getenv("CFEVRP_CLI_PATH");
#endif
}

int run_cli(const std::string& args, const fs::path& capture) {
  const char* cli = cli_path();
  REQUIRE(cli != nullptr);
  std::string command = std::string(cli) + " " + args + " > " +
                        capture.string() + " 2>&1";
  int raw = std::system(command.c_str());
  return raw < 0 ? raw : WEXITSTATUS(raw);
}

}  // namespace

TEST_CASE("results rows survive a csv round trip") {
  BenchRecord sat{"a.json", "15-3-5/r0/d15", "sat", 0.25, 1.5, 42, false};
  BenchRecord unsat{"b.json", "15-3-5/r0/d15", "unsat", 0.5, 2.75, -1, false};
  BenchRecord lost{"c.json", "", "timeout", 0.125, 300.0, -1, true};
  for (const BenchRecord& r : {sat, unsat, lost}) {
    auto back = bench_record_from_csv(bench_record_to_csv(r));
    REQUIRE(back.has_value());
    CHECK(back->instance == r.instance);
    CHECK(back->cell == r.cell);
    CHECK(back->status == r.status);
    CHECK(back->gt_s == doctest::Approx(r.gt_s));
    CHECK(back->st_s == doctest::Approx(r.st_s));
    CHECK(back->cost == (r.status == "sat" ? r.cost : -1));
    CHECK(back->timeout == r.timeout);
  }
  CHECK_FALSE(bench_record_from_csv(bench_csv_header()).has_value());
  CHECK_FALSE(bench_record_from_csv("").has_value());
  CHECK_THROWS_AS(bench_record_from_csv("one,two,three"), std::runtime_error);
}

TEST_CASE("results files append with a single header and load back") {
  fs::path dir = fresh_dir("cfevrp_csv_test");
  fs::path csv = dir / "results.csv";
  CHECK(load_bench_csv(csv.string()).empty());  // missing file is fine

  append_bench_record(csv.string(),
                      {"a.json", "cell", "sat", 0.1, 1.0, 7, false});
  append_bench_record(csv.string(),
                      {"b.json", "cell", "unsat", 0.1, 2.0, -1, false});
  std::vector<BenchRecord> rows = load_bench_csv(csv.string());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].instance == "a.json");
  CHECK(rows[1].status == "unsat");

  std::istringstream lines(slurp(csv));
  std::string line;
  int headers = 0;
  while (std::getline(lines, line)) {
    if (has(line, "instance,cell")) ++headers;
  }
  CHECK(headers == 1);
  fs::remove_all(dir);
}

TEST_CASE("summary table dashes out absent outcomes") {
  std::vector<BenchRecord> records = {
      {"a.json", "X/r0/d15", "sat", 1.0, 4.0, 10, false},
      {"b.json", "X/r0/d15", "sat", 3.0, 6.0, 12, false},
      {"c.json", "Y/r25/d20", "unsat", 2.0, 8.0, -1, false},
      {"d.json", "Z/r50/d25", "timeout", 5.0, 300.0, -1, true},
  };
  std::string table = bench_summary_table(records);
  CHECK(has(table, "ST(sat)"));
  CHECK(has(table, "SC(unsat)"));
  CHECK(has(table, "X/r0/d15"));
  CHECK(has(table, "2/2"));  // both X rows solved
  CHECK(has(table, "5.0"));  // X mean solve time over sat rows
  CHECK(has(table, "1/1"));  // Y solved
  CHECK(has(table, "0/1"));  // Z timed out
  // The timeout cell has neither a sat nor an unsat mean.
  std::istringstream lines(table);
  std::string line;
  while (std::getline(lines, line)) {
    if (has(line, "Z/r50/d25")) {
      CHECK(has(line, "-"));
      CHECK(has(line, "300.0") == false);
    }
  }
}

TEST_CASE("dot rendering marks depots, chargers, hubs, and routes") {
  Instance inst;
  inst.graph.nodes = {"a", "b", "h"};
  inst.graph.hub = {false, false, true};
  for (auto [f, t] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) {
    inst.graph.edges[{f, t}] = EdgeAttr{f == 1 && t == 2 ? 2 : 1, 1};
  }
  inst.graph.edges[{2, 1}].length = 2;  // keep the long pair symmetric
  inst.graph.rebuild_adjacency();
  inst.vehicles = {{"v1", 0}};
  Job job;
  job.id = "j1";
  job.eligible = {0};
  job.tasks = {Task{"p", 1, {}, 0, 4}};
  inst.jobs = {job};
  inst.battery = {6, 1, 1, {1}};
  inst.deadline = 4;
  inst.finalize();

  std::string bare = schedule_to_dot(inst, nullptr);
  CHECK(has(bare, "digraph plant"));
  CHECK(has(bare, "start: v1"));
  CHECK(has(bare, "fillcolor=lightyellow"));
  CHECK(has(bare, "charger"));
  CHECK(has(bare, "doublecircle"));
  CHECK(has(bare, "shape=box"));          // the hub
  CHECK(has(bare, "dir=none"));           // symmetric pairs drawn once
  CHECK(has(bare, "label=\"2\""));        // long edge annotated
  CHECK_FALSE(has(bare, "penwidth=1.8"));  // no overlay without a schedule

  Schedule s;
  s.vehicles.resize(1);
  s.vehicles[0].moves = {{0, 0, 1}, {1, 1, 0}};
  std::string routed = schedule_to_dot(inst, &s);
  CHECK(has(routed, "color=crimson"));
  CHECK(has(routed, "\"v1@0\""));
  CHECK(has(routed, "\"v1@1\""));
}

TEST_CASE("pipeline solves, proves the minimum, and validates") {
  if (!solver_available()) return;
  fs::path dir = fresh_dir("cfevrp_pipe_sat");
  fs::path file = dir / "hop.json";
  save_instance(hop(4), file.string());

  PipelineConfig config;
  config.mode = SolveMode::optimize_bound_search;
  config.time_limit = 120.0;
  SolveOneResult one = solve_one(file.string(), config);
  CHECK(one.record.instance == "hop.json");
  CHECK(one.record.status == "sat");
  CHECK(one.record.cost == 2);
  CHECK(one.record.timeout == false);
  CHECK(one.record.st_s > 0.0);
  CHECK(one.outcome.proved_optimal);
  REQUIRE(one.schedule.has_value());
  REQUIRE(one.report.has_value());
  CHECK(one.report->ok);
  CHECK(one.record.cost == oracle_solve(one.instance).best_cost);
  fs::remove_all(dir);
}

TEST_CASE("pipeline reports unsat instances as unsat") {
  if (!solver_available()) return;
  fs::path dir = fresh_dir("cfevrp_pipe_unsat");
  fs::path file = dir / "hop1.json";
  save_instance(hop(1), file.string());

  PipelineConfig config;
  config.time_limit = 120.0;
  SolveOneResult one = solve_one(file.string(), config);
  CHECK(one.record.status == "unsat");
  CHECK(one.record.cost == -1);
  CHECK_FALSE(one.schedule.has_value());
  CHECK_FALSE(one.report.has_value());
  fs::remove_all(dir);
}

TEST_CASE("pipeline reports a hopeless time limit as a timeout") {
  if (!solver_available()) return;
  fs::path dir = fresh_dir("cfevrp_pipe_timeout");
  fs::path file = dir / "grid.json";
  GenSpec spec;  // a 15-node grid cannot finish within 0.2 seconds
  save_instance(generate(spec), file.string());

  PipelineConfig config;
  config.time_limit = 0.2;
  SolveOneResult one = solve_one(file.string(), config);
  CHECK(one.record.status == "timeout");
  CHECK(one.record.timeout == true);
  CHECK_FALSE(one.schedule.has_value());
  fs::remove_all(dir);
}

TEST_CASE("pipeline agrees with the exhaustive search on tiny instances") {
  if (!solver_available()) return;
  fs::path dir = fresh_dir("cfevrp_pipe_tiny");

  PipelineConfig config;
  config.mode = SolveMode::optimize_bound_search;
  config.time_limit = 120.0;

  int sat_checked = 0, unsat_checked = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    if (sat_checked >= 2 && unsat_checked >= 1) break;
    Instance inst = generate_tiny(seed);
    OracleResult truth = oracle_solve(inst);
    if (truth.status == SolveStatus::sat ? sat_checked >= 2
                                         : unsat_checked >= 1) {
      continue;
    }
    CAPTURE(seed);
    fs::path file = dir / ("tiny" + std::to_string(seed) + ".json");
    save_instance(inst, file.string());
    SolveOneResult one = solve_one(file.string(), config);
    if (truth.status == SolveStatus::sat) {
      CHECK(one.record.status == "sat");
      CHECK(one.record.cost == truth.best_cost);
      CHECK(one.outcome.proved_optimal);
      ++sat_checked;
    } else {
      CHECK(one.record.status == "unsat");
      ++unsat_checked;
    }
  }
  CHECK(sat_checked == 2);
  CHECK(unsat_checked == 1);
  fs::remove_all(dir);
}

TEST_CASE("bench runs resume from the results file") {
  if (!solver_available()) return;
  fs::path dir = fresh_dir("cfevrp_bench_test");
  save_instance(hop(4), (dir / "i1.json").string());
  save_instance(hop(1), (dir / "i2.json").string());
  nlohmann::json manifest = nlohmann::json::array(
      {{{"file", "i1.json"}, {"class", "2-1-1"}, {"reduction", 0},
        {"deadline", 4}, {"seed", 0}},
       {{"file", "i2.json"}, {"class", "2-1-1"}, {"reduction", 0},
        {"deadline", 1}, {"seed", 0}}});
  {
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
  }
  fs::path csv = dir / "results.csv";
  // Pretend the first instance already ran: only the second may be solved.
  append_bench_record(csv.string(),
                      {"i1.json", "2-1-1/r0/d4", "sat", 0.1, 1.0, 2, false});

  PipelineConfig config;
  config.time_limit = 120.0;
  std::ostringstream log;
  run_bench((dir / "manifest.json").string(), csv.string(), config, 1, log);
  CHECK(has(log.str(), "1 instance(s) to run, 1 already recorded"));
  CHECK(has(log.str(), "i2.json: unsat"));

  std::vector<BenchRecord> rows = load_bench_csv(csv.string());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].instance == "i2.json");
  CHECK(rows[1].cell == "2-1-1/r0/d1");
  CHECK(rows[1].status == "unsat");

  // Everything recorded: a second run only reprints the summary.
  std::ostringstream again;
  run_bench((dir / "manifest.json").string(), csv.string(), config, 1, again);
  CHECK(has(again.str(), "0 instance(s) to run, 2 already recorded"));
  CHECK(load_bench_csv(csv.string()).size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("command line round trip over generate, encode, oracle, validate") {
  if (cli_path() == nullptr) return;
  fs::path dir = fresh_dir("cfevrp_cli_test");
  fs::path cap = dir / "out.txt";

  CHECK(run_cli("generate --class 15-3-5 --reduction 0 --deadline 15 --seeds 1"
                " --out-dir " + (dir / "gen").string(), cap) == 0);
  CHECK(fs::exists(dir / "gen" / "manifest.json"));
  fs::path gen_file = dir / "gen" / "15-3-5_r0_d15_s0.json";
  REQUIRE(fs::exists(gen_file));
  GenSpec spec;
  CHECK(instances_equal(load_instance(gen_file.string()), generate(spec)));

  fs::path inst_file = dir / "hop.json";
  save_instance(hop(4), inst_file.string());

  CHECK(run_cli("encode " + inst_file.string() + " -o " +
                (dir / "hop.smt2").string(), cap) == 0);
  std::string smt = slurp(dir / "hop.smt2");
  CHECK(has(smt, "(set-option"));
  CHECK(has(smt, "(check-sat)"));

  CHECK(run_cli("plot " + inst_file.string() + " -o " +
                (dir / "hop.dot").string(), cap) == 0);
  CHECK(has(slurp(dir / "hop.dot"), "digraph plant"));

  fs::path wit = dir / "witness.json";
  CHECK(run_cli("oracle " + inst_file.string() + " --witness-out " +
                wit.string(), cap) == 0);
  CHECK(has(slurp(cap), "minimum cost: 2"));
  REQUIRE(fs::exists(wit));

  CHECK(run_cli("validate " + inst_file.string() + " " + wit.string(), cap) == 0);
  CHECK(run_cli("oracle " + inst_file.string() + " --check " + wit.string(),
                cap) == 0);
  CHECK(has(slurp(cap), "feasible, replayed cost 2"));

  // A tampered cost is caught by both checkers, with exit code 2.
  nlohmann::json tampered = nlohmann::json::parse(slurp(wit));
  tampered["total_cost"] = 99;
  {
    std::ofstream out(wit);
    out << tampered.dump(2) << "\n";
  }
  CHECK(run_cli("validate " + inst_file.string() + " " + wit.string(), cap) == 2);

  // Unknown files exit with the generic error code.
  CHECK(run_cli("validate " + (dir / "missing.json").string() + " " +
                wit.string(), cap) == 1);
  fs::remove_all(dir);
}

TEST_CASE("generated instances are mostly satisfiable once road capacities are lifted") {
  if (!solver_available()) return;

  // The generator's distributions are calibrated so that congestion, not
  // reachability, is the dominant source of infeasibility: with the
  // road-capacity families suppressed, a clear majority of instances at the
  // widest deadline must be satisfiable. Solved directly (encode + solve)
  // because the full validator would rightly reject capacity-violating
  // schedules that the relaxed encoding permits.
  SolverConfig solver;
  solver.command = default_solver_command();
  solver.time_limit = 120.0;

  const int reductions[] = {0, 25, 50};
  int sat = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec spec{"15-3-5", reductions[seed % 3], 30, seed};
    EncodeOptions options;
    options.capacity_families = false;
    EncodedModel model = encode(generate(spec), options);
    OptimizeResult outcome = solve_with_mode(model, SolveMode::satisfy, solver);
    CAPTURE(seed);
    CHECK(outcome.status != SolveStatus::unknown);
    ++total;
    if (outcome.status == SolveStatus::sat) ++sat;
  }
  CHECK(total == 20);
  CHECK(sat * 5 >= total * 3);  // at least 60%
  MESSAGE("relaxed-capacity sample: ", sat, " sat of ", total);
}
