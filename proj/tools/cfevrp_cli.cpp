#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfevrp/bench.hpp"
#include "cfevrp/decode.hpp"
#include "cfevrp/encoder.hpp"
#include "cfevrp/generator.hpp"
#include "cfevrp/json_io.hpp"
#include "cfevrp/oracle.hpp"
#include "cfevrp/plot.hpp"
#include "cfevrp/smtlib.hpp"
#include "cfevrp/solver.hpp"
#include "cfevrp/validate.hpp"
#include "json.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_generate(const std::vector<std::string>& classes,
                 const std::vector<int>& reductions,
                 const std::vector<int>& deadlines, std::uint64_t seed,
                 int seeds, const std::string& out_dir) {
  std::vector<cfevrp::SuiteEntry> entries;
  if (seeds > 0) {
    entries = cfevrp::generate_suite(classes, reductions, deadlines, seeds, out_dir);
  } else {
    // Single fixed seed across the cross product.
    std::filesystem::create_directories(out_dir);
    nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
    for (const std::string& klass : classes) {
      for (int reduction : reductions) {
        for (int deadline : deadlines) {
          cfevrp::GenSpec spec{klass, reduction, deadline, seed};
          cfevrp::Instance inst = cfevrp::generate(spec);
          std::ostringstream name;
          name << klass << "_r" << reduction << "_d" << deadline << "_s" << seed
               << ".json";
          cfevrp::save_instance(
              inst, (std::filesystem::path(out_dir) / name.str()).string());
          manifest.push_back({{"file", name.str()},
                              {"class", klass},
                              {"reduction", reduction},
                              {"deadline", deadline},
                              {"seed", seed}});
          entries.push_back({spec, name.str()});
        }
      }
    }
    std::ofstream out(std::filesystem::path(out_dir) / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest.json in " + out_dir);
    out << manifest.dump(2) << "\n";
  }
  std::cout << "wrote " << entries.size() << " instance(s) and manifest.json to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conflict-free electric vehicle routing: instance generation, "
               "SMT solving, validation, and benchmarking"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate benchmark instances");
  std::vector<std::string> gen_classes{"15-3-5"};
  std::vector<int> gen_reductions{0};
  std::vector<int> gen_deadlines{15};
  std::uint64_t gen_seed = 0;
  int gen_seeds = 0;
  std::string gen_out_dir = "instances";
  gen->add_option("--class", gen_classes,
                  "Instance class, nodes-vehicles-jobs (repeatable)")
      ->delimiter(',');
  gen->add_option("--reduction", gen_reductions,
                  "Edge reduction percent: 0, 25, or 50 (repeatable)")
      ->delimiter(',');
  gen->add_option("--deadline", gen_deadlines, "Deadline in steps (repeatable)")
      ->delimiter(',');
  gen->add_option("--seed", gen_seed, "Single seed for every cell");
  gen->add_option("--seeds", gen_seeds,
                  "Seeds per cell (0..n-1); overrides --seed");
  gen->add_option("--out-dir", gen_out_dir, "Output directory");

  // encode
  auto* enc = app.add_subcommand("encode", "Render an instance as SMT-LIB 2");
  std::string enc_instance, enc_out = "-", enc_mode = "satisfy";
  bool enc_no_capacity = false;
  std::optional<int> enc_seed;
  enc->add_option("instance", enc_instance, "Instance file")->required();
  enc->add_option("-o,--out", enc_out, "Output path ('-' = stdout)");
  enc->add_option("--mode", enc_mode,
                  "satisfy | optimize-native | optimize-bound-search");
  enc->add_flag("--no-capacity", enc_no_capacity,
                "Drop the road-segment capacity families (debug)");
  enc->add_option("--seed", enc_seed, "Solver random seed baked into the file");

  // solve
  auto* sol = app.add_subcommand("solve", "Solve an instance end to end");
  std::string sol_instance, sol_mode = "satisfy", sol_solver, sol_schedule_out;
  double sol_limit = 300.0;
  std::optional<int> sol_seed;
  bool sol_no_capacity = false;
  sol->add_option("instance", sol_instance, "Instance file")->required();
  sol->add_option("--mode", sol_mode,
                  "satisfy | optimize-native | optimize-bound-search");
  sol->add_option("--solver", sol_solver,
                  "Solver command (overrides CFEVRP_SOLVER)");
  sol->add_option("--time-limit", sol_limit, "Seconds per solver run");
  sol->add_option("--seed", sol_seed, "Solver random seed");
  sol->add_option("--schedule-out", sol_schedule_out,
                  "Write the decoded schedule here when sat");
  sol->add_flag("--no-capacity", sol_no_capacity,
                "Drop the road-segment capacity families (debug)");

  // validate
  auto* val = app.add_subcommand("validate", "Check a schedule against an instance");
  std::string val_instance, val_schedule;
  bool val_json = false;
  val->add_option("instance", val_instance, "Instance file")->required();
  val->add_option("schedule", val_schedule, "Schedule file")->required();
  val->add_flag("--json", val_json, "Emit the report as JSON");

  // oracle
  auto* ora = app.add_subcommand(
      "oracle", "Exhaustive reference search for miniature instances");
  std::string ora_instance, ora_check, ora_witness_out;
  ora->add_option("instance", ora_instance, "Instance file")->required();
  ora->add_option("--check", ora_check,
                  "Replay this schedule file instead of searching");
  ora->add_option("--witness-out", ora_witness_out,
                  "Write the cheapest schedule found here");

  // bench
  auto* ben = app.add_subcommand("bench", "Run a generated suite and summarize");
  std::string ben_manifest, ben_csv = "results.csv", ben_solver,
              ben_mode = "satisfy";
  double ben_limit = 300.0;
  int ben_workers = 1;
  bool ben_summary_only = false;
  ben->add_option("--manifest", ben_manifest, "Suite manifest.json")->required();
  ben->add_option("--csv", ben_csv, "Results CSV (system of record; resumes)");
  ben->add_option("--solver", ben_solver,
                  "Solver command (overrides CFEVRP_SOLVER)");
  ben->add_option("--time-limit", ben_limit, "Seconds per instance");
  ben->add_option("--mode", ben_mode,
                  "satisfy | optimize-native | optimize-bound-search");
  ben->add_option("--workers", ben_workers, "Concurrent solver processes");
  ben->add_flag("--summary-only", ben_summary_only,
                "Recompute the table from the CSV without solving");

  // plot
  auto* plo = app.add_subcommand("plot", "Emit a Graphviz drawing");
  std::string plo_instance, plo_schedule, plo_out = "-";
  plo->add_option("instance", plo_instance, "Instance file")->required();
  plo->add_option("--schedule", plo_schedule, "Overlay this schedule's routes");
  plo->add_option("-o,--out", plo_out, "Output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_classes, gen_reductions, gen_deadlines, gen_seed,
                          gen_seeds, gen_out_dir);
    }

    if (enc->parsed()) {
      cfevrp::Instance inst = cfevrp::load_instance(enc_instance);
      cfevrp::EncodeOptions options;
      options.capacity_families = !enc_no_capacity;
      cfevrp::EncodedModel model = cfevrp::encode(inst, options);
      cfevrp::EmitOptions emit;
      emit.mode = cfevrp::solve_mode_from_string(enc_mode);
      emit.random_seed = enc_seed;
      write_text(enc_out, cfevrp::emit_smtlib(model, emit));
      std::ostringstream stats;
      for (const auto& [family, count] : model.stats) {
        stats << "  family " << family << ": " << count << "\n";
      }
      std::cerr << model.declarations.size() << " declarations, "
                << model.assertions.size() << " assertions\n"
                << stats.str();
      return 0;
    }

    if (sol->parsed()) {
      cfevrp::PipelineConfig config;
      config.solver_command = sol_solver;
      config.time_limit = sol_limit;
      config.mode = cfevrp::solve_mode_from_string(sol_mode);
      config.random_seed = sol_seed;
      config.capacity_families = !sol_no_capacity;
      cfevrp::SolveOneResult one = cfevrp::solve_one(sol_instance, config);
      std::cout << "status: " << one.record.status << "\n";
      std::cout << "solve seconds: " << one.record.st_s << "\n";
      if (one.record.status == "sat") {
        std::cout << "cost: " << one.record.cost
                  << (one.outcome.proved_optimal ? " (proved minimal)" : "")
                  << "\n";
        std::cout << "validation: passed\n";
        if (!sol_schedule_out.empty()) {
          cfevrp::save_schedule(*one.schedule, one.instance, sol_schedule_out);
          std::cout << "schedule written to " << sol_schedule_out << "\n";
        }
      }
      return 0;
    }

    if (val->parsed()) {
      cfevrp::Instance inst = cfevrp::load_instance(val_instance);
      cfevrp::Schedule schedule = cfevrp::load_schedule(val_schedule, inst);
      cfevrp::ValidationReport report = cfevrp::validate_schedule(inst, schedule);
      if (val_json) {
        std::cout << cfevrp::validation_report_json(report) << "\n";
      } else {
        std::cout << cfevrp::validation_report_text(report);
      }
      return report.ok ? 0 : 2;
    }

    if (ora->parsed()) {
      cfevrp::Instance inst = cfevrp::load_instance(ora_instance);
      if (!ora_check.empty()) {
        cfevrp::Schedule schedule = cfevrp::load_schedule(ora_check, inst);
        cfevrp::OracleCheck check = cfevrp::oracle_check_schedule(inst, schedule);
        if (check.feasible) {
          std::cout << "feasible, replayed cost " << check.cost << "\n";
          return 0;
        }
        std::cout << "infeasible: " << check.reason << "\n";
        return 2;
      }
      cfevrp::OracleResult result = cfevrp::oracle_solve(inst);
      std::cout << "status: " << cfevrp::to_string(result.status) << "\n";
      std::cout << "states explored: " << result.states_explored << "\n";
      if (result.status == cfevrp::SolveStatus::sat) {
        std::cout << "minimum cost: " << result.best_cost << "\n";
        if (!ora_witness_out.empty() && result.witness) {
          cfevrp::save_schedule(*result.witness, inst, ora_witness_out);
          std::cout << "witness written to " << ora_witness_out << "\n";
        }
      }
      return 0;
    }

    if (ben->parsed()) {
      if (ben_summary_only) {
        std::cout << cfevrp::bench_summary_table(cfevrp::load_bench_csv(ben_csv));
        return 0;
      }
      cfevrp::PipelineConfig config;
      config.solver_command = ben_solver;
      config.time_limit = ben_limit;
      config.mode = cfevrp::solve_mode_from_string(ben_mode);
      cfevrp::run_bench(ben_manifest, ben_csv, config, ben_workers, std::cout);
      return 0;
    }

    if (plo->parsed()) {
      cfevrp::Instance inst = cfevrp::load_instance(plo_instance);
      std::optional<cfevrp::Schedule> schedule;
      if (!plo_schedule.empty()) {
        schedule = cfevrp::load_schedule(plo_schedule, inst);
      }
      write_text(plo_out,
                 cfevrp::schedule_to_dot(inst, schedule ? &*schedule : nullptr));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
