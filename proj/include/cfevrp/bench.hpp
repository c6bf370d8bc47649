#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfevrp/model.hpp"
#include "cfevrp/solver.hpp"
#include "cfevrp/validate.hpp"

namespace cfevrp {

// An error in one stage of the load-encode-solve-decode-validate pipeline.
struct PipelineError : std::runtime_error {
  PipelineError(const std::string& stage, const std::string& message)
      : std::runtime_error(stage + " stage: " + message), stage(stage) {}
  std::string stage;
};

// One row of the results CSV (the system of record; the summary table is
// recomputed from these).
struct BenchRecord {
  std::string instance;  // file name
  std::string cell;      // "<class>/r<reduction>/d<deadline>"
  std::string status;    // sat | unsat | timeout
  double gt_s = 0.0;     // model generation time (encode + render)
  double st_s = 0.0;     // solver time
  long long cost = -1;   // meaningful iff status == sat
  bool timeout = false;
};

std::string bench_csv_header();
std::string bench_record_to_csv(const BenchRecord& record);
std::optional<BenchRecord> bench_record_from_csv(const std::string& line);

// Missing file -> empty vector. Malformed rows raise std::runtime_error.
std::vector<BenchRecord> load_bench_csv(const std::string& path);

// Appends one row, writing the header first when the file is new or empty.
void append_bench_record(const std::string& path, const BenchRecord& record);

struct PipelineConfig {
  std::string solver_command;  // empty -> default_solver_command()
  double time_limit = 300.0;   // seconds per solver run
  SolveMode mode = SolveMode::satisfy;
  std::optional<int> random_seed;
  bool capacity_families = true;
};

struct SolveOneResult {
  Instance instance;
  BenchRecord record;  // cell left empty; callers with a manifest fill it
  OptimizeResult outcome;
  std::optional<Schedule> schedule;         // present iff sat
  std::optional<ValidationReport> report;   // present iff sat
};

// load -> encode -> render -> solve -> decode -> validate. Never reports sat
// without a passing validation (a failure raises PipelineError instead);
// unknown or crashed solver runs are reported as timeouts.
SolveOneResult solve_one(const std::string& instance_path,
                         const PipelineConfig& config);

// Per-cell summary: instances solved within the limit, mean generation time,
// and mean solve time with counts split by sat/unsat ("-" when a cell has
// none of that outcome).
std::string bench_summary_table(const std::vector<BenchRecord>& records);

// Runs every manifest entry that the CSV does not already record, appending
// one row per instance as it completes, then prints the summary table.
// Instance paths are resolved relative to the manifest's directory.
void run_bench(const std::string& manifest_path, const std::string& csv_path,
               const PipelineConfig& config, int workers, std::ostream& log);

}  // namespace cfevrp
