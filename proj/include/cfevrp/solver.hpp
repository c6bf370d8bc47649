#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfevrp/smtlib.hpp"

namespace cfevrp {

enum class SolveStatus { sat, unsat, unknown };

std::string to_string(SolveStatus status);

// Variable assignment extracted from the solver's get-value answers.
struct SolverModel {
  std::map<std::string, bool> bools;
  std::map<std::string, long long> ints;

  bool bool_value(const std::string& name) const {
    auto it = bools.find(name);
    return it != bools.end() && it->second;
  }
  std::optional<long long> int_value(const std::string& name) const {
    auto it = ints.find(name);
    if (it == ints.end()) return std::nullopt;
    return it->second;
  }
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::unknown;
  SolverModel model;                    // populated when sat
  std::vector<std::string> unsat_core;  // populated when unsat (if requested)
  double solve_seconds = 0.0;
  bool timed_out = false;
  std::string diagnostics;  // stderr tail, for error reporting
};

struct SolverConfig {
  std::string command;      // "program arg arg"; the document path is appended
  double time_limit = 0.0;  // seconds per solver run; <= 0 means unlimited
  std::optional<int> random_seed;
};

// Default solver command: the bundled WebAssembly SMT solver, overridable
// with the CFEVRP_SOLVER environment variable.
std::string default_solver_command();

// Runs the solver process on an already-rendered document.
SolveOutcome run_solver_on_document(const std::string& document,
                                    const SolverConfig& config);

// Convenience: emit (in satisfy mode) and run.
SolveOutcome run_solver(const EncodedModel& model, const SolverConfig& config);

struct OptimizeResult {
  SolveStatus status = SolveStatus::unknown;  // sat if any model was found
  bool proved_optimal = false;
  long long best_cost = 0;
  SolverModel best_model;
  int solver_runs = 0;
  double total_seconds = 0.0;
};

// Single run with a solver-side minimization directive.
OptimizeResult optimize_native(const EncodedModel& model,
                               const SolverConfig& config);

// Feasibility run followed by bisection on an upper cost bound. Works with
// any solver that only understands plain check-sat.
OptimizeResult optimize_by_bound_search(const EncodedModel& model,
                                        const SolverConfig& config);

// Dispatch on mode; satisfy reports the first model's cost without proof.
OptimizeResult solve_with_mode(const EncodedModel& model, SolveMode mode,
                               const SolverConfig& config);

// Parses solver stdout: status token, value bindings, unsat core. Exposed
// for tests.
SolveOutcome parse_solver_output(const std::string& text);

}  // namespace cfevrp
