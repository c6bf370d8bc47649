#pragma once

#include <optional>
#include <string>

#include "cfevrp/encoder.hpp"

namespace cfevrp {

enum class SolveMode {
  satisfy,               // plain feasibility check
  optimize_native,       // solver-side (minimize total_cost)
  optimize_bound_search, // driver-side bisection on cost bounds
};

SolveMode solve_mode_from_string(const std::string& name);
std::string to_string(SolveMode mode);

struct EmitOptions {
  SolveMode mode = SolveMode::satisfy;
  bool unsat_cores = true;
  std::optional<long long> cost_bound;  // extra (<= total_cost bound)
  std::optional<int> random_seed;
  int value_chunk = 300;  // names per get-value command
};

// Renders the encoded model as a complete SMT-LIB 2 document: options,
// declarations, shared definitions, the cost function, named assertions,
// then check-sat and value extraction. Deterministic for a given input.
std::string emit_smtlib(const EncodedModel& model, const EmitOptions& options);

}  // namespace cfevrp
