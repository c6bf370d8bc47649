#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cfevrp/model.hpp"
#include "cfevrp/solver.hpp"

namespace cfevrp {

// Raised when an instance falls outside what the exhaustive reference
// search can handle with confidence (size, or semantics that the bounded
// replay window cannot mirror).
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  int max_nodes = 9;
  int max_vehicles = 2;
  int max_deadline = 12;
  long long max_states = 5'000'000;  // search budget; exceeded -> OracleError
};

struct OracleResult {
  SolveStatus status = SolveStatus::unknown;  // sat or unsat, never unknown
  long long best_cost = 0;                    // valid when sat
  std::optional<Schedule> witness;            // a minimum-cost schedule
  long long states_explored = 0;
};

// Exhaustive depth-first search over all schedules up to the deadline,
// returning the minimum traversal cost and one witness. Guards: instances
// must be small, every task window must close by the deadline, and no depot
// may be a charging station (otherwise the instants after the deadline
// admit behavior the bounded replay cannot mirror).
OracleResult oracle_solve(const Instance& instance,
                          const OracleLimits& limits = OracleLimits{});

struct OracleCheck {
  bool feasible = false;
  std::string reason;  // first broken rule when infeasible
  long long cost = 0;  // distance traversed up to the deadline
};

// Replays a schedule's events through the same transition rules the search
// uses, instant by instant up to the deadline, cross-checking the recorded
// timeline and charge levels. Independent of both encoder and validator.
OracleCheck oracle_check_schedule(const Instance& instance,
                                  const Schedule& schedule);

}  // namespace cfevrp
