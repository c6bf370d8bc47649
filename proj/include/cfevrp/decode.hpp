#pragma once

#include <stdexcept>

#include "cfevrp/encoder.hpp"
#include "cfevrp/solver.hpp"

namespace cfevrp {

// Raised when a solver model cannot be turned into a schedule. With a
// correct solver this indicates a bug, not a property of the instance.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Turns a satisfying assignment into an explicit schedule: per-vehicle
// location timelines, departures paired with the vehicle's position,
// service events (the earliest service instant inside each task's window,
// by the job's assigned vehicle), charge levels, and the solver's cost.
Schedule decode_schedule(const Instance& instance, const VariableLayout& layout,
                         const SolverModel& model);

}  // namespace cfevrp
