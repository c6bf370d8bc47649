#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfevrp/model.hpp"

namespace cfevrp {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One benchmark-family instance description: class key "nodes-vehicles-jobs",
// edge reduction percentage, deadline, and the random seed.
struct GenSpec {
  std::string klass = "15-3-5";  // 15-3-5 | 25-4-7 | 35-6-8
  int reduction = 0;             // 0 | 25 | 50
  int deadline = 15;             // 15 | 20 | 25 | 30
  std::uint64_t seed = 0;
};

// Deterministically builds one instance: a unit-weight capacity-one grid with
// the class's edge pairs removed (strong connectivity preserved), vehicles at
// distinct random depots that double as charging stations, typed eligibility
// with one job open to every vehicle, pickup windows spanning the deadline,
// and delivery windows anchored at the earliest possible arrival.
Instance generate(const GenSpec& spec);

struct SuiteEntry {
  GenSpec spec;
  std::string filename;  // relative to the suite directory
};

// Cross product of the parameter lists x seeds 0..seeds_per_cell-1. Writes
// one instance file per entry plus manifest.json into out_dir and returns
// the entries in file order.
std::vector<SuiteEntry> generate_suite(const std::vector<std::string>& classes,
                                       const std::vector<int>& reductions,
                                       const std::vector<int>& deadlines,
                                       int seeds_per_cell,
                                       const std::string& out_dir);

// Miniature instances sized for the exhaustive reference search: at most
// 9 nodes, 2 vehicles, 2 jobs, deadline 12, every task window closing by the
// deadline, and no vehicle starting on a charging station. The mix is tuned
// to produce both feasible and infeasible instances.
Instance generate_tiny(std::uint64_t seed);

}  // namespace cfevrp
