#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfevrp/cardinality.hpp"
#include "cfevrp/model.hpp"

namespace cfevrp {

// Deterministic, injective names for every solver variable. Raw instance ids
// are used when they are clean identifiers (so models stay readable);
// otherwise the category falls back to indices. Components are joined with
// '.', which clean ids cannot contain.
class VariableLayout {
 public:
  VariableLayout() = default;
  explicit VariableLayout(const Instance& instance);

  // Paper decision variables.
  std::string x(int vehicle, int job) const;
  std::string y(int vehicle, int job, int task) const;
  std::string z(int vehicle, int job, int task, int t) const;
  std::string at(int vehicle, int node, int t) const;
  std::string move(int vehicle, int node, int t) const;
  std::string rc(int vehicle, int t) const;

  // Shared subformula names (define-fun macros in the emitted document).
  std::string idle(int vehicle, int t) const;                    // no move decided
  std::string gone(int vehicle, int t) const;                    // at no node
  std::string other_jobs_quiet(int vehicle, int job, int t) const;
  std::string task_quiet_from(int vehicle, int job, int task, int t) const;

  int horizon() const { return horizon_; }

 private:
  std::string veh_name(int i) const { return vehicle_names_[i]; }
  std::string node_name(int n) const { return node_names_[n]; }
  std::string job_name(int j) const { return job_names_[j]; }
  std::string task_name(int j, int k) const { return task_names_[j][k]; }

  std::vector<std::string> vehicle_names_;
  std::vector<std::string> node_names_;
  std::vector<std::string> job_names_;
  std::vector<std::vector<std::string>> task_names_;
  int horizon_ = 0;
};

struct Declaration {
  std::string name;
  bool is_int = false;  // Bool otherwise
};

// A named macro: (define-fun name () Bool body).
struct Definition {
  std::string name;
  std::string body;
};

// One emitted formula, labeled with its constraint family ("1".."25",
// "cover", "channel").
struct Assertion {
  std::string family;
  std::string text;
};

struct EncodedModel {
  std::vector<Declaration> declarations;
  std::vector<Definition> definitions;
  std::vector<Assertion> assertions;
  std::string objective;  // linear Int term; "0" when no edges/vehicles
  VariableLayout layout;
  std::map<std::string, int> stats;  // family -> assertion count
};

// Scratch state threaded through the per-family encoders: the auxiliary
// variable allocator and the declarations it produces.
struct EncodeContext {
  AuxAllocator aux;
  std::vector<Declaration> aux_decls;
};

std::vector<Assertion> encode_assignment(const Instance& instance,
                                         const VariableLayout& layout);
std::vector<Assertion> encode_movement(const Instance& instance,
                                       const VariableLayout& layout,
                                       EncodeContext& ctx);
std::vector<Assertion> encode_capacity(const Instance& instance,
                                       const VariableLayout& layout);
std::vector<Assertion> encode_battery(const Instance& instance,
                                      const VariableLayout& layout);
std::string encode_objective(const Instance& instance,
                             const VariableLayout& layout);

struct EncodeOptions {
  // Debug switch: drop the road-segment capacity families (edge entry count
  // and opposing-traffic exclusion) to probe how much pressure they add.
  bool capacity_families = true;
};

// Full composition: declarations, shared definitions, all constraint
// families, objective, stats. Pure function of the instance.
EncodedModel encode(const Instance& instance, const EncodeOptions& options = {});

// Small formula-text helpers shared with the emitter and tests.
std::string smt_and(const std::vector<std::string>& terms);
std::string smt_or(const std::vector<std::string>& terms);
std::string smt_not(const std::string& term);
std::string smt_implies(const std::string& lhs, const std::string& rhs);

}  // namespace cfevrp
