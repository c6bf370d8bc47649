#pragma once

#include <string>
#include <vector>

#include "cfevrp/model.hpp"

namespace cfevrp {

struct FamilyCheck {
  std::string family;   // "structure", "cover", "channel", "1".."25"
  bool passed = true;
  std::string witness;  // first violation found, empty when passed
};

struct ValidationReport {
  bool ok = false;
  std::vector<FamilyCheck> checks;
  std::vector<std::string> notes;  // observations that do not fail validation
  long long recomputed_cost = 0;
  long long schedule_cost = 0;
  int min_charge = 0;
  int max_charge = 0;
};

// Replays the schedule against the instance rules, independently of the
// encoder: one check per constraint family, each reporting the first
// violation it finds. The schedule is judged over the whole horizon except
// where a rule only binds up to the deadline or up to the last instant an
// edge traversal can still finish.
ValidationReport validate_schedule(const Instance& instance,
                                   const Schedule& schedule);

std::string validation_report_text(const ValidationReport& report);
std::string validation_report_json(const ValidationReport& report);

}  // namespace cfevrp
