#include "cfevrp/smtlib.hpp"

#include <map>
#include <stdexcept>

namespace cfevrp {

SolveMode solve_mode_from_string(const std::string& name) {
  if (name == "satisfy") return SolveMode::satisfy;
  if (name == "optimize-native") return SolveMode::optimize_native;
  if (name == "optimize-bound-search") return SolveMode::optimize_bound_search;
  throw std::runtime_error("unknown solve mode: " + name);
}

std::string to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::satisfy:
      return "satisfy";
    case SolveMode::optimize_native:
      return "optimize-native";
    case SolveMode::optimize_bound_search:
      return "optimize-bound-search";
  }
  return "satisfy";
}

std::string emit_smtlib(const EncodedModel& model, const EmitOptions& options) {
  std::string doc;
  if (model.declarations.empty() && model.assertions.empty()) {
    doc += "(check-sat)\n(exit)\n";
    return doc;
  }
  doc.reserve(1 << 20);

  doc += "(set-option :produce-models true)\n";
  if (options.unsat_cores) doc += "(set-option :produce-unsat-cores true)\n";
  if (options.random_seed) {
    doc += "(set-option :smt.random_seed " +
           std::to_string(*options.random_seed) + ")\n";
  }

  for (const Declaration& d : model.declarations) {
    doc += "(declare-const ";
    doc += d.name;
    doc += d.is_int ? " Int)\n" : " Bool)\n";
  }
  for (const Definition& d : model.definitions) {
    doc += "(define-fun ";
    doc += d.name;
    doc += " () Bool ";
    doc += d.body;
    doc += ")\n";
  }
  doc += "(define-fun total_cost () Int ";
  doc += model.objective.empty() ? "0" : model.objective;
  doc += ")\n";

  std::map<std::string, int> family_seq;
  for (const Assertion& a : model.assertions) {
    int seq = family_seq[a.family]++;
    doc += "(assert (! ";
    doc += a.text;
    doc += " :named f";
    doc += a.family;
    doc += "_";
    doc += std::to_string(seq);
    doc += "))\n";
  }

  if (options.cost_bound) {
    doc += "(assert (<= total_cost " + std::to_string(*options.cost_bound) +
           "))\n";
  }
  if (options.mode == SolveMode::optimize_native) {
    doc += "(minimize total_cost)\n";
  }
  doc += "(check-sat)\n";
  if (options.unsat_cores) doc += "(get-unsat-core)\n";

  const int chunk = options.value_chunk > 0 ? options.value_chunk : 300;
  std::vector<std::string> names;
  names.reserve(model.declarations.size() + 1);
  for (const Declaration& d : model.declarations) names.push_back(d.name);
  names.push_back("total_cost");
  for (std::size_t begin = 0; begin < names.size();
       begin += static_cast<std::size_t>(chunk)) {
    doc += "(get-value (";
    std::size_t end = std::min(names.size(), begin + static_cast<std::size_t>(chunk));
    for (std::size_t idx = begin; idx < end; ++idx) {
      if (idx > begin) doc += ' ';
      doc += names[idx];
    }
    doc += "))\n";
  }
  doc += "(exit)\n";
  return doc;
}

}  // namespace cfevrp
