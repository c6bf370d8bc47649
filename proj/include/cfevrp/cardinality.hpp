#pragma once

#include <string>
#include <vector>

namespace cfevrp {

struct Literal {
  std::string var;
  bool negated = false;
};

using Clause = std::vector<Literal>;

// Output of a cardinality encoding: clauses over the input variables plus
// freshly allocated auxiliaries.
struct CardinalityFormula {
  std::vector<std::string> aux_vars;
  std::vector<Clause> clauses;
};

// Hands out collision-free auxiliary variable names (sequential-counter
// registers). Names depend only on allocation order, so encodings are
// deterministic.
class AuxAllocator {
 public:
  explicit AuxAllocator(std::string prefix = "sc") : prefix_(std::move(prefix)) {}
  std::string fresh_group() { return prefix_ + "." + std::to_string(next_++); }

 private:
  std::string prefix_;
  int next_ = 0;
};

// At most one of vars is true. Pairwise clauses up to the threshold,
// sequential counter above it.
CardinalityFormula amo(const std::vector<std::string>& vars, AuxAllocator& aux,
                       int pairwise_threshold = 6);

// At most n of vars are true (Sinz sequential counter).
CardinalityFormula amn(const std::vector<std::string>& vars, int n,
                       AuxAllocator& aux);

std::string render_literal(const Literal& lit);
std::string render_clause(const Clause& clause);

}  // namespace cfevrp
