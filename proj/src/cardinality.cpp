#include "cfevrp/cardinality.hpp"

namespace cfevrp {

namespace {

// Sinz LTn,1 sequential counter: registers s(i,j) mean "at least j of the
// first i inputs are true".
CardinalityFormula sequential_counter(const std::vector<std::string>& vars,
                                      int bound, AuxAllocator& aux) {
  CardinalityFormula out;
  const int n = static_cast<int>(vars.size());
  if (bound >= n) return out;
  if (bound == 0) {
    for (const auto& v : vars) out.clauses.push_back({{v, true}});
    return out;
  }

  const std::string group = aux.fresh_group();
  // s(i,j) for i in 1..n-1, j in 1..bound
  auto s = [&](int i, int j) {
    return group + "." + std::to_string(i) + "." + std::to_string(j);
  };
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= bound; ++j) out.aux_vars.push_back(s(i, j));

  auto add = [&](Clause c) { out.clauses.push_back(std::move(c)); };

  add({{vars[0], true}, {s(1, 1), false}});
  for (int j = 2; j <= bound; ++j) add({{s(1, j), true}});
  for (int i = 2; i <= n - 1; ++i) {
    add({{vars[i - 1], true}, {s(i, 1), false}});
    add({{s(i - 1, 1), true}, {s(i, 1), false}});
    for (int j = 2; j <= bound; ++j) {
      add({{vars[i - 1], true}, {s(i - 1, j - 1), true}, {s(i, j), false}});
      add({{s(i - 1, j), true}, {s(i, j), false}});
    }
    add({{vars[i - 1], true}, {s(i - 1, bound), true}});
  }
  add({{vars[n - 1], true}, {s(n - 1, bound), true}});
  return out;
}

}  // namespace

CardinalityFormula amo(const std::vector<std::string>& vars, AuxAllocator& aux,
                       int pairwise_threshold) {
  const int n = static_cast<int>(vars.size());
  if (n <= 1) return {};
  if (n <= pairwise_threshold) {
    CardinalityFormula out;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        out.clauses.push_back({{vars[a], true}, {vars[b], true}});
    return out;
  }
  return sequential_counter(vars, 1, aux);
}

CardinalityFormula amn(const std::vector<std::string>& vars, int n,
                       AuxAllocator& aux) {
  return sequential_counter(vars, n, aux);
}

std::string render_literal(const Literal& lit) {
  return lit.negated ? "(not " + lit.var + ")" : lit.var;
}

std::string render_clause(const Clause& clause) {
  if (clause.empty()) return "false";
  if (clause.size() == 1) return render_literal(clause[0]);
  std::string out = "(or";
  for (const auto& lit : clause) {
    out += ' ';
    out += render_literal(lit);
  }
  out += ')';
  return out;
}

}  // namespace cfevrp
