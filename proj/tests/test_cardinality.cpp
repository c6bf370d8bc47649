#include <string>
#include <vector>

#include "cfevrp/cardinality.hpp"
#include "doctest.h"

using namespace cfevrp;

namespace {

std::vector<std::string> make_inputs(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("in" + std::to_string(i));
  return v;
}

// Reference semantics: does some assignment of the auxiliary variables
// satisfy every clause, given fixed input values? The encodings are defined
// over inputs plus helpers, so the projection onto the inputs is what must
// equal the cardinality predicate.
bool satisfiable_with_aux(const CardinalityFormula& formula,
                          const std::vector<std::string>& inputs,
                          unsigned input_bits) {
  auto value_of = [&](const std::string& name, unsigned aux_bits) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i] == name) return ((input_bits >> i) & 1u) != 0;
    }
    for (std::size_t i = 0; i < formula.aux_vars.size(); ++i) {
      if (formula.aux_vars[i] == name) return ((aux_bits >> i) & 1u) != 0;
    }
    FAIL("clause references unknown variable ", name);
    return false;
  };
  REQUIRE(formula.aux_vars.size() <= 20);
  const unsigned aux_count = 1u << formula.aux_vars.size();
  for (unsigned aux_bits = 0; aux_bits < aux_count; ++aux_bits) {
    bool all = true;
    for (const Clause& clause : formula.clauses) {
      bool any = false;
      for (const Literal& lit : clause) {
        if (value_of(lit.var, aux_bits) != lit.negated) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

int popcount(unsigned v) {
  int c = 0;
  while (v) {
    c += v & 1u;
    v >>= 1;
  }
  return c;
}

void check_projection(const CardinalityFormula& formula,
                      const std::vector<std::string>& inputs, int bound) {
  for (unsigned bits = 0; bits < (1u << inputs.size()); ++bits) {
    const bool expected = popcount(bits) <= bound;
    const bool actual = satisfiable_with_aux(formula, inputs, bits);
    if (expected != actual) {
      CAPTURE(inputs.size());
      CAPTURE(bound);
      CAPTURE(bits);
      CHECK(expected == actual);
      return;
    }
  }
  CHECK(true);
}

}  // namespace

TEST_CASE("at-most-one matches the brute-force predicate for all sizes") {
  for (int n = 0; n <= 5; ++n) {
    auto inputs = make_inputs(n);
    SUBCASE(("pairwise n=" + std::to_string(n)).c_str()) {
      AuxAllocator aux;
      check_projection(amo(inputs, aux), inputs, 1);
    }
    SUBCASE(("counter n=" + std::to_string(n)).c_str()) {
      AuxAllocator aux;
      check_projection(amo(inputs, aux, 0), inputs, 1);
    }
  }
}

TEST_CASE("at-most-n matches the brute-force predicate for all bounds") {
  for (int n = 1; n <= 5; ++n) {
    auto inputs = make_inputs(n);
    for (int bound = 0; bound <= n; ++bound) {
      CAPTURE(n);
      CAPTURE(bound);
      AuxAllocator aux;
      check_projection(amn(inputs, bound, aux), inputs, bound);
    }
  }
}

TEST_CASE("small at-most-one sets use plain pairwise clauses") {
  AuxAllocator aux;
  CardinalityFormula f = amo(make_inputs(4), aux);
  CHECK(f.aux_vars.empty());
  CHECK(f.clauses.size() == 6);  // all unordered pairs
  for (const Clause& clause : f.clauses) {
    REQUIRE(clause.size() == 2);
    CHECK(clause[0].negated);
    CHECK(clause[1].negated);
  }
}

TEST_CASE("large at-most-one sets switch to the counter encoding") {
  AuxAllocator aux;
  auto inputs = make_inputs(7);
  CardinalityFormula f = amo(inputs, aux);
  CHECK(!f.aux_vars.empty());
  check_projection(f, inputs, 1);
}

TEST_CASE("auxiliary names are namespaced per allocation") {
  AuxAllocator aux;
  CardinalityFormula f1 = amn(make_inputs(4), 2, aux);
  CardinalityFormula f2 = amn(make_inputs(4), 2, aux);
  REQUIRE(!f1.aux_vars.empty());
  REQUIRE(!f2.aux_vars.empty());
  for (const std::string& a : f1.aux_vars) {
    for (const std::string& b : f2.aux_vars) CHECK(a != b);
  }
}

TEST_CASE("degenerate bounds") {
  AuxAllocator aux;
  // Bound at least the set size: nothing to forbid.
  CHECK(amn(make_inputs(3), 3, aux).clauses.empty());
  // Bound zero: every input is forced false.
  CardinalityFormula zero = amn(make_inputs(3), 0, aux);
  auto inputs = make_inputs(3);
  check_projection(zero, inputs, 0);
  // Empty input set: vacuously true.
  CHECK(amo({}, aux).clauses.empty());
}

TEST_CASE("literal rendering") {
  CHECK(render_literal(Literal{"v", false}) == "v");
  CHECK(render_literal(Literal{"v", true}) == "(not v)");
  CHECK(render_clause({}) == "false");
  CHECK(render_clause({Literal{"v", false}}) == "v");
  CHECK(render_clause({Literal{"a", true}, Literal{"b", false}}) ==
        "(or (not a) b)");
}
