#include "cfevrp/solver.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "cfevrp/subprocess.hpp"

#ifndef CFEVRP_DEFAULT_SOLVER
#define CFEVRP_DEFAULT_SOLVER ""
#endif

namespace cfevrp {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::sat:
      return "sat";
    case SolveStatus::unsat:
      return "unsat";
    case SolveStatus::unknown:
      return "unknown";
  }
  return "unknown";
}

std::string default_solver_command() {
  if (const char* env = std::getenv("CFEVRP_SOLVER"); env && *env) return env;
  return CFEVRP_DEFAULT_SOLVER;
}

namespace {

// Minimal s-expression reader, tolerant of solver chatter: anything that is
// not a status token, a value binding list, or an unsat core is skipped.
struct Sexp {
  bool is_atom = true;
  std::string atom;
  std::vector<Sexp> items;
};

struct SexpReader {
  const std::string& text;
  std::size_t pos = 0;

  explicit SexpReader(const std::string& t) : text(t) {}

  void skip_space() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
  }

  bool next(Sexp& out) {
    skip_space();
    if (pos >= text.size()) return false;
    char c = text[pos];
    if (c == '(') {
      ++pos;
      out = Sexp{false, "", {}};
      while (true) {
        skip_space();
        if (pos >= text.size()) return false;  // truncated output
        if (text[pos] == ')') {
          ++pos;
          return true;
        }
        Sexp child;
        if (!next(child)) return false;
        out.items.push_back(std::move(child));
      }
    }
    if (c == ')') {  // stray close; skip it
      ++pos;
      return next(out);
    }
    if (c == '"') {
      std::size_t start = pos++;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\') ++pos;
        ++pos;
      }
      if (pos < text.size()) ++pos;
      out = Sexp{true, text.substr(start, pos - start), {}};
      return true;
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != '"' && text[pos] != ' ' && text[pos] != '\t' &&
           text[pos] != '\n' && text[pos] != '\r') {
      ++pos;
    }
    out = Sexp{true, text.substr(start, pos - start), {}};
    return true;
  }
};

bool parse_integer(const Sexp& value, long long& out) {
  if (value.is_atom) {
    if (value.atom.empty()) return false;
    std::size_t idx = 0;
    if (value.atom[0] == '-') {
      if (value.atom.size() == 1) return false;
      idx = 1;
    }
    for (; idx < value.atom.size(); ++idx) {
      if (value.atom[idx] < '0' || value.atom[idx] > '9') return false;
    }
    out = std::stoll(value.atom);
    return true;
  }
  // Negative integers print as (- n).
  if (value.items.size() == 2 && value.items[0].is_atom &&
      value.items[0].atom == "-" && value.items[1].is_atom) {
    long long inner = 0;
    if (!parse_integer(value.items[1], inner)) return false;
    out = -inner;
    return true;
  }
  return false;
}

void absorb_binding(const Sexp& pair, SolverModel& model) {
  if (pair.items.size() != 2 || !pair.items[0].is_atom) return;
  const std::string& name = pair.items[0].atom;
  const Sexp& value = pair.items[1];
  if (value.is_atom && value.atom == "true") {
    model.bools[name] = true;
    return;
  }
  if (value.is_atom && value.atom == "false") {
    model.bools[name] = false;
    return;
  }
  long long number = 0;
  if (parse_integer(value, number)) model.ints[name] = number;
}

}  // namespace

SolveOutcome parse_solver_output(const std::string& text) {
  SolveOutcome outcome;
  SexpReader reader(text);
  Sexp form;
  bool saw_status = false;
  std::string fatal;
  while (reader.next(form)) {
    if (form.is_atom) {
      if (!saw_status &&
          (form.atom == "sat" || form.atom == "unsat" || form.atom == "unknown")) {
        saw_status = true;
        outcome.status = form.atom == "sat"    ? SolveStatus::sat
                         : form.atom == "unsat" ? SolveStatus::unsat
                                                : SolveStatus::unknown;
      }
      continue;
    }
    if (form.items.empty()) continue;
    if (form.items[0].is_atom && form.items[0].atom == "error") {
      // Asking for an unsat core after a sat answer draws a complaint that
      // is part of normal operation. Any other error means the solver did
      // not process the whole document, so nothing it answered afterwards
      // can be trusted.
      std::string message;
      for (std::size_t idx = 1; idx < form.items.size(); ++idx) {
        if (!form.items[idx].is_atom) continue;
        if (!message.empty()) message += ' ';
        message += form.items[idx].atom;
      }
      if (message.find("unsat core is not available") == std::string::npos &&
          fatal.empty()) {
        fatal = message;
      }
      continue;
    }
    bool all_pairs = true;
    bool all_atoms = true;
    for (const Sexp& item : form.items) {
      if (item.is_atom) {
        all_pairs = false;
      } else {
        all_atoms = false;
      }
    }
    if (all_pairs) {
      for (const Sexp& item : form.items) absorb_binding(item, outcome.model);
    } else if (all_atoms) {
      // get-unsat-core answer: a flat list of assertion names.
      for (const Sexp& item : form.items) outcome.unsat_core.push_back(item.atom);
    }
  }
  if (!fatal.empty()) {
    outcome.status = SolveStatus::unknown;
    outcome.model = SolverModel{};
    outcome.unsat_core.clear();
    outcome.diagnostics = "solver error: " + fatal;
  }
  return outcome;
}

SolveOutcome run_solver_on_document(const std::string& document,
                                    const SolverConfig& config) {
  std::string command = config.command;
  if (command.empty()) command = default_solver_command();
  if (command.empty()) {
    throw std::runtime_error(
        "no solver configured: pass --solver or set CFEVRP_SOLVER");
  }

  char path[] = "/tmp/cfevrp_XXXXXX.smt2";
  int fd = mkstemps(path, 5);
  if (fd < 0) throw std::runtime_error("cannot create solver input file");
  {
    std::ofstream out(path);
    out << document;
    if (!out) {
      close(fd);
      std::remove(path);
      throw std::runtime_error("cannot write solver input file");
    }
  }
  close(fd);

  std::vector<std::string> argv = split_command(command);
  argv.push_back(path);
  RunResult run = run_process(argv, config.time_limit);

  const bool keep = std::getenv("CFEVRP_KEEP_SMT2") != nullptr;
  if (!keep) std::remove(path);

  SolveOutcome outcome = parse_solver_output(run.out);
  outcome.solve_seconds = run.elapsed_seconds;
  outcome.timed_out = run.timed_out;
  if (run.timed_out) outcome.status = SolveStatus::unknown;
  if (!run.err.empty()) {
    constexpr std::size_t kTail = 2000;
    if (!outcome.diagnostics.empty()) outcome.diagnostics += '\n';
    outcome.diagnostics += run.err.size() > kTail
                               ? run.err.substr(run.err.size() - kTail)
                               : run.err;
  }
  if (keep) outcome.diagnostics += std::string("\nsolver input kept at ") + path;
  if (!run.timed_out && run.exit_code != 0 &&
      outcome.status == SolveStatus::unknown) {
    outcome.diagnostics +=
        "\nsolver exited with code " + std::to_string(run.exit_code);
  }
  return outcome;
}

SolveOutcome run_solver(const EncodedModel& model, const SolverConfig& config) {
  EmitOptions options;
  options.mode = SolveMode::satisfy;
  options.random_seed = config.random_seed;
  return run_solver_on_document(emit_smtlib(model, options), config);
}

namespace {

long long model_cost(const SolverModel& model) {
  auto cost = model.int_value("total_cost");
  return cost ? *cost : 0;
}

}  // namespace

OptimizeResult optimize_native(const EncodedModel& model,
                               const SolverConfig& config) {
  EmitOptions options;
  options.mode = SolveMode::optimize_native;
  options.random_seed = config.random_seed;
  SolveOutcome outcome =
      run_solver_on_document(emit_smtlib(model, options), config);
  OptimizeResult result;
  result.status = outcome.status;
  result.solver_runs = 1;
  result.total_seconds = outcome.solve_seconds;
  if (outcome.status == SolveStatus::sat) {
    result.best_model = std::move(outcome.model);
    result.best_cost = model_cost(result.best_model);
    result.proved_optimal = true;
  }
  return result;
}

OptimizeResult optimize_by_bound_search(const EncodedModel& model,
                                        const SolverConfig& config) {
  OptimizeResult result;
  EmitOptions options;
  options.mode = SolveMode::satisfy;
  options.random_seed = config.random_seed;

  SolveOutcome first = run_solver_on_document(emit_smtlib(model, options), config);
  result.status = first.status;
  result.solver_runs = 1;
  result.total_seconds = first.solve_seconds;
  if (first.status != SolveStatus::sat) return result;

  result.best_model = std::move(first.model);
  result.best_cost = model_cost(result.best_model);

  long long lower = 0;
  long long upper = result.best_cost - 1;
  bool interrupted = false;
  while (lower <= upper) {
    long long mid = lower + (upper - lower) / 2;
    options.cost_bound = mid;
    SolveOutcome probe =
        run_solver_on_document(emit_smtlib(model, options), config);
    ++result.solver_runs;
    result.total_seconds += probe.solve_seconds;
    if (probe.status == SolveStatus::sat) {
      result.best_model = std::move(probe.model);
      result.best_cost = model_cost(result.best_model);
      upper = result.best_cost - 1;
    } else if (probe.status == SolveStatus::unsat) {
      lower = mid + 1;
    } else {
      interrupted = true;  // timeout or solver failure: keep best so far
      break;
    }
  }
  result.proved_optimal = !interrupted;
  return result;
}

OptimizeResult solve_with_mode(const EncodedModel& model, SolveMode mode,
                               const SolverConfig& config) {
  switch (mode) {
    case SolveMode::optimize_native:
      return optimize_native(model, config);
    case SolveMode::optimize_bound_search:
      return optimize_by_bound_search(model, config);
    case SolveMode::satisfy:
      break;
  }
  SolveOutcome outcome = run_solver(model, config);
  OptimizeResult result;
  result.status = outcome.status;
  result.solver_runs = 1;
  result.total_seconds = outcome.solve_seconds;
  if (outcome.status == SolveStatus::sat) {
    result.best_model = std::move(outcome.model);
    result.best_cost = model_cost(result.best_model);
    result.proved_optimal = false;  // feasibility only
  }
  return result;
}

}  // namespace cfevrp
