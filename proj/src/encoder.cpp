#include "cfevrp/encoder.hpp"

#include <algorithm>
#include <cctype>

namespace cfevrp {

namespace {

bool clean_identifier(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Use the instance's own ids when every id in the category is a clean,
// unique identifier; otherwise fall back to positional indices.
std::vector<std::string> name_table(const std::vector<std::string>& ids) {
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  bool ok = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  for (const std::string& id : ids) {
    if (!clean_identifier(id)) ok = false;
  }
  if (ok) return ids;
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out.push_back(std::to_string(i));
  return out;
}

// Lexicographically next k-combination of 0..n-1; false when exhausted.
bool next_combination(std::vector<int>& comb, int n) {
  int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

VariableLayout::VariableLayout(const Instance& instance) {
  horizon_ = instance.horizon;
  std::vector<std::string> vids, jids;
  for (const Vehicle& v : instance.vehicles) vids.push_back(v.id);
  for (const Job& j : instance.jobs) jids.push_back(j.id);
  vehicle_names_ = name_table(vids);
  node_names_ = name_table(instance.graph.nodes);
  job_names_ = name_table(jids);
  for (const Job& j : instance.jobs) {
    std::vector<std::string> tids;
    for (const Task& k : j.tasks) tids.push_back(k.id);
    task_names_.push_back(name_table(tids));
  }
}

std::string VariableLayout::x(int i, int j) const {
  return "x." + veh_name(i) + "." + job_name(j);
}

std::string VariableLayout::y(int i, int j, int k) const {
  return "y." + veh_name(i) + "." + job_name(j) + "." + task_name(j, k);
}

std::string VariableLayout::z(int i, int j, int k, int t) const {
  return "z." + veh_name(i) + "." + job_name(j) + "." + task_name(j, k) + "." +
         std::to_string(t);
}

std::string VariableLayout::at(int i, int n, int t) const {
  return "at." + veh_name(i) + "." + node_name(n) + "." + std::to_string(t);
}

std::string VariableLayout::move(int i, int n, int t) const {
  return "move." + veh_name(i) + "." + node_name(n) + "." + std::to_string(t);
}

std::string VariableLayout::rc(int i, int t) const {
  return "rc." + veh_name(i) + "." + std::to_string(t);
}

std::string VariableLayout::idle(int i, int t) const {
  return "idle." + veh_name(i) + "." + std::to_string(t);
}

std::string VariableLayout::gone(int i, int t) const {
  return "gone." + veh_name(i) + "." + std::to_string(t);
}

std::string VariableLayout::other_jobs_quiet(int i, int j, int t) const {
  return "quiet." + veh_name(i) + "." + job_name(j) + "." + std::to_string(t);
}

std::string VariableLayout::task_quiet_from(int i, int j, int k, int t) const {
  return "clear." + veh_name(i) + "." + job_name(j) + "." + task_name(j, k) +
         "." + std::to_string(t);
}

std::string smt_and(const std::vector<std::string>& terms) {
  if (terms.empty()) return "true";
  if (terms.size() == 1) return terms[0];
  std::string out = "(and";
  for (const std::string& t : terms) {
    out += ' ';
    out += t;
  }
  out += ')';
  return out;
}

std::string smt_or(const std::vector<std::string>& terms) {
  if (terms.empty()) return "false";
  if (terms.size() == 1) return terms[0];
  std::string out = "(or";
  for (const std::string& t : terms) {
    out += ' ';
    out += t;
  }
  out += ')';
  return out;
}

std::string smt_not(const std::string& term) { return "(not " + term + ")"; }

std::string smt_implies(const std::string& lhs, const std::string& rhs) {
  return "(=> " + lhs + " " + rhs + ")";
}

namespace {

int num_vehicles(const Instance& inst) {
  return static_cast<int>(inst.vehicles.size());
}
int num_nodes(const Instance& inst) { return inst.graph.node_count(); }
int num_jobs(const Instance& inst) { return static_cast<int>(inst.jobs.size()); }

// Vehicles eligible for job j, in index order.
const std::vector<int>& eligible(const Instance& inst, int j) {
  return inst.jobs[j].eligible;
}

void push_amo_assertions(const CardinalityFormula& formula,
                         const std::string& family, EncodeContext& ctx,
                         std::vector<Assertion>& out) {
  // One assertion per counter application keeps the emitted document small
  // and maps 1:1 to the source constraint instance.
  for (const std::string& aux : formula.aux_vars) {
    ctx.aux_decls.push_back({aux});
  }
  if (formula.clauses.empty()) return;
  std::vector<std::string> rendered;
  rendered.reserve(formula.clauses.size());
  for (const Clause& c : formula.clauses) rendered.push_back(render_clause(c));
  out.push_back({family, smt_and(rendered)});
}

}  // namespace

std::vector<Assertion> encode_assignment(const Instance& instance,
                                         const VariableLayout& layout) {
  std::vector<Assertion> out;
  const int V = num_vehicles(instance);
  const int J = num_jobs(instance);
  const int T = instance.horizon;

  // Serving a task pins the vehicle to the task's location at that instant.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
        for (int t = 0; t <= T; ++t) {
          out.push_back({"1", smt_implies(layout.z(i, j, k, t),
                                          layout.at(i, job.tasks[k].location, t))});
        }
      }
    }
  }

  // A job binds to at most one vehicle.
  if (V > 1) {
    for (int i = 0; i < V; ++i) {
      for (int j = 0; j < J; ++j) {
        std::vector<std::string> others;
        for (int i2 = 0; i2 < V; ++i2) {
          if (i2 != i) others.push_back(smt_not(layout.x(i2, j)));
        }
        out.push_back({"2", smt_implies(layout.x(i, j), smt_and(others))});
      }
    }
  }

  // A task binds to at most one vehicle.
  if (V > 1) {
    for (int i = 0; i < V; ++i) {
      for (int j = 0; j < J; ++j) {
        const Job& job = instance.jobs[j];
        for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
          std::vector<std::string> others;
          for (int i2 = 0; i2 < V; ++i2) {
            if (i2 != i) others.push_back(smt_not(layout.y(i2, j, k)));
          }
          out.push_back({"3", smt_implies(layout.y(i, j, k), smt_and(others))});
        }
      }
    }
  }

  // A bound task is actually served at some instant.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
        std::vector<std::string> instants;
        for (int t = 0; t <= T; ++t) instants.push_back(layout.z(i, j, k, t));
        out.push_back({"4", smt_implies(layout.y(i, j, k), smt_or(instants))});
      }
    }
  }

  // Predecessors are finished strictly before a task is served: serving k1
  // at t forbids every predecessor from t onward.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      for (int k1 = 0; k1 < static_cast<int>(job.tasks.size()); ++k1) {
        if (job.tasks[k1].predecessors.empty()) continue;
        for (int t = 0; t <= T; ++t) {
          std::vector<std::string> quiet;
          for (int k2 : job.tasks[k1].predecessors) {
            quiet.push_back(layout.task_quiet_from(i, j, k2, t));
          }
          out.push_back(
              {"5", smt_implies(layout.z(i, j, k1, t), smt_and(quiet))});
        }
      }
    }
  }

  // Taking a job means taking every one of its tasks.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      std::vector<std::string> tasks;
      for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
        tasks.push_back(layout.y(i, j, k));
      }
      out.push_back({"6", smt_implies(layout.x(i, j), smt_and(tasks))});
    }
  }

  // Service happens inside the task's time window.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
        std::vector<std::string> window;
        for (int t = job.tasks[k].tw_lower; t <= job.tasks[k].tw_upper; ++t) {
          window.push_back(layout.z(i, j, k, t));
        }
        out.push_back({"7", smt_implies(layout.y(i, j, k), smt_or(window))});
      }
    }
  }

  // Ineligible vehicles never take the job.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const std::vector<int>& el = eligible(instance, j);
      if (std::find(el.begin(), el.end(), i) == el.end()) {
        out.push_back({"8", smt_not(layout.x(i, j))});
      }
    }
  }

  // Every job is taken by some eligible vehicle.
  for (int j = 0; j < J; ++j) {
    std::vector<std::string> takers;
    for (int i : eligible(instance, j)) takers.push_back(layout.x(i, j));
    out.push_back({"cover", smt_or(takers)});
  }

  // Task binding implies job binding.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
        out.push_back(
            {"channel", smt_implies(layout.y(i, j, k), layout.x(i, j))});
      }
    }
  }

  return out;
}

std::vector<Assertion> encode_movement(const Instance& instance,
                                       const VariableLayout& layout,
                                       EncodeContext& ctx) {
  std::vector<Assertion> out;
  const int V = num_vehicles(instance);
  const int N = num_nodes(instance);
  const int J = num_jobs(instance);
  const int T = instance.horizon;
  const int B = instance.deadline;

  // Vehicles start at their depot...
  for (int i = 0; i < V; ++i) {
    out.push_back({"9", layout.at(i, instance.vehicles[i].start, 0)});
  }
  // ...and are back by the deadline.
  for (int i = 0; i < V; ++i) {
    out.push_back({"10", layout.at(i, instance.vehicles[i].start, B)});
  }

  // A vehicle occupies at most one node per instant.
  for (int i = 0; i < V; ++i) {
    for (int t = 0; t <= T; ++t) {
      std::vector<std::string> vars;
      for (int n = 0; n < N; ++n) vars.push_back(layout.at(i, n, t));
      push_amo_assertions(amo(vars, ctx.aux), "11", ctx, out);
    }
  }

  // Non-hub nodes hold at most one vehicle.
  for (int n = 0; n < N; ++n) {
    if (instance.graph.hub[n]) continue;
    for (int t = 0; t <= T; ++t) {
      std::vector<std::string> vars;
      for (int i = 0; i < V; ++i) vars.push_back(layout.at(i, n, t));
      push_amo_assertions(amo(vars, ctx.aux), "12", ctx, out);
    }
  }

  // A vehicle commits to at most one destination per instant.
  for (int i = 0; i < V; ++i) {
    for (int t = 0; t <= T; ++t) {
      std::vector<std::string> vars;
      for (int n = 0; n < N; ++n) vars.push_back(layout.move(i, n, t));
      push_amo_assertions(amo(vars, ctx.aux), "13", ctx, out);
    }
  }

  // No moving to the node already occupied.
  for (int i = 0; i < V; ++i) {
    for (int n = 0; n < N; ++n) {
      for (int t = 0; t <= T; ++t) {
        out.push_back({"14", smt_implies(layout.at(i, n, t),
                                         smt_not(layout.move(i, n, t)))});
      }
    }
  }

  // Destinations must be adjacent to the current node.
  for (int n = 0; n < N; ++n) {
    std::vector<bool> reachable(N, false);
    reachable[n] = true;  // handled by the self-move ban above
    for (int n2 : instance.graph.adjacency[n]) reachable[n2] = true;
    std::vector<int> banned;
    for (int n2 = 0; n2 < N; ++n2) {
      if (!reachable[n2]) banned.push_back(n2);
    }
    if (banned.empty()) continue;
    for (int i = 0; i < V; ++i) {
      for (int t = 0; t <= T; ++t) {
        std::vector<std::string> offs;
        for (int n2 : banned) offs.push_back(smt_not(layout.move(i, n2, t)));
        out.push_back({"15", smt_implies(layout.at(i, n, t), smt_and(offs))});
      }
    }
  }

  // Stay put unless a move is decided.
  for (int i = 0; i < V; ++i) {
    for (int n = 0; n < N; ++n) {
      for (int t = 0; t < T; ++t) {
        out.push_back(
            {"16", smt_implies(smt_and({layout.at(i, n, t), layout.idle(i, t)}),
                               layout.at(i, n, t + 1))});
      }
    }
  }

  // Edge traversal: depart, be at no node while in transit, arrive after
  // the edge's length. Departures later than T - d are left unconstrained;
  // they can only begin after the deadline.
  for (int i = 0; i < V; ++i) {
    for (const auto& [key, attr] : instance.graph.edges) {
      const auto [from, to] = key;
      for (int t = 0; t + attr.length <= T; ++t) {
        std::vector<std::string> rhs;
        for (int s = 1; s < attr.length; ++s) rhs.push_back(layout.gone(i, t + s));
        rhs.push_back(layout.at(i, to, t + attr.length));
        out.push_back(
            {"17",
             smt_implies(smt_and({layout.at(i, from, t), layout.move(i, to, t)}),
                         smt_and(rhs))});
      }
    }
  }

  // Between two services of the same job, the vehicle serves no other job.
  if (J > 1) {
    for (int i = 0; i < V; ++i) {
      for (int j = 0; j < J; ++j) {
        const Job& job = instance.jobs[j];
        const int K = static_cast<int>(job.tasks.size());
        for (int k1 = 0; k1 < K; ++k1) {
          for (int k2 = 0; k2 < K; ++k2) {
            if (k1 == k2) continue;
            for (int t1 = 0; t1 <= T; ++t1) {
              for (int t2 = t1 + 1; t2 <= T; ++t2) {
                std::vector<std::string> quiet;
                for (int tc = t1 + 1; tc <= t2; ++tc) {
                  quiet.push_back(layout.other_jobs_quiet(i, j, tc));
                }
                out.push_back(
                    {"18", smt_implies(smt_and({layout.z(i, j, k1, t1),
                                                layout.z(i, j, k2, t2)}),
                                       smt_and(quiet))});
              }
            }
          }
        }
      }
    }
  }

  return out;
}

std::vector<Assertion> encode_capacity(const Instance& instance,
                                       const VariableLayout& layout) {
  std::vector<Assertion> out;
  const int V = num_vehicles(instance);
  const int T = instance.horizon;

  for (const auto& [key, attr] : instance.graph.edges) {
    const auto [from, to] = key;
    const int g = attr.capacity;
    if (g >= V) continue;  // can never be exceeded

    // No g+1 vehicles enter the edge together: for every subset of size
    // g+1, at least one member is elsewhere or not departing.
    {
      std::vector<int> comb(g + 1);
      for (int idx = 0; idx <= g; ++idx) comb[idx] = idx;
      do {
        for (int t = 0; t <= T; ++t) {
          std::vector<std::string> lits;
          for (int i : comb) lits.push_back(smt_not(layout.at(i, from, t)));
          for (int i : comb) lits.push_back(smt_not(layout.move(i, to, t)));
          out.push_back({"19", smt_or(lits)});
        }
      } while (next_combination(comb, V));
    }

    // Head-on exclusion: while a vehicles hold the edge from one side, at
    // most g - a may enter from the other. Ruled out subset-wise: a entrants
    // one way plus g - a + 1 the other way cannot coexist during the
    // traversal window.
    for (int a = 1; a <= g; ++a) {
      const int b = g - a + 1;
      if (a + b > V) continue;
      std::vector<int> first(a);
      for (int idx = 0; idx < a; ++idx) first[idx] = idx;
      do {
        std::vector<int> rest;
        for (int i = 0; i < V; ++i) {
          if (std::find(first.begin(), first.end(), i) == first.end()) {
            rest.push_back(i);
          }
        }
        std::vector<int> second_sel(b);
        for (int idx = 0; idx < b; ++idx) second_sel[idx] = idx;
        do {
          for (int t = 0; t + attr.length <= T; ++t) {
            for (int t2 = t; t2 <= t + attr.length; ++t2) {
              std::vector<std::string> lits;
              for (int i : first) lits.push_back(smt_not(layout.at(i, from, t)));
              for (int i : first) lits.push_back(smt_not(layout.move(i, to, t)));
              for (int idx : second_sel) {
                lits.push_back(smt_not(layout.at(rest[idx], to, t)));
              }
              for (int idx : second_sel) {
                lits.push_back(smt_not(layout.move(rest[idx], from, t2)));
              }
              out.push_back({"20", smt_or(lits)});
            }
          }
        } while (next_combination(second_sel, static_cast<int>(rest.size())));
      } while (next_combination(first, V));
    }
  }

  return out;
}

std::vector<Assertion> encode_battery(const Instance& instance,
                                      const VariableLayout& layout) {
  std::vector<Assertion> out;
  const int V = num_vehicles(instance);
  const int N = num_nodes(instance);
  const int T = instance.horizon;
  const int OR = instance.battery.operating_range;
  const int C = instance.battery.charge_coeff;
  const int D = instance.battery.discharge_coeff;

  std::vector<bool> charger(N, false);
  for (int n : instance.battery.stations) charger[n] = true;

  // Charge stays within the operating range.
  for (int i = 0; i < V; ++i) {
    for (int t = 0; t <= T; ++t) {
      out.push_back({"21", "(and (>= " + layout.rc(i, t) + " 0) (<= " +
                               layout.rc(i, t) + " " + std::to_string(OR) +
                               "))"});
    }
  }
  // Vehicles start fully charged.
  for (int i = 0; i < V; ++i) {
    out.push_back({"21", "(= " + layout.rc(i, 0) + " " + std::to_string(OR) + ")"});
  }

  // Traversing an edge drains one unit of discharge per step.
  for (int i = 0; i < V; ++i) {
    for (const auto& [key, attr] : instance.graph.edges) {
      const auto [from, to] = key;
      for (int t = 0; t + attr.length <= T; ++t) {
        std::vector<std::string> steps;
        for (int s = 1; s <= attr.length; ++s) {
          steps.push_back("(= " + layout.rc(i, t + s) + " (- " +
                          layout.rc(i, t + s - 1) + " " + std::to_string(D) +
                          "))");
        }
        out.push_back(
            {"22",
             smt_implies(smt_and({layout.at(i, from, t), layout.move(i, to, t)}),
                         smt_and(steps))});
      }
    }
  }

  // Waiting holds the charge level...
  for (int i = 0; i < V; ++i) {
    for (int n = 0; n < N; ++n) {
      if (charger[n]) continue;
      for (int t = 0; t < T; ++t) {
        out.push_back(
            {"23", smt_implies(smt_and({layout.at(i, n, t), layout.idle(i, t)}),
                               "(= " + layout.rc(i, t + 1) + " " +
                                   layout.rc(i, t) + ")")});
      }
    }
  }
  // ...except at charging stations, which always add the charge coefficient.
  for (int i = 0; i < V; ++i) {
    for (int n = 0; n < N; ++n) {
      if (!charger[n]) continue;
      for (int t = 0; t < T; ++t) {
        out.push_back(
            {"24", smt_implies(smt_and({layout.at(i, n, t), layout.idle(i, t)}),
                               "(= " + layout.rc(i, t + 1) + " (+ " +
                                   layout.rc(i, t) + " " + std::to_string(C) +
                                   "))")});
      }
    }
  }

  return out;
}

std::string encode_objective(const Instance& instance,
                             const VariableLayout& layout) {
  const int V = num_vehicles(instance);
  const int T = instance.horizon;
  std::vector<std::string> terms;
  for (int i = 0; i < V; ++i) {
    for (const auto& [key, attr] : instance.graph.edges) {
      const auto [from, to] = key;
      for (int t = 0; t < T; ++t) {
        terms.push_back("(ite (and " + layout.at(i, from, t) + " " +
                        layout.move(i, to, t) + ") " +
                        std::to_string(attr.length) + " 0)");
      }
    }
  }
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const std::string& t : terms) {
    out += ' ';
    out += t;
  }
  out += ')';
  return out;
}

namespace {

void declare_main_variables(const Instance& instance,
                            const VariableLayout& layout, EncodedModel& model) {
  const int V = num_vehicles(instance);
  const int N = num_nodes(instance);
  const int J = num_jobs(instance);
  const int T = instance.horizon;
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) model.declarations.push_back({layout.x(i, j)});
  }
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const int K = static_cast<int>(instance.jobs[j].tasks.size());
      for (int k = 0; k < K; ++k) {
        model.declarations.push_back({layout.y(i, j, k)});
      }
    }
  }
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const int K = static_cast<int>(instance.jobs[j].tasks.size());
      for (int k = 0; k < K; ++k) {
        for (int t = 0; t <= T; ++t) {
          model.declarations.push_back({layout.z(i, j, k, t)});
        }
      }
    }
  }
  for (int i = 0; i < V; ++i) {
    for (int n = 0; n < N; ++n) {
      for (int t = 0; t <= T; ++t) {
        model.declarations.push_back({layout.at(i, n, t)});
      }
    }
  }
  for (int i = 0; i < V; ++i) {
    for (int n = 0; n < N; ++n) {
      for (int t = 0; t <= T; ++t) {
        model.declarations.push_back({layout.move(i, n, t)});
      }
    }
  }
  for (int i = 0; i < V; ++i) {
    for (int t = 0; t <= T; ++t) {
      model.declarations.push_back({layout.rc(i, t), true});
    }
  }
}

void build_definitions(const Instance& instance, const VariableLayout& layout,
                       EncodedModel& model) {
  const int V = num_vehicles(instance);
  const int N = num_nodes(instance);
  const int J = num_jobs(instance);
  const int T = instance.horizon;

  // idle(i,t): no departure decided at t.
  for (int i = 0; i < V; ++i) {
    for (int t = 0; t < T; ++t) {
      std::vector<std::string> offs;
      for (int n = 0; n < N; ++n) offs.push_back(smt_not(layout.move(i, n, t)));
      model.definitions.push_back({layout.idle(i, t), smt_and(offs)});
    }
  }

  // gone(i,t): occupying no node (mid-traversal). Only needed when some edge
  // takes more than one step.
  if (instance.longest_edge >= 2) {
    for (int i = 0; i < V; ++i) {
      for (int t = 1; t < T; ++t) {
        std::vector<std::string> offs;
        for (int n = 0; n < N; ++n) offs.push_back(smt_not(layout.at(i, n, t)));
        model.definitions.push_back({layout.gone(i, t), smt_and(offs)});
      }
    }
  }

  // quiet(i,j,t): vehicle i serves no task of any job other than j at t.
  if (J > 1) {
    for (int i = 0; i < V; ++i) {
      for (int j = 0; j < J; ++j) {
        for (int t = 1; t <= T; ++t) {
          std::vector<std::string> offs;
          for (int j2 = 0; j2 < J; ++j2) {
            if (j2 == j) continue;
            const int K2 = static_cast<int>(instance.jobs[j2].tasks.size());
            for (int k2 = 0; k2 < K2; ++k2) {
              offs.push_back(smt_not(layout.z(i, j2, k2, t)));
            }
          }
          model.definitions.push_back(
              {layout.other_jobs_quiet(i, j, t), smt_and(offs)});
        }
      }
    }
  }

  // clear(i,j,k,t): task k is not served at any instant >= t. Built as a
  // suffix ladder, highest instant first so references resolve.
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < J; ++j) {
      const Job& job = instance.jobs[j];
      std::vector<bool> is_pred(job.tasks.size(), false);
      for (const Task& task : job.tasks) {
        for (int k2 : task.predecessors) is_pred[k2] = true;
      }
      for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
        if (!is_pred[k]) continue;
        for (int t = T; t >= 0; --t) {
          std::string body = smt_not(layout.z(i, j, k, t));
          if (t < T) {
            body = "(and " + body + " " + layout.task_quiet_from(i, j, k, t + 1) +
                   ")";
          }
          model.definitions.push_back({layout.task_quiet_from(i, j, k, t), body});
        }
      }
    }
  }
}

}  // namespace

EncodedModel encode(const Instance& instance, const EncodeOptions& options) {
  EncodedModel model;
  model.layout = VariableLayout(instance);
  declare_main_variables(instance, model.layout, model);
  build_definitions(instance, model.layout, model);

  EncodeContext ctx;
  std::vector<Assertion> groups[4] = {
      encode_assignment(instance, model.layout),
      encode_movement(instance, model.layout, ctx),
      options.capacity_families ? encode_capacity(instance, model.layout)
                                : std::vector<Assertion>{},
      encode_battery(instance, model.layout),
  };
  for (auto& group : groups) {
    for (Assertion& a : group) model.assertions.push_back(std::move(a));
  }
  for (const Declaration& d : ctx.aux_decls) model.declarations.push_back(d);
  model.objective = encode_objective(instance, model.layout);

  for (const Assertion& a : model.assertions) ++model.stats[a.family];
  return model;
}

}  // namespace cfevrp
