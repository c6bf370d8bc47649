#include "cfevrp/validate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cfevrp {

namespace {

struct Checker {
  const Instance& inst;
  const Schedule& sched;
  ValidationReport report;

  int V, N, T, B;
  std::vector<bool> charger;

  explicit Checker(const Instance& instance, const Schedule& schedule)
      : inst(instance), sched(schedule) {
    V = static_cast<int>(inst.vehicles.size());
    N = inst.graph.node_count();
    T = inst.horizon;
    B = inst.deadline;
    charger.assign(N, false);
    for (int n : inst.battery.stations) charger[n] = true;
  }

  const std::string& vid(int i) const { return inst.vehicles[i].id; }
  const std::string& nid(int n) const { return inst.graph.nodes[n]; }
  const std::string& jid(int j) const { return inst.jobs[j].id; }
  const std::string& tid(int j, int k) const { return inst.jobs[j].tasks[k].id; }

  std::optional<int> location(int i, int t) const {
    const auto& loc = sched.vehicles[i].location;
    auto it = loc.find(t);
    if (it == loc.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> charge(int i, int t) const {
    const auto& rc = sched.vehicles[i].charge;
    auto it = rc.find(t);
    if (it == rc.end()) return std::nullopt;
    return it->second;
  }

  // First recorded departure of vehicle i at instant t, if any.
  const MoveEvent* departure(int i, int t) const {
    for (const MoveEvent& m : sched.vehicles[i].moves) {
      if (m.t == t) return &m;
    }
    return nullptr;
  }

  int edge_length(const MoveEvent& m) const {
    if (m.from == m.to || !inst.graph.has_edge(m.from, m.to)) return -1;
    return inst.graph.edge(m.from, m.to).length;
  }

  void add(const std::string& family, const std::string& witness) {
    report.checks.push_back({family, witness.empty(), witness});
  }

  template <typename... Args>
  std::string msg(Args&&... args) const {
    std::ostringstream out;
    (out << ... << args);
    return out.str();
  }

  // --- structural sanity -------------------------------------------------

  std::string check_structure() const {
    if (static_cast<int>(sched.vehicles.size()) != V) {
      return msg("schedule describes ", sched.vehicles.size(),
                 " vehicles, instance has ", V);
    }
    for (int i = 0; i < V; ++i) {
      const VehicleTimeline& tl = sched.vehicles[i];
      for (const auto& [t, n] : tl.location) {
        if (t < 0 || t > T) {
          return msg("vehicle ", vid(i), ": timeline instant ", t, " outside 0..", T);
        }
        if (n < 0 || n >= N) {
          return msg("vehicle ", vid(i), ": invalid node index ", n, " at t=", t);
        }
      }
      for (const MoveEvent& m : tl.moves) {
        if (m.t < 0 || m.t >= T) {
          return msg("vehicle ", vid(i), ": departure instant ", m.t,
                     " outside 0..", T - 1);
        }
        if (m.from < 0 || m.from >= N || m.to < 0 || m.to >= N) {
          return msg("vehicle ", vid(i), ": departure at t=", m.t,
                     " references an invalid node");
        }
      }
      for (const ServiceEvent& s : tl.services) {
        if (s.job < 0 || s.job >= static_cast<int>(inst.jobs.size())) {
          return msg("vehicle ", vid(i), ": service references invalid job index ",
                     s.job);
        }
        const Job& job = inst.jobs[s.job];
        if (s.task < 0 || s.task >= static_cast<int>(job.tasks.size())) {
          return msg("vehicle ", vid(i), ": service references invalid task index ",
                     s.task, " of job ", job.id);
        }
        if (s.t < 0 || s.t > T) {
          return msg("vehicle ", vid(i), ": service instant ", s.t, " outside 0..", T);
        }
      }
      for (const auto& [t, rc] : tl.charge) {
        (void)rc;
        if (t < 0 || t > T) {
          return msg("vehicle ", vid(i), ": charge instant ", t, " outside 0..", T);
        }
      }
      for (int t = 0; t <= T; ++t) {
        if (!tl.charge.count(t)) {
          return msg("vehicle ", vid(i), ": no charge value at t=", t);
        }
      }
    }
    return "";
  }

  // --- service checks ----------------------------------------------------

  struct ServiceIndex {
    // Serving vehicle per task: -1 none, -2 several vehicles.
    std::vector<std::vector<int>> task_vehicle;
    std::vector<std::vector<int>> task_count;
    std::vector<std::vector<int>> task_time;  // earliest service instant
  };

  ServiceIndex index_services() const {
    ServiceIndex ix;
    ix.task_vehicle.resize(inst.jobs.size());
    ix.task_count.resize(inst.jobs.size());
    ix.task_time.resize(inst.jobs.size());
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      ix.task_vehicle[j].assign(inst.jobs[j].tasks.size(), -1);
      ix.task_count[j].assign(inst.jobs[j].tasks.size(), 0);
      ix.task_time[j].assign(inst.jobs[j].tasks.size(), -1);
    }
    for (int i = 0; i < V; ++i) {
      for (const ServiceEvent& s : sched.vehicles[i].services) {
        int& owner = ix.task_vehicle[s.job][s.task];
        if (owner == -1) {
          owner = i;
        } else if (owner != i) {
          owner = -2;
        }
        ix.task_count[s.job][s.task]++;
        int& when = ix.task_time[s.job][s.task];
        if (when < 0 || s.t < when) when = s.t;
      }
    }
    return ix;
  }

  void check_services() {
    ServiceIndex ix = index_services();
    std::string w_cover, w1, w2, w3, w4, w5, w6, w7, w8, w18;

    for (std::size_t j = 0; j < inst.jobs.size() && w_cover.empty(); ++j) {
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        if (ix.task_count[j][k] == 0) {
          w_cover = msg("task ", tid(j, k), " of job ", jid(j), " is never served");
          break;
        }
      }
    }

    // One vehicle per job.
    for (std::size_t j = 0; j < inst.jobs.size() && w2.empty(); ++j) {
      std::set<int> servers;
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        int owner = ix.task_vehicle[j][k];
        if (owner != -1) servers.insert(owner);
      }
      if (servers.size() > 1 || servers.count(-2)) {
        w2 = msg("job ", jid(j), " is served by more than one vehicle");
      }
    }

    // One vehicle per task.
    for (std::size_t j = 0; j < inst.jobs.size() && w3.empty(); ++j) {
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        if (ix.task_vehicle[j][k] == -2) {
          w3 = msg("task ", tid(j, k), " of job ", jid(j),
                   " is served by several vehicles");
          break;
        }
      }
    }

    // Exactly one service event per task.
    for (std::size_t j = 0; j < inst.jobs.size() && w4.empty(); ++j) {
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        if (ix.task_count[j][k] > 1) {
          w4 = msg("task ", tid(j, k), " of job ", jid(j), " is served ",
                   ix.task_count[j][k], " times");
          break;
        }
      }
    }

    // All tasks of a job belong to the same vehicle.
    for (std::size_t j = 0; j < inst.jobs.size() && w6.empty(); ++j) {
      int owner = -1;
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        int o = ix.task_vehicle[j][k];
        if (o == -2) {
          owner = -2;
          break;
        }
        if (o >= 0) {
          if (owner >= 0 && o != owner) {
            owner = -2;
            break;
          }
          owner = o;
        }
      }
      if (owner == -2) {
        w6 = msg("job ", jid(j), " is not handled as a unit by one vehicle");
      }
    }

    // Eligibility.
    for (std::size_t j = 0; j < inst.jobs.size() && w8.empty(); ++j) {
      const std::vector<int>& el = inst.jobs[j].eligible;
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        int owner = ix.task_vehicle[j][k];
        if (owner >= 0 && std::find(el.begin(), el.end(), owner) == el.end()) {
          w8 = msg("job ", jid(j), " is served by ineligible vehicle ", vid(owner));
          break;
        }
      }
    }

    // Stand at the task's location when serving; stay inside the window.
    for (int i = 0; i < V; ++i) {
      for (const ServiceEvent& s : sched.vehicles[i].services) {
        const Task& task = inst.jobs[s.job].tasks[s.task];
        if (w1.empty()) {
          auto loc = location(i, s.t);
          if (!loc || *loc != task.location) {
            w1 = msg("vehicle ", vid(i), " serves task ", tid(s.job, s.task),
                     " at t=", s.t, " without standing at ", nid(task.location));
          }
        }
        if (w7.empty() && (s.t < task.tw_lower || s.t > task.tw_upper)) {
          w7 = msg("task ", tid(s.job, s.task), " of job ", jid(s.job),
                   " served at t=", s.t, " outside window [", task.tw_lower, ",",
                   task.tw_upper, "]");
        }
      }
    }

    // Precedence: predecessors strictly earlier.
    for (std::size_t j = 0; j < inst.jobs.size() && w5.empty(); ++j) {
      for (std::size_t k = 0; k < inst.jobs[j].tasks.size(); ++k) {
        int tk = ix.task_time[j][k];
        if (tk < 0) continue;
        for (int p : inst.jobs[j].tasks[k].predecessors) {
          int tp = ix.task_time[j][p];
          if (tp >= 0 && tp >= tk) {
            w5 = msg("task ", tid(j, k), " of job ", jid(j), " served at t=", tk,
                     " not after predecessor ", tid(j, p), " served at t=", tp);
            break;
          }
        }
      }
    }

    // No other job served strictly between two services of one job.
    for (int i = 0; i < V && w18.empty(); ++i) {
      const auto& events = sched.vehicles[i].services;
      for (const ServiceEvent& a : events) {
        for (const ServiceEvent& b : events) {
          if (a.job != b.job || a.t > b.t) continue;
          for (const ServiceEvent& c : events) {
            if (c.job == a.job) continue;
            if (c.t > a.t && c.t <= b.t) {
              w18 = msg("vehicle ", vid(i), " serves job ", jid(c.job), " at t=", c.t,
                        " between services of job ", jid(a.job), " at t=", a.t,
                        " and t=", b.t);
              break;
            }
          }
          if (!w18.empty()) break;
        }
        if (!w18.empty()) break;
      }
    }

    add("cover", w_cover);
    add("1", w1);
    add("2", w2);
    add("3", w3);
    add("4", w4);
    add("5", w5);
    add("6", w6);
    add("7", w7);
    add("8", w8);
    pending_w18 = w18;
  }

  std::string pending_w18;

  // --- movement checks ---------------------------------------------------

  void check_movement() {
    std::string w9, w10, w11, w12, w13, w14, w15, w16, w17;

    for (int i = 0; i < V; ++i) {
      int start = inst.vehicles[i].start;
      auto loc0 = location(i, 0);
      if (w9.empty() && (!loc0 || *loc0 != start)) {
        w9 = msg("vehicle ", vid(i), " does not start at ", nid(start));
      }
      auto locB = location(i, B);
      if (w10.empty() && (!locB || *locB != start)) {
        w10 = msg("vehicle ", vid(i), " is not back at ", nid(start),
                  " at the deadline t=", B);
      }
    }

    // The timeline maps each instant to at most one node by construction;
    // only node validity (checked structurally) could break this family.

    for (int t = 0; t <= T && w12.empty(); ++t) {
      std::vector<int> seen(N, -1);
      for (int i = 0; i < V; ++i) {
        auto loc = location(i, t);
        if (!loc || inst.graph.hub[*loc]) continue;
        if (seen[*loc] >= 0) {
          w12 = msg("vehicles ", vid(seen[*loc]), " and ", vid(i),
                    " share non-hub ", nid(*loc), " at t=", t);
          break;
        }
        seen[*loc] = i;
      }
    }

    for (int i = 0; i < V; ++i) {
      std::map<int, int> per_instant;
      for (const MoveEvent& m : sched.vehicles[i].moves) {
        if (w13.empty() && ++per_instant[m.t] > 1) {
          w13 = msg("vehicle ", vid(i), " departs twice at t=", m.t);
        }
        if (w14.empty() && m.from == m.to) {
          w14 = msg("vehicle ", vid(i), " moves from ", nid(m.from),
                    " to itself at t=", m.t);
        }
        if (w15.empty() && m.from != m.to && !inst.graph.has_edge(m.from, m.to)) {
          w15 = msg("vehicle ", vid(i), " departs over missing edge ",
                    nid(m.from), "->", nid(m.to), " at t=", m.t);
        }
      }
    }

    // Stay put without a departure.
    for (int i = 0; i < V && w16.empty(); ++i) {
      for (int t = 0; t < T; ++t) {
        auto here = location(i, t);
        if (!here || departure(i, t)) continue;
        auto next = location(i, t + 1);
        if (!next || *next != *here) {
          w16 = msg("vehicle ", vid(i), " leaves ", nid(*here), " after t=", t,
                    " without a departure");
          break;
        }
      }
    }

    // Traversal shape: at the origin when departing; at no node in between;
    // arrive on time. Departures too late to finish inside the horizon
    // carry no arrival obligations (they can only start after the deadline).
    for (int i = 0; i < V && w17.empty(); ++i) {
      for (const MoveEvent& m : sched.vehicles[i].moves) {
        auto here = location(i, m.t);
        if (!here) {
          w17 = msg("vehicle ", vid(i), " departs at t=", m.t,
                    " while at no node");
          break;
        }
        if (*here != m.from) {
          w17 = msg("vehicle ", vid(i), " departs from ", nid(m.from), " at t=", m.t,
                    " but stands at ", nid(*here));
          break;
        }
        int d = edge_length(m);
        if (d < 0 || m.t + d > T) continue;
        for (int s = 1; s < d && w17.empty(); ++s) {
          if (location(i, m.t + s)) {
            w17 = msg("vehicle ", vid(i), " occupies a node at t=", m.t + s,
                      " while traversing ", nid(m.from), "->", nid(m.to));
          }
        }
        if (!w17.empty()) break;
        auto there = location(i, m.t + d);
        if (!there || *there != m.to) {
          w17 = msg("vehicle ", vid(i), " does not arrive at ", nid(m.to),
                    " at t=", m.t + d, " after departing at t=", m.t);
          break;
        }
      }
    }

    // Up to the deadline every vehicle is at a node or inside a traversal.
    for (int i = 0; i < V && w17.empty(); ++i) {
      for (int t = 0; t <= B; ++t) {
        if (location(i, t)) continue;
        bool in_transit = false;
        for (const MoveEvent& m : sched.vehicles[i].moves) {
          int d = edge_length(m);
          if (d > 0 && m.t < t && t < m.t + d) {
            in_transit = true;
            break;
          }
        }
        if (!in_transit) {
          w17 = msg("vehicle ", vid(i), " is at no node and not in transit at t=", t);
          break;
        }
      }
    }

    add("9", w9);
    add("10", w10);
    add("11", w11);
    add("12", w12);
    add("13", w13);
    add("14", w14);
    add("15", w15);
    add("16", w16);
    add("17", w17);
    add("18", pending_w18);
  }

  // --- capacity checks ---------------------------------------------------

  void check_capacity() {
    std::string w19, w20;

    // Departure groups: (t, from, to) -> vehicles.
    std::map<std::tuple<int, int, int>, std::vector<int>> groups;
    for (int i = 0; i < V; ++i) {
      for (const MoveEvent& m : sched.vehicles[i].moves) {
        if (edge_length(m) > 0) groups[{m.t, m.from, m.to}].push_back(i);
      }
    }

    for (const auto& [key, members] : groups) {
      const auto [t, from, to] = key;
      int g = inst.graph.edge(from, to).capacity;
      if (w19.empty() && static_cast<int>(members.size()) > g) {
        w19 = msg(members.size(), " vehicles enter edge ", nid(from), "->",
                  nid(to), " at t=", t, ", capacity ", g);
      }
    }

    // While a vehicles hold an edge, vehicles standing at the far end when
    // the group departed may enter toward the origin only while the total
    // stays within capacity.
    for (const auto& [key, members] : groups) {
      if (!w20.empty()) break;
      const auto [t, from, to] = key;
      const EdgeAttr& attr = inst.graph.edge(from, to);
      int a = static_cast<int>(members.size());
      if (a > attr.capacity) continue;  // reported above
      std::set<int> group(members.begin(), members.end());
      for (int t2 = t; t2 <= t + attr.length && w20.empty(); ++t2) {
        int entering = 0;
        int witness_vehicle = -1;
        for (int i2 = 0; i2 < V; ++i2) {
          if (group.count(i2)) continue;
          auto far = location(i2, t);
          if (!far || *far != to) continue;
          const MoveEvent* dep = departure(i2, t2);
          if (dep && dep->to == from) {
            ++entering;
            witness_vehicle = i2;
          }
        }
        if (entering > attr.capacity - a) {
          w20 = msg("vehicle ", vid(witness_vehicle), " enters toward ", nid(from),
                    " at t=", t2, " against ", a, " vehicle(s) holding ",
                    nid(from), "->", nid(to), " since t=", t, " (capacity ",
                    attr.capacity, ")");
        }
      }
    }

    add("19", w19);
    add("20", w20);

    // Same-direction pileups at distinct instants are not ruled out by any
    // family; surface them as a note so benchmark readers can spot them.
    std::set<std::pair<int, int>> noted;
    for (const auto& [key1, members1] : groups) {
      const auto [t1, from, to] = key1;
      const EdgeAttr& attr = inst.graph.edge(from, to);
      if (attr.length < 2 || noted.count({from, to})) continue;
      for (const auto& [key2, members2] : groups) {
        const auto [t2, from2, to2] = key2;
        if (from2 != from || to2 != to || t2 <= t1 || t2 >= t1 + attr.length) continue;
        if (static_cast<int>(members1.size() + members2.size()) > attr.capacity) {
          report.notes.push_back(
              msg("edge ", nid(from), "->", nid(to), " holds ",
                  members1.size() + members2.size(),
                  " same-direction vehicles in overlapping traversals starting t=",
                  t1, " and t=", t2, " (capacity ", attr.capacity, ")"));
          noted.insert({from, to});
          break;
        }
      }
    }
  }

  // --- battery checks ----------------------------------------------------

  void check_battery() {
    std::string w21, w22, w23, w24;
    const int OR = inst.battery.operating_range;
    const int C = inst.battery.charge_coeff;
    const int D = inst.battery.discharge_coeff;

    report.min_charge = OR;
    report.max_charge = 0;

    for (int i = 0; i < V; ++i) {
      for (int t = 0; t <= T; ++t) {
        auto rc = charge(i, t);
        if (!rc) continue;  // structure pass reports missing values
        report.min_charge = std::min(report.min_charge, *rc);
        report.max_charge = std::max(report.max_charge, *rc);
        if (w21.empty() && (*rc < 0 || *rc > OR)) {
          w21 = msg("vehicle ", vid(i), " has charge ", *rc, " at t=", t,
                    " outside 0..", OR);
        }
      }
      auto rc0 = charge(i, 0);
      if (w21.empty() && rc0 && *rc0 != OR) {
        w21 = msg("vehicle ", vid(i), " starts with charge ", *rc0,
                  " instead of ", OR);
      }
    }

    // Traversals drain one discharge step per instant.
    for (int i = 0; i < V && w22.empty(); ++i) {
      for (const MoveEvent& m : sched.vehicles[i].moves) {
        int d = edge_length(m);
        if (d < 0 || m.t + d > T) continue;
        for (int s = 1; s <= d; ++s) {
          auto before = charge(i, m.t + s - 1);
          auto after = charge(i, m.t + s);
          if (before && after && *after != *before - D) {
            w22 = msg("vehicle ", vid(i), " charge goes ", *before, "->", *after,
                      " at t=", m.t + s, " during ", nid(m.from), "->", nid(m.to),
                      " (expected -", D, ")");
            break;
          }
        }
        if (!w22.empty()) break;
      }
    }

    // Waiting holds the charge; waiting at a charging station adds C.
    for (int i = 0; i < V; ++i) {
      for (int t = 0; t < T; ++t) {
        auto here = location(i, t);
        if (!here || departure(i, t)) continue;
        auto before = charge(i, t);
        auto after = charge(i, t + 1);
        if (!before || !after) continue;
        if (charger[*here]) {
          if (w24.empty() && *after != *before + C) {
            w24 = msg("vehicle ", vid(i), " waits at station ", nid(*here),
                      " at t=", t, " but charge goes ", *before, "->", *after,
                      " (expected +", C, ")");
          }
        } else {
          if (w23.empty() && *after != *before) {
            w23 = msg("vehicle ", vid(i), " waits at ", nid(*here), " at t=", t,
                      " but charge goes ", *before, "->", *after);
          }
        }
      }
    }

    add("21", w21);
    add("22", w22);
    add("23", w23);
    add("24", w24);
  }

  // --- cost check ----------------------------------------------------------

  void check_cost() {
    long long cost = 0;
    for (int i = 0; i < V; ++i) {
      for (const MoveEvent& m : sched.vehicles[i].moves) {
        int d = edge_length(m);
        if (d > 0) cost += d;
      }
    }
    report.recomputed_cost = cost;
    report.schedule_cost = sched.total_cost;
    std::string w25;
    if (cost != sched.total_cost) {
      w25 = msg("schedule reports cost ", sched.total_cost,
                ", traversed distance sums to ", cost);
    }
    add("25", w25);
  }

  ValidationReport run() {
    std::string structural = check_structure();
    add("structure", structural);
    if (!structural.empty()) {
      report.ok = false;
      return report;
    }
    check_services();
    check_movement();
    check_capacity();
    check_battery();
    check_cost();
    report.ok = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const FamilyCheck& c) { return c.passed; });
    return report;
  }
};

}  // namespace

ValidationReport validate_schedule(const Instance& instance,
                                   const Schedule& schedule) {
  Checker checker(instance, schedule);
  return checker.run();
}

std::string validation_report_text(const ValidationReport& report) {
  std::ostringstream out;
  for (const FamilyCheck& check : report.checks) {
    out << (check.passed ? "pass " : "FAIL ") << check.family;
    if (!check.witness.empty()) out << ": " << check.witness;
    out << "\n";
  }
  for (const std::string& note : report.notes) out << "note: " << note << "\n";
  out << "cost " << report.schedule_cost << " (recomputed "
      << report.recomputed_cost << "), charge range [" << report.min_charge
      << ", " << report.max_charge << "]\n";
  out << (report.ok ? "VALID" : "INVALID") << "\n";
  return out.str();
}

std::string validation_report_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["ok"] = report.ok;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const FamilyCheck& check : report.checks) {
    nlohmann::ordered_json entry;
    entry["family"] = check.family;
    entry["passed"] = check.passed;
    if (!check.witness.empty()) entry["witness"] = check.witness;
    doc["checks"].push_back(entry);
  }
  doc["notes"] = report.notes;
  doc["cost"] = report.schedule_cost;
  doc["recomputed_cost"] = report.recomputed_cost;
  doc["min_charge"] = report.min_charge;
  doc["max_charge"] = report.max_charge;
  return doc.dump(2) + "\n";
}

}  // namespace cfevrp
