#include "cfevrp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace cfevrp {

namespace {

struct VehSt {
  int node;         // -1 while in transit
  int dest = -1;    // transit destination
  int arrive = -1;  // instant the transit completes
  int rc = 0;
};

// An in-progress traversal group, kept while instants may still fall inside
// its exclusion window.
struct Rec {
  int from, to, t0, len, members;
  uint32_t far;  // vehicles standing at `to` when the group departed
};

struct State {
  int t = 0;
  std::vector<VehSt> veh;
  std::vector<uint32_t> mask;  // served tasks per job
  std::vector<int> owner;      // serving vehicle per job, -1 unassigned
  std::vector<Rec> recs;
};

struct ServiceChoice {
  int job, task;
};

struct MoveChoice {
  bool depart = false;
  int dest = -1;
};

struct SEv {
  int i, j, k, t;
};
struct MEv {
  int i, from, to, t;
};

struct Engine {
  const Instance& inst;
  const OracleLimits limits;
  int V, N, B, range, chg_coeff, dis_coeff;
  std::vector<bool> charger;
  std::vector<uint32_t> full;

  long long states = 0;
  long long best = -1;
  long long cur_cost = 0;
  std::vector<SEv> cur_s, best_s;
  std::vector<MEv> cur_m, best_m;
  std::map<std::string, long long> memo;

  Engine(const Instance& instance, const OracleLimits& lim)
      : inst(instance), limits(lim) {
    V = static_cast<int>(inst.vehicles.size());
    N = inst.graph.node_count();
    B = inst.deadline;
    range = inst.battery.operating_range;
    chg_coeff = inst.battery.charge_coeff;
    dis_coeff = inst.battery.discharge_coeff;
    charger.assign(N, false);
    for (int n : inst.battery.stations) charger[n] = true;
    for (const Job& job : inst.jobs) {
      full.push_back((1u << job.tasks.size()) - 1u);
    }
  }

  State initial_state() const {
    State st;
    st.veh.resize(V);
    for (int i = 0; i < V; ++i) {
      st.veh[i].node = inst.vehicles[i].start;
      st.veh[i].rc = range;
    }
    st.mask.assign(inst.jobs.size(), 0);
    st.owner.assign(inst.jobs.size(), -1);
    return st;
  }

  template <typename... Args>
  static std::string msg(Args&&... args) {
    std::ostringstream out;
    (out << ... << args);
    return out.str();
  }

  // --- shared transition rules -------------------------------------------

  // Applies one vehicle's service selection for the current instant.
  // premask holds the served-task masks from before this instant, so
  // "strictly earlier" predecessor checks ignore simultaneous services.
  bool apply_services(State& st, int i, const std::vector<ServiceChoice>& sel,
                      const std::vector<uint32_t>& premask,
                      std::string* why) const {
    const int node = st.veh[i].node;
    for (const ServiceChoice& c : sel) {
      const Job& job = inst.jobs[c.job];
      const Task& task = job.tasks[c.task];
      if (node < 0 || node != task.location) {
        *why = msg("vehicle ", inst.vehicles[i].id, " serves task ", task.id,
                   " at t=", st.t, " away from ", inst.graph.nodes[task.location]);
        return false;
      }
      if (st.t < task.tw_lower || st.t > task.tw_upper) {
        *why = msg("task ", task.id, " of job ", job.id, " served at t=", st.t,
                   " outside its window");
        return false;
      }
      if (st.mask[c.job] & (1u << c.task)) {
        *why = msg("task ", task.id, " of job ", job.id, " served twice");
        return false;
      }
      for (int p : task.predecessors) {
        if (!(premask[c.job] & (1u << p))) {
          *why = msg("task ", task.id, " of job ", job.id,
                     " served before predecessor ", job.tasks[p].id);
          return false;
        }
      }
      if (st.owner[c.job] == -1) {
        const auto& el = job.eligible;
        if (std::find(el.begin(), el.end(), i) == el.end()) {
          *why = msg("vehicle ", inst.vehicles[i].id,
                     " is not eligible for job ", job.id);
          return false;
        }
        st.owner[c.job] = i;
      } else if (st.owner[c.job] != i) {
        *why = msg("job ", job.id, " is split between vehicles");
        return false;
      }
      st.mask[c.job] |= 1u << c.task;
    }

    // No service of another job strictly between two services of one job:
    // serving j2 now is illegal if some other owned job has an earlier
    // service plus one now or still to come.
    for (const ServiceChoice& c : sel) {
      for (std::size_t j1 = 0; j1 < inst.jobs.size(); ++j1) {
        if (static_cast<int>(j1) == c.job || st.owner[j1] != i) continue;
        bool past = premask[j1] != 0;
        if (!past) continue;
        bool now = std::any_of(sel.begin(), sel.end(), [&](const ServiceChoice& o) {
          return o.job == static_cast<int>(j1);
        });
        bool incomplete = st.mask[j1] != full[j1];
        if (incomplete || now) {
          *why = msg("vehicle ", inst.vehicles[i].id, " serves job ",
                     inst.jobs[c.job].id, " at t=", st.t,
                     " between services of job ", inst.jobs[j1].id);
          return false;
        }
      }
    }
    return true;
  }

  bool stay_legal(const State& st, int i, std::string* why) const {
    const VehSt& v = st.veh[i];
    if (charger[v.node] && v.rc + chg_coeff > range) {
      *why = msg("vehicle ", inst.vehicles[i].id, " cannot wait at station ",
                 inst.graph.nodes[v.node], " at t=", st.t,
                 ": charge would exceed ", range);
      return false;
    }
    return true;
  }

  bool depart_legal(const State& st, int i, int dest, bool enforce_deadline,
                    std::string* why) const {
    const VehSt& v = st.veh[i];
    if (dest == v.node || !inst.graph.has_edge(v.node, dest)) {
      *why = msg("vehicle ", inst.vehicles[i].id, " departs over missing edge ",
                 inst.graph.nodes[v.node], "->", inst.graph.nodes[dest]);
      return false;
    }
    const int d = inst.graph.edge(v.node, dest).length;
    if (enforce_deadline && st.t + d > B) {
      *why = "arrival would fall after the deadline";
      return false;
    }
    if (v.rc < dis_coeff * d) {
      *why = msg("vehicle ", inst.vehicles[i].id, " lacks charge for ",
                 inst.graph.nodes[v.node], "->", inst.graph.nodes[dest],
                 " at t=", st.t);
      return false;
    }
    return true;
  }

  // Applies the chosen movements jointly: edge entry counts, head-on
  // exclusion, battery arithmetic, node occupancy; advances to t+1.
  bool finalize_step(State& st, const std::vector<MoveChoice>& mv,
                     std::string* why) const {
    const int t = st.t;

    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < V; ++i) {
      if (mv[i].depart) groups[{st.veh[i].node, mv[i].dest}].push_back(i);
    }
    for (const auto& [edge, members] : groups) {
      const EdgeAttr& attr = inst.graph.edge(edge.first, edge.second);
      if (static_cast<int>(members.size()) > attr.capacity) {
        *why = msg(members.size(), " vehicles enter edge ",
                   inst.graph.nodes[edge.first], "->",
                   inst.graph.nodes[edge.second], " at t=", t, ", capacity ",
                   attr.capacity);
        return false;
      }
    }

    std::vector<Rec> recs = st.recs;
    for (const auto& [edge, members] : groups) {
      const EdgeAttr& attr = inst.graph.edge(edge.first, edge.second);
      uint32_t far = 0;
      for (int i2 = 0; i2 < V; ++i2) {
        if (st.veh[i2].node == edge.second &&
            std::find(members.begin(), members.end(), i2) == members.end()) {
          far |= 1u << i2;
        }
      }
      recs.push_back({edge.first, edge.second, t, attr.length,
                      static_cast<int>(members.size()), far});
    }

    // Per-instant head-on bound for every traversal window covering t.
    for (const Rec& r : recs) {
      int entering = 0;
      for (int i2 = 0; i2 < V; ++i2) {
        if ((r.far >> i2) & 1u) {
          if (mv[i2].depart && mv[i2].dest == r.from) ++entering;
        }
      }
      const int cap = inst.graph.edge(r.from, r.to).capacity;
      if (entering > cap - r.members) {
        *why = msg("vehicle enters toward ", inst.graph.nodes[r.from],
                   " at t=", t, " against ", r.members, " vehicle(s) holding ",
                   inst.graph.nodes[r.from], "->", inst.graph.nodes[r.to],
                   " since t=", r.t0, " (capacity ", cap, ")");
        return false;
      }
    }

    for (int i = 0; i < V; ++i) {
      VehSt& v = st.veh[i];
      if (v.node >= 0) {
        if (mv[i].depart) {
          const int d = inst.graph.edge(v.node, mv[i].dest).length;
          v.rc -= dis_coeff;
          if (v.rc < 0) {
            *why = msg("vehicle ", inst.vehicles[i].id, " runs out of charge at t=", t + 1);
            return false;
          }
          if (d == 1) {
            v.node = mv[i].dest;
          } else {
            v.dest = mv[i].dest;
            v.arrive = t + d;
            v.node = -1;
          }
        } else {
          if (charger[v.node]) v.rc += chg_coeff;
          if (v.rc > range) {
            *why = msg("vehicle ", inst.vehicles[i].id, " exceeds charge ",
                       range, " at t=", t + 1);
            return false;
          }
        }
      } else {
        v.rc -= dis_coeff;
        if (v.rc < 0) {
          *why = msg("vehicle ", inst.vehicles[i].id, " runs out of charge at t=", t + 1);
          return false;
        }
        if (v.arrive == t + 1) {
          v.node = v.dest;
          v.dest = -1;
          v.arrive = -1;
        }
      }
    }

    std::vector<int> occupant(N, -1);
    for (int i = 0; i < V; ++i) {
      int n = st.veh[i].node;
      if (n < 0 || inst.graph.hub[n]) continue;
      if (occupant[n] >= 0) {
        *why = msg("vehicles ", inst.vehicles[occupant[n]].id, " and ",
                   inst.vehicles[i].id, " share non-hub ", inst.graph.nodes[n],
                   " at t=", t + 1);
        return false;
      }
      occupant[n] = i;
    }

    st.recs.clear();
    for (const Rec& r : recs) {
      if (r.t0 + r.len >= t + 1) st.recs.push_back(r);
    }
    st.t = t + 1;
    return true;
  }

  // --- exhaustive search ---------------------------------------------------

  std::string state_key(const State& st) const {
    std::ostringstream key;
    key << st.t;
    for (const VehSt& v : st.veh) {
      key << '|' << v.node << ',' << v.dest << ',' << v.arrive << ',' << v.rc;
    }
    for (uint32_t m : st.mask) key << '|' << m;
    for (int o : st.owner) key << '|' << o;
    for (const Rec& r : st.recs) {
      key << '|' << r.from << ',' << r.to << ',' << r.t0 << ',' << r.members
          << ',' << r.far;
    }
    return key.str();
  }

  void search(const State& st) {
    if (++states > limits.max_states) {
      throw OracleError("exhaustive search budget exceeded");
    }
    if (best >= 0 && cur_cost >= best) return;
    std::string key = state_key(st);
    auto it = memo.find(key);
    if (it != memo.end() && it->second <= cur_cost) return;
    memo[key] = cur_cost;
    enumerate_services(st, 0, st.mask);
  }

  std::vector<ServiceChoice> candidates(const State& st, int i,
                                        const std::vector<uint32_t>& premask) const {
    std::vector<ServiceChoice> out;
    const int node = st.veh[i].node;
    if (node < 0) return out;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      if (st.owner[j] != -1 && st.owner[j] != i) continue;
      if (st.owner[j] == -1) {
        const auto& el = inst.jobs[j].eligible;
        if (std::find(el.begin(), el.end(), i) == el.end()) continue;
      }
      const Job& job = inst.jobs[j];
      for (std::size_t k = 0; k < job.tasks.size(); ++k) {
        const Task& task = job.tasks[k];
        if (st.mask[j] & (1u << k)) continue;
        if (task.location != node) continue;
        if (st.t < task.tw_lower || st.t > task.tw_upper) continue;
        bool preds_ok = true;
        for (int p : task.predecessors) {
          if (!(premask[j] & (1u << p))) preds_ok = false;
        }
        if (!preds_ok) continue;
        out.push_back({static_cast<int>(j), static_cast<int>(k)});
      }
    }
    return out;
  }

  void enumerate_services(const State& st, int i,
                          const std::vector<uint32_t>& premask) {
    if (i == V) {
      after_services(st);
      return;
    }
    std::vector<ServiceChoice> cands = candidates(st, i, premask);
    if (cands.size() > 12) {
      throw OracleError("too many simultaneous service choices");
    }
    for (uint32_t sel = 0; sel < (1u << cands.size()); ++sel) {
      std::vector<ServiceChoice> chosen;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if ((sel >> b) & 1u) chosen.push_back(cands[b]);
      }
      State next = st;
      std::string why;
      if (!chosen.empty() && !apply_services(next, i, chosen, premask, &why)) {
        continue;
      }
      for (const ServiceChoice& c : chosen) cur_s.push_back({i, c.job, c.task, st.t});
      enumerate_services(next, i + 1, premask);
      for (std::size_t b = 0; b < chosen.size(); ++b) cur_s.pop_back();
    }
  }

  void after_services(const State& st) {
    // Two jobs mid-flight on one vehicle can never both finish without an
    // interleaved service: dead end.
    for (int i = 0; i < V; ++i) {
      int open = 0;
      for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        if (st.owner[j] == i && st.mask[j] != 0 && st.mask[j] != full[j]) ++open;
      }
      if (open >= 2) return;
    }
    if (st.t == B) {
      for (int i = 0; i < V; ++i) {
        if (st.veh[i].node != inst.vehicles[i].start) return;
      }
      for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        if (st.mask[j] != full[j]) return;
      }
      if (best < 0 || cur_cost < best) {
        best = cur_cost;
        best_s = cur_s;
        best_m = cur_m;
      }
      return;
    }
    std::vector<MoveChoice> mv(V);
    enumerate_moves(st, 0, mv);
  }

  void enumerate_moves(const State& st, int i, std::vector<MoveChoice>& mv) {
    if (i == V) {
      long long added = 0;
      for (int v = 0; v < V; ++v) {
        if (mv[v].depart) added += inst.graph.edge(st.veh[v].node, mv[v].dest).length;
      }
      if (best >= 0 && cur_cost + added >= best) return;
      State next = st;
      std::string why;
      if (!finalize_step(next, mv, &why)) return;
      std::size_t pushed = 0;
      for (int v = 0; v < V; ++v) {
        if (mv[v].depart) {
          cur_m.push_back({v, st.veh[v].node, mv[v].dest, st.t});
          ++pushed;
        }
      }
      cur_cost += added;
      search(next);
      cur_cost -= added;
      for (std::size_t p = 0; p < pushed; ++p) cur_m.pop_back();
      return;
    }
    const VehSt& v = st.veh[i];
    std::string why;
    if (v.node < 0) {
      mv[i] = {false, -1};
      enumerate_moves(st, i + 1, mv);
      return;
    }
    if (stay_legal(st, i, &why)) {
      mv[i] = {false, -1};
      enumerate_moves(st, i + 1, mv);
    }
    for (int dest : inst.graph.adjacency[v.node]) {
      if (depart_legal(st, i, dest, true, &why)) {
        mv[i] = {true, dest};
        enumerate_moves(st, i + 1, mv);
      }
    }
    mv[i] = {false, -1};
  }

  // Rebuilds the winning trajectory as an explicit schedule, padded to the
  // full horizon (idle at the depot, which the guards keep charger-free).
  Schedule build_witness() const {
    Schedule s;
    s.vehicles.resize(V);
    s.total_cost = best;
    for (const MEv& m : best_m) s.vehicles[m.i].moves.push_back({m.t, m.from, m.to});
    for (const SEv& e : best_s) s.vehicles[e.i].services.push_back({e.j, e.k, e.t});
    const int T = inst.horizon;
    for (int i = 0; i < V; ++i) {
      VehicleTimeline& tl = s.vehicles[i];
      std::sort(tl.moves.begin(), tl.moves.end(),
                [](const MoveEvent& a, const MoveEvent& b) { return a.t < b.t; });
      std::sort(tl.services.begin(), tl.services.end(),
                [](const ServiceEvent& a, const ServiceEvent& b) {
                  if (a.t != b.t) return a.t < b.t;
                  if (a.job != b.job) return a.job < b.job;
                  return a.task < b.task;
                });
      int node = inst.vehicles[i].start;
      int rc = range;
      std::size_t mi = 0;
      int t = 0;
      while (t <= T) {
        tl.location[t] = node;
        tl.charge[t] = rc;
        if (t == T) break;
        if (mi < tl.moves.size() && tl.moves[mi].t == t) {
          const int d = inst.graph.edge(tl.moves[mi].from, tl.moves[mi].to).length;
          for (int step = 1; step <= d; ++step) {
            rc -= dis_coeff;
            tl.charge[t + step] = rc;
          }
          node = tl.moves[mi].to;
          t += d;
          ++mi;
          continue;
        }
        if (charger[node]) rc += chg_coeff;
        ++t;
      }
    }
    return s;
  }
};

std::string oracle_guard(const Instance& inst, const OracleLimits& limits) {
  if (static_cast<int>(inst.vehicles.size()) > limits.max_vehicles) {
    return "too many vehicles for exhaustive search";
  }
  if (inst.graph.node_count() > limits.max_nodes) {
    return "too many nodes for exhaustive search";
  }
  if (inst.deadline > limits.max_deadline) {
    return "deadline too large for exhaustive search";
  }
  if (static_cast<int>(inst.vehicles.size()) > 31) return "too many vehicles";
  for (const Job& job : inst.jobs) {
    if (job.tasks.size() > 30) return "too many tasks in job " + job.id;
    for (const Task& task : job.tasks) {
      if (task.tw_upper > inst.deadline) {
        return "task " + task.id + " of job " + job.id +
               " has a window extending past the deadline; instants after it"
               " are outside the replayed range";
      }
    }
  }
  std::vector<bool> charger(inst.graph.node_count(), false);
  for (int n : inst.battery.stations) charger[n] = true;
  for (const Vehicle& v : inst.vehicles) {
    if (charger[v.start]) {
      return "vehicle " + v.id +
             " starts at a charging station; forced post-deadline charging"
             " is outside the replayed range";
    }
  }
  return "";
}

}  // namespace

OracleResult oracle_solve(const Instance& instance, const OracleLimits& limits) {
  if (std::string g = oracle_guard(instance, limits); !g.empty()) {
    throw OracleError(g);
  }
  Engine engine(instance, limits);
  engine.search(engine.initial_state());
  OracleResult result;
  result.states_explored = engine.states;
  if (engine.best < 0) {
    result.status = SolveStatus::unsat;
    return result;
  }
  result.status = SolveStatus::sat;
  result.best_cost = engine.best;
  result.witness = engine.build_witness();
  return result;
}

OracleCheck oracle_check_schedule(const Instance& instance,
                                  const Schedule& schedule) {
  OracleCheck result;
  OracleLimits wide;
  wide.max_nodes = 1 << 20;
  wide.max_vehicles = 31;
  wide.max_deadline = 1 << 20;
  Engine engine(instance, wide);
  const int V = engine.V;
  const int B = engine.B;

  if (static_cast<int>(schedule.vehicles.size()) != V) {
    result.reason = "schedule does not describe every vehicle";
    return result;
  }

  // Bucket events by instant.
  std::vector<std::map<int, std::vector<ServiceChoice>>> services(V);
  std::vector<std::map<int, std::vector<MoveEvent>>> moves(V);
  for (int i = 0; i < V; ++i) {
    for (const ServiceEvent& s : schedule.vehicles[i].services) {
      if (s.job < 0 || s.job >= static_cast<int>(instance.jobs.size()) ||
          s.task < 0 ||
          s.task >= static_cast<int>(instance.jobs[s.job].tasks.size())) {
        result.reason = "service references an unknown task";
        return result;
      }
      if (s.t > B) {
        result.reason = Engine::msg("task ", instance.jobs[s.job].tasks[s.task].id,
                                    " served at t=", s.t, " after the deadline");
        return result;
      }
      if (s.t < 0) {
        result.reason = "service at a negative instant";
        return result;
      }
      services[i][s.t].push_back({s.job, s.task});
    }
    for (const MoveEvent& m : schedule.vehicles[i].moves) {
      if (m.t < 0) {
        result.reason = "departure at a negative instant";
        return result;
      }
      if (m.t >= B) continue;  // departures at or past the deadline do not
                               // affect the replayed range
      if (m.from < 0 || m.from >= engine.N || m.to < 0 || m.to >= engine.N) {
        result.reason = "departure references an unknown node";
        return result;
      }
      moves[i][m.t].push_back(m);
    }
  }

  State st = engine.initial_state();
  std::string why;
  long long cost = 0;
  for (int t = 0; t <= B; ++t) {
    // The recorded timeline and charge levels must match the replay.
    for (int i = 0; i < V; ++i) {
      const VehicleTimeline& tl = schedule.vehicles[i];
      auto lit = tl.location.find(t);
      if (st.veh[i].node >= 0) {
        if (lit == tl.location.end() || lit->second != st.veh[i].node) {
          result.reason = Engine::msg(
              "timeline of vehicle ", instance.vehicles[i].id, " at t=", t,
              " disagrees with the replayed position ",
              instance.graph.nodes[st.veh[i].node]);
          return result;
        }
      } else if (lit != tl.location.end()) {
        result.reason =
            Engine::msg("timeline places vehicle ", instance.vehicles[i].id,
                        " at a node at t=", t, " while it is mid-traversal");
        return result;
      }
      auto cit = tl.charge.find(t);
      if (cit == tl.charge.end() || cit->second != st.veh[i].rc) {
        result.reason = Engine::msg(
            "charge of vehicle ", instance.vehicles[i].id, " at t=", t,
            " disagrees with the replayed level ", st.veh[i].rc);
        return result;
      }
    }

    const std::vector<uint32_t> premask = st.mask;
    for (int i = 0; i < V; ++i) {
      auto it = services[i].find(t);
      if (it == services[i].end()) continue;
      if (!engine.apply_services(st, i, it->second, premask, &why)) {
        result.reason = why;
        return result;
      }
    }
    if (t == B) break;

    std::vector<MoveChoice> mv(V);
    for (int i = 0; i < V; ++i) {
      auto it = moves[i].find(t);
      if (it == moves[i].end() || it->second.empty()) {
        if (st.veh[i].node >= 0 && !engine.stay_legal(st, i, &why)) {
          result.reason = why;
          return result;
        }
        mv[i] = {false, -1};
        continue;
      }
      if (it->second.size() > 1) {
        result.reason = Engine::msg("vehicle ", instance.vehicles[i].id,
                                    " departs twice at t=", t);
        return result;
      }
      const MoveEvent& m = it->second.front();
      if (st.veh[i].node < 0) {
        result.reason = Engine::msg("vehicle ", instance.vehicles[i].id,
                                    " departs at t=", t, " while mid-traversal");
        return result;
      }
      if (m.from != st.veh[i].node) {
        result.reason = Engine::msg(
            "vehicle ", instance.vehicles[i].id, " departs from ",
            instance.graph.nodes[m.from], " at t=", t, " but stands at ",
            instance.graph.nodes[st.veh[i].node]);
        return result;
      }
      if (!engine.depart_legal(st, i, m.to, false, &why)) {
        result.reason = why;
        return result;
      }
      mv[i] = {true, m.to};
      cost += instance.graph.edge(m.from, m.to).length;
    }
    if (!engine.finalize_step(st, mv, &why)) {
      result.reason = why;
      return result;
    }
  }

  for (int i = 0; i < V; ++i) {
    if (st.veh[i].node != instance.vehicles[i].start) {
      result.reason = Engine::msg("vehicle ", instance.vehicles[i].id,
                                  " is not back at its depot at the deadline");
      return result;
    }
  }
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    if (st.mask[j] != engine.full[j]) {
      result.reason = Engine::msg("job ", instance.jobs[j].id,
                                  " is not fully served by the deadline");
      return result;
    }
  }
  result.feasible = true;
  result.cost = cost;
  return result;
}

}  // namespace cfevrp
