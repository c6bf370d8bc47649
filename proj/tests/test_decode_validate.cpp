#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfevrp/decode.hpp"
#include "cfevrp/encoder.hpp"
#include "cfevrp/model.hpp"
#include "cfevrp/validate.hpp"
#include "doctest.h"

using namespace cfevrp;

namespace {

// Line graph a-b-c, one vehicle, pickup at b + delivery at c, charger at a.
Instance line3() {
  Instance inst;
  inst.graph.nodes = {"a", "b", "c"};
  inst.graph.hub = {false, false, false};
  for (auto [f, t] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) {
    inst.graph.edges[{f, t}] = EdgeAttr{1, 1};
  }
  inst.graph.rebuild_adjacency();
  inst.vehicles = {{"v1", 0}};
  Job job;
  job.id = "j1";
  job.eligible = {0};
  job.tasks = {Task{"p", 1, {}, 0, 4}, Task{"d", 2, {0}, 0, 6}};
  inst.jobs = {job};
  inst.battery = {10, 1, 1, {0}};
  inst.deadline = 8;
  inst.finalize();
  return inst;
}

// Reference run for line3: out to b, pause, on to c, straight back, then
// recharge at the depot until the battery is full again at the horizon.
Schedule line3_base() {
  Schedule s;
  s.vehicles.resize(1);
  VehicleTimeline& tl = s.vehicles[0];
  const int where[] = {0, 1, 1, 2, 1, 0, 0, 0, 0, 0};
  const int charge[] = {10, 9, 9, 8, 7, 6, 7, 8, 9, 10};
  for (int t = 0; t <= 9; ++t) {
    tl.location[t] = where[t];
    tl.charge[t] = charge[t];
  }
  tl.moves = {{0, 0, 1}, {2, 1, 2}, {3, 2, 1}, {4, 1, 0}};
  tl.services = {{0, 0, 1}, {0, 1, 3}};
  s.total_cost = 4;
  return s;
}

// Path a-b-c-d with two vehicles on the ends; charger at b.
Instance path4(std::vector<int> eligible = {0, 1}) {
  Instance inst;
  inst.graph.nodes = {"a", "b", "c", "d"};
  inst.graph.hub = {false, false, false, false};
  for (auto [f, t] :
       {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}}) {
    inst.graph.edges[{f, t}] = EdgeAttr{1, 1};
  }
  inst.graph.rebuild_adjacency();
  inst.vehicles = {{"v1", 0}, {"v2", 3}};
  Job job;
  job.id = "j1";
  job.eligible = std::move(eligible);
  job.tasks = {Task{"p", 1, {}, 0, 4}, Task{"q", 2, {0}, 0, 6}};
  inst.jobs = {job};
  inst.battery = {10, 1, 1, {1}};
  inst.deadline = 6;
  inst.finalize();
  return inst;
}

// v1 sweeps out to c and back serving both tasks; v2 never stirs.
Schedule path4_base() {
  Schedule s;
  s.vehicles.resize(2);
  VehicleTimeline& v1 = s.vehicles[0];
  const int where[] = {0, 1, 2, 1, 0, 0, 0, 0};
  const int charge[] = {10, 9, 8, 7, 6, 6, 6, 6};
  for (int t = 0; t <= 7; ++t) {
    v1.location[t] = where[t];
    v1.charge[t] = charge[t];
  }
  v1.moves = {{0, 0, 1}, {1, 1, 2}, {2, 2, 1}, {3, 1, 0}};
  v1.services = {{0, 0, 1}, {0, 1, 2}};
  VehicleTimeline& v2 = s.vehicles[1];
  for (int t = 0; t <= 7; ++t) {
    v2.location[t] = 3;
    v2.charge[t] = 10;
  }
  s.total_cost = 4;
  return s;
}

// Star H-x with both endpoints hubs and both vehicles based at H.
Instance star(int edge_length = 1) {
  Instance inst;
  inst.graph.nodes = {"H", "x"};
  inst.graph.hub = {true, true};
  inst.graph.edges[{0, 1}] = EdgeAttr{edge_length, 1};
  inst.graph.edges[{1, 0}] = EdgeAttr{edge_length, 1};
  inst.graph.rebuild_adjacency();
  inst.vehicles = {{"v1", 0}, {"v2", 0}};
  Job j1, j2;
  j1.id = "j1";
  j1.eligible = {0};
  j1.tasks = {Task{"p", 1, {}, 0, 6}};
  j2.id = "j2";
  j2.eligible = {1};
  j2.tasks = {Task{"p", 1, {}, 0, 6}};
  inst.jobs = {j1, j2};
  inst.battery = {10, 1, 1, {}};
  inst.deadline = 6;
  inst.finalize();
  return inst;
}

// v1 visits x first; v2 follows once the corridor is clear again.
Schedule star_base() {
  Schedule s;
  s.vehicles.resize(2);
  VehicleTimeline& v1 = s.vehicles[0];
  const int w1[] = {0, 1, 0, 0, 0, 0, 0, 0};
  const int c1[] = {10, 9, 8, 8, 8, 8, 8, 8};
  VehicleTimeline& v2 = s.vehicles[1];
  const int w2[] = {0, 0, 0, 0, 1, 0, 0, 0};
  const int c2[] = {10, 10, 10, 10, 9, 8, 8, 8};
  for (int t = 0; t <= 7; ++t) {
    v1.location[t] = w1[t];
    v1.charge[t] = c1[t];
    v2.location[t] = w2[t];
    v2.charge[t] = c2[t];
  }
  v1.moves = {{0, 0, 1}, {1, 1, 0}};
  v1.services = {{0, 0, 1}};
  v2.moves = {{3, 0, 1}, {4, 1, 0}};
  v2.services = {{1, 0, 4}};
  s.total_cost = 4;
  return s;
}

std::set<std::string> failing(const Instance& inst, const Schedule& sched) {
  ValidationReport report = validate_schedule(inst, sched);
  std::set<std::string> out;
  for (const FamilyCheck& c : report.checks) {
    if (!c.passed) out.insert(c.family);
  }
  return out;
}

using Fams = std::set<std::string>;

// Builds the solver assignment a correct solver would report for `sched`.
SolverModel model_from(const Instance& inst, const VariableLayout& layout,
                       const Schedule& sched) {
  SolverModel model;
  for (int i = 0; i < static_cast<int>(sched.vehicles.size()); ++i) {
    const VehicleTimeline& tl = sched.vehicles[i];
    for (const auto& [t, n] : tl.location) model.bools[layout.at(i, n, t)] = true;
    for (const MoveEvent& m : tl.moves) {
      model.bools[layout.move(i, m.to, m.t)] = true;
    }
    for (const auto& [t, rc] : tl.charge) model.ints[layout.rc(i, t)] = rc;
    for (const ServiceEvent& s : tl.services) {
      model.bools[layout.x(i, s.job)] = true;
      model.bools[layout.z(i, s.job, s.task, s.t)] = true;
    }
  }
  model.ints["total_cost"] = sched.total_cost;
  return model;
}

bool schedules_equal(const Schedule& a, const Schedule& b) {
  if (a.total_cost != b.total_cost) return false;
  if (a.vehicles.size() != b.vehicles.size()) return false;
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    const VehicleTimeline& x = a.vehicles[i];
    const VehicleTimeline& y = b.vehicles[i];
    if (x.location != y.location || x.charge != y.charge) return false;
    if (x.moves.size() != y.moves.size()) return false;
    for (std::size_t m = 0; m < x.moves.size(); ++m) {
      if (x.moves[m].t != y.moves[m].t || x.moves[m].from != y.moves[m].from ||
          x.moves[m].to != y.moves[m].to) {
        return false;
      }
    }
    if (x.services.size() != y.services.size()) return false;
    for (std::size_t s = 0; s < x.services.size(); ++s) {
      if (x.services[s].job != y.services[s].job ||
          x.services[s].task != y.services[s].task ||
          x.services[s].t != y.services[s].t) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("the reference schedules validate cleanly") {
  ValidationReport report = validate_schedule(line3(), line3_base());
  CHECK(report.ok);
  for (const FamilyCheck& c : report.checks) CHECK(c.passed);
  CHECK(report.recomputed_cost == 4);
  CHECK(report.schedule_cost == 4);
  CHECK(report.min_charge == 6);
  CHECK(report.max_charge == 10);
  CHECK(report.notes.empty());

  CHECK(failing(path4(), path4_base()) == Fams{});
  CHECK(failing(star(), star_base()) == Fams{});
}

TEST_CASE("an unserved task fails the cover check") {
  Schedule s = line3_base();
  s.vehicles[0].services.pop_back();  // delivery never happens
  CHECK(failing(line3(), s) == Fams{"cover"});
}

TEST_CASE("serving away from the task location is caught") {
  Schedule s = line3_base();
  s.vehicles[0].services[0].t = 0;  // still at the depot
  CHECK(failing(line3(), s) == Fams{"1"});
}

TEST_CASE("a job split across vehicles is caught") {
  Instance inst = path4();
  Schedule s;
  s.vehicles.resize(2);
  VehicleTimeline& v1 = s.vehicles[0];
  const int w1[] = {0, 1, 0, 0, 0, 0, 0, 0};
  const int c1[] = {10, 9, 8, 8, 8, 8, 8, 8};
  VehicleTimeline& v2 = s.vehicles[1];
  const int w2[] = {3, 2, 2, 3, 3, 3, 3, 3};
  const int c2[] = {10, 9, 9, 8, 8, 8, 8, 8};
  for (int t = 0; t <= 7; ++t) {
    v1.location[t] = w1[t];
    v1.charge[t] = c1[t];
    v2.location[t] = w2[t];
    v2.charge[t] = c2[t];
  }
  v1.moves = {{0, 0, 1}, {1, 1, 0}};
  v1.services = {{0, 0, 1}};  // p by v1
  v2.moves = {{0, 3, 2}, {2, 2, 3}};
  v2.services = {{0, 1, 2}};  // q by v2
  s.total_cost = 4;

  CHECK(failing(inst, s) == Fams{"2", "6"});
  // The same split also trips eligibility when v2 is not allowed at all.
  CHECK(failing(path4({0}), s) == Fams{"2", "6", "8"});
}

TEST_CASE("a task served by two vehicles trips the per-task families") {
  Instance inst = path4();
  Schedule s = path4_base();
  VehicleTimeline& v2 = s.vehicles[1];
  const int w2[] = {3, 2, 3, 3, 3, 3, 3, 3};
  const int c2[] = {10, 9, 8, 8, 8, 8, 8, 8};
  for (int t = 0; t <= 7; ++t) {
    v2.location[t] = w2[t];
    v2.charge[t] = c2[t];
  }
  v2.moves = {{0, 3, 2}, {1, 2, 3}};
  v2.services = {{0, 1, 1}};  // q again, one instant before v1's service
  s.total_cost = 6;
  // The earlier duplicate also drags q level with its predecessor p.
  CHECK(failing(inst, s) == Fams{"2", "3", "4", "5", "6"});
}

TEST_CASE("double service of one task by its own vehicle is caught") {
  Schedule s = line3_base();
  s.vehicles[0].services.push_back({0, 0, 2});  // pickup again while waiting
  CHECK(failing(line3(), s) == Fams{"4"});
}

TEST_CASE("a predecessor served too late is caught") {
  Schedule s = line3_base();
  s.vehicles[0].services[0].t = 4;  // pickup after the delivery at t=3
  CHECK(failing(line3(), s) == Fams{"5"});
}

TEST_CASE("service outside the window is caught") {
  Instance inst = path4();
  inst.jobs[0].tasks[0].tw_lower = 2;  // pickup window becomes [2,4]
  inst.finalize();
  Schedule s = path4_base();
  // Pickup still happens at t=1: too early, but at the right place.
  CHECK(failing(inst, s) == Fams{"7"});
}

TEST_CASE("interleaving a second job between services is caught") {
  Instance inst = line3();
  Job extra;
  extra.id = "j2";
  extra.eligible = {0};
  extra.tasks = {Task{"p2", 1, {}, 0, 9}};
  inst.jobs.push_back(extra);
  inst.finalize();

  Schedule ok = line3_base();
  ok.vehicles[0].services.push_back({1, 0, 4});  // after j1 is finished
  CHECK(failing(inst, ok) == Fams{});

  Schedule bad = line3_base();
  bad.vehicles[0].services.push_back({1, 0, 2});  // wedged inside j1
  CHECK(failing(inst, bad) == Fams{"18"});
}

TEST_CASE("wrong start and missed return are caught together") {
  Instance inst = path4();
  Schedule s = path4_base();
  for (int t = 0; t <= 7; ++t) s.vehicles[1].location[t] = 2;  // camped at c
  // Squatting on c also collides with v1's service visit there.
  CHECK(failing(inst, s) == Fams{"9", "10", "12"});
}

TEST_CASE("a late excursion misses the deadline return") {
  Instance inst = path4();
  Schedule s = path4_base();
  VehicleTimeline& v2 = s.vehicles[1];
  v2.moves = {{5, 3, 2}};  // leaves home just before the deadline
  for (int t = 6; t <= 7; ++t) v2.location[t] = 2;
  for (int t = 6; t <= 7; ++t) v2.charge[t] = 9;
  s.total_cost = 5;
  CHECK(failing(inst, s) == Fams{"10"});
}

TEST_CASE("two vehicles on one non-hub node are caught") {
  Instance inst = path4();
  Schedule s = path4_base();
  VehicleTimeline& v2 = s.vehicles[1];
  const int w2[] = {3, 2, 2, 2, 2, 3, 3, 3};
  const int c2[] = {10, 9, 9, 9, 9, 8, 8, 8};
  for (int t = 0; t <= 7; ++t) {
    v2.location[t] = w2[t];
    v2.charge[t] = c2[t];
  }
  v2.moves = {{0, 3, 2}, {4, 2, 3}};
  s.total_cost = 6;
  // v1 reaches c at t=2 while v2 is still standing there.
  CHECK(failing(inst, s) == Fams{"12"});
}

TEST_CASE("two departures at one instant are caught") {
  Instance inst = line3();
  inst.graph.edges[{1, 2}].capacity = 2;
  inst.finalize();
  Schedule s = line3_base();
  s.vehicles[0].moves.push_back({2, 1, 2});  // b->c filed twice
  s.total_cost = 5;  // the duplicate still counts as traveled distance
  CHECK(failing(inst, s) == Fams{"13"});
}

TEST_CASE("a self-move is caught") {
  Schedule s = line3_base();
  s.vehicles[0].moves.push_back({5, 0, 0});
  CHECK(failing(line3(), s) == Fams{"14"});
}

TEST_CASE("departing over a missing edge is caught") {
  Schedule s = line3_base();
  s.vehicles[0].moves.push_back({5, 0, 2});  // no a->c edge
  CHECK(failing(line3(), s) == Fams{"15"});
}

TEST_CASE("drifting away without a departure is caught") {
  Instance inst = path4();
  Schedule s = path4_base();
  s.vehicles[1].location[3] = 2;  // parked vehicle blinks to c and back
  CHECK(failing(inst, s) == Fams{"16"});
}

TEST_CASE("a departure that never arrives is caught") {
  Instance inst = path4();
  Schedule s = path4_base();
  VehicleTimeline& v2 = s.vehicles[1];
  v2.moves = {{0, 3, 2}};  // claims to leave, stays home
  for (int t = 1; t <= 7; ++t) v2.charge[t] = 9;
  s.total_cost = 5;
  CHECK(failing(inst, s) == Fams{"17"});
}

TEST_CASE("two vehicles entering a full edge together are caught") {
  Instance inst = star();
  Schedule s = star_base();
  VehicleTimeline& v2 = s.vehicles[1];
  const int w2[] = {0, 1, 0, 0, 0, 0, 0, 0};
  const int c2[] = {10, 9, 8, 8, 8, 8, 8, 8};
  for (int t = 0; t <= 7; ++t) {
    v2.location[t] = w2[t];
    v2.charge[t] = c2[t];
  }
  v2.moves = {{0, 0, 1}, {1, 1, 0}};  // rides along with v1
  v2.services = {{1, 0, 1}};
  CHECK(failing(inst, s) == Fams{"19"});
}

TEST_CASE("entering against a held edge is caught") {
  Instance inst = star();
  Schedule s = star_base();
  VehicleTimeline& v2 = s.vehicles[1];
  const int w2[] = {0, 0, 1, 0, 0, 0, 0, 0};
  const int c2[] = {10, 10, 9, 8, 8, 8, 8, 8};
  for (int t = 0; t <= 7; ++t) {
    v2.location[t] = w2[t];
    v2.charge[t] = c2[t];
  }
  // v1 returns x->H over [1,2]; v2 steps into the same corridor at t=1.
  v2.moves = {{1, 0, 1}, {2, 1, 0}};
  v2.services = {{1, 0, 2}};
  CHECK(failing(inst, s) == Fams{"20"});
}

TEST_CASE("a short initial charge is caught") {
  Schedule s = line3_base();
  for (auto& [t, rc] : s.vehicles[0].charge) rc -= 1;
  CHECK(failing(line3(), s) == Fams{"21"});
}

TEST_CASE("a traversal that does not drain is caught") {
  Schedule s = line3_base();
  s.vehicles[0].charge[1] = 10;
  s.vehicles[0].charge[2] = 10;
  CHECK(failing(line3(), s) == Fams{"22"});
}

TEST_CASE("losing charge while waiting is caught") {
  Schedule s = line3_base();
  const int leak[] = {10, 9, 8, 7, 6, 5, 6, 7, 8, 9};
  for (int t = 0; t <= 9; ++t) s.vehicles[0].charge[t] = leak[t];
  CHECK(failing(line3(), s) == Fams{"23"});
}

TEST_CASE("a charger that does not charge is caught") {
  Schedule s = line3_base();
  const int stuck[] = {10, 9, 9, 8, 7, 6, 6, 7, 8, 9};
  for (int t = 0; t <= 9; ++t) s.vehicles[0].charge[t] = stuck[t];
  CHECK(failing(line3(), s) == Fams{"24"});
}

TEST_CASE("a cost that disagrees with the moves is caught") {
  Schedule s = line3_base();
  s.total_cost = 5;
  ValidationReport report = validate_schedule(line3(), s);
  CHECK(failing(line3(), s) == Fams{"25"});
  CHECK(report.recomputed_cost == 4);
  CHECK(report.schedule_cost == 5);
}

TEST_CASE("structural breakage short-circuits the report") {
  Instance inst = line3();

  Schedule missing_vehicle;  // no timelines at all
  ValidationReport r1 = validate_schedule(inst, missing_vehicle);
  CHECK(!r1.ok);
  REQUIRE(r1.checks.size() == 1);
  CHECK(r1.checks[0].family == "structure");

  Schedule no_charge = line3_base();
  no_charge.vehicles[0].charge.erase(7);
  CHECK(failing(inst, no_charge) == Fams{"structure"});

  Schedule bad_job = line3_base();
  bad_job.vehicles[0].services.push_back({5, 0, 2});
  CHECK(failing(inst, bad_job) == Fams{"structure"});

  Schedule late = line3_base();
  late.vehicles[0].location[99] = 0;
  CHECK(failing(inst, late) == Fams{"structure"});
}

TEST_CASE("overlapping same-direction traversals earn a note, not a failure") {
  Instance inst = star(2);  // two-step corridor
  REQUIRE(inst.horizon == 8);
  Schedule s;
  s.vehicles.resize(2);
  VehicleTimeline& v1 = s.vehicles[0];
  VehicleTimeline& v2 = s.vehicles[1];
  // v1 crosses over [0,2] and returns over [2,4]; v2 follows one step
  // behind over [1,3], lingers at x, and returns only at t=4 so the two
  // homeward trips do not overlap.
  for (int t : {0, 4, 5, 6, 7, 8}) v1.location[t] = 0;
  v1.location[2] = 1;
  for (int t : {0, 1, 6, 7, 8}) v2.location[t] = 0;
  v2.location[3] = 1;
  v2.location[4] = 1;
  const int c1[] = {10, 9, 8, 7, 6, 6, 6, 6, 6};
  const int c2[] = {10, 10, 9, 8, 8, 7, 6, 6, 6};
  for (int t = 0; t <= 8; ++t) {
    v1.charge[t] = c1[t];
    v2.charge[t] = c2[t];
  }
  v1.moves = {{0, 0, 1}, {2, 1, 0}};
  v1.services = {{0, 0, 2}};
  v2.moves = {{1, 0, 1}, {4, 1, 0}};
  v2.services = {{1, 0, 3}};
  s.total_cost = 8;

  ValidationReport report = validate_schedule(inst, s);
  CHECK(report.ok);
  REQUIRE(report.notes.size() == 1);
  CHECK(report.notes[0].find("overlapping traversals") != std::string::npos);
}

TEST_CASE("departures too late to finish carry no arrival obligation") {
  Instance inst = star(2);
  inst.jobs.pop_back();  // only v1 has work
  inst.finalize();
  Schedule s;
  s.vehicles.resize(2);
  VehicleTimeline& v1 = s.vehicles[0];
  VehicleTimeline& v2 = s.vehicles[1];
  for (int t : {0, 4, 5, 6, 7, 8}) v1.location[t] = 0;
  v1.location[2] = 1;
  const int c1[] = {10, 9, 8, 7, 6, 6, 6, 6, 6};
  for (int t = 0; t <= 8; ++t) v1.charge[t] = c1[t];
  v1.moves = {{0, 0, 1}, {2, 1, 0}};
  v1.services = {{0, 0, 2}};
  // v2 idles at home until t=7 and then sets out on a two-step crossing
  // that cannot finish inside the horizon: no arrival is expected, but the
  // doomed departure still counts toward the traveled distance.
  for (int t = 0; t <= 7; ++t) v2.location[t] = 0;
  for (int t = 0; t <= 7; ++t) v2.charge[t] = 10;
  v2.charge[8] = 9;
  v2.moves = {{7, 0, 1}};
  s.total_cost = 6;

  ValidationReport report = validate_schedule(inst, s);
  CHECK(report.ok);
}

TEST_CASE("decoding the solver view of a schedule reproduces it") {
  Instance inst = line3();
  VariableLayout layout(inst);
  Schedule base = line3_base();
  SolverModel model = model_from(inst, layout, base);
  Schedule decoded = decode_schedule(inst, layout, model);
  CHECK(schedules_equal(decoded, base));
  CHECK(validate_schedule(inst, decoded).ok);
}

TEST_CASE("decode keeps the earliest service instant in the window") {
  Instance inst = line3();
  VariableLayout layout(inst);
  SolverModel model = model_from(inst, layout, line3_base());
  model.bools[layout.z(0, 0, 0, 4)] = true;  // a second, later pickup flag
  Schedule decoded = decode_schedule(inst, layout, model);
  REQUIRE(decoded.vehicles[0].services.size() == 2);
  CHECK(decoded.vehicles[0].services[0].t == 1);
}

TEST_CASE("move flags raised mid-transit are dropped") {
  Instance inst = line3();
  inst.graph.edges[{1, 2}].length = 2;
  inst.graph.edges[{2, 1}].length = 2;
  inst.finalize();
  REQUIRE(inst.horizon == 10);
  VariableLayout layout(inst);

  Schedule base;
  base.vehicles.resize(1);
  VehicleTimeline& tl = base.vehicles[0];
  const int where[] = {0, 1, -1, 2, -1, 1, 0, 0, 0, 0, 0};
  const int charge[] = {10, 9, 8, 7, 6, 5, 4, 5, 6, 7, 8};
  for (int t = 0; t <= 10; ++t) {
    if (where[t] >= 0) tl.location[t] = where[t];
    tl.charge[t] = charge[t];
  }
  tl.moves = {{0, 0, 1}, {1, 1, 2}, {3, 2, 1}, {5, 1, 0}};
  tl.services = {{0, 0, 1}, {0, 1, 3}};
  base.total_cost = 6;
  REQUIRE(validate_schedule(inst, base).ok);

  SolverModel model = model_from(inst, layout, base);
  model.bools[layout.move(0, 0, 2)] = true;  // flag while at no node
  Schedule decoded = decode_schedule(inst, layout, model);
  CHECK(schedules_equal(decoded, base));
}

TEST_CASE("impossible solver models raise decode errors") {
  Instance inst = line3();
  VariableLayout layout(inst);
  Schedule base = line3_base();

  SolverModel two_nodes = model_from(inst, layout, base);
  two_nodes.bools[layout.at(0, 2, 0)] = true;
  CHECK_THROWS_AS(decode_schedule(inst, layout, two_nodes), DecodeError);

  SolverModel unassigned = model_from(inst, layout, base);
  unassigned.bools[layout.x(0, 0)] = false;
  CHECK_THROWS_WITH_AS(decode_schedule(inst, layout, unassigned),
                       "job j1 assigned to no vehicle", DecodeError);

  SolverModel unserved = model_from(inst, layout, base);
  unserved.bools[layout.z(0, 0, 1, 3)] = false;
  CHECK_THROWS_WITH_AS(decode_schedule(inst, layout, unserved),
                       "task d of job j1 has no service instant inside its window",
                       DecodeError);

  SolverModel no_charge = model_from(inst, layout, base);
  no_charge.ints.erase(layout.rc(0, 4));
  CHECK_THROWS_AS(decode_schedule(inst, layout, no_charge), DecodeError);

  SolverModel no_cost = model_from(inst, layout, base);
  no_cost.ints.erase("total_cost");
  CHECK_THROWS_AS(decode_schedule(inst, layout, no_cost), DecodeError);
}

TEST_CASE("report renderings carry the verdict") {
  Instance inst = line3();
  ValidationReport good = validate_schedule(inst, line3_base());
  std::string text = validation_report_text(good);
  CHECK(text.find("pass cover") != std::string::npos);
  CHECK(text.find("VALID") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);

  Schedule broken = line3_base();
  broken.total_cost = 9;
  std::string bad = validation_report_text(validate_schedule(inst, broken));
  CHECK(bad.find("FAIL 25") != std::string::npos);
  CHECK(bad.find("INVALID") != std::string::npos);

  nlohmann::json doc = nlohmann::json::parse(validation_report_json(good));
  CHECK(doc["ok"] == true);
  CHECK(doc["recomputed_cost"] == 4);
}
