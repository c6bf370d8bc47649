#include "cfevrp/decode.hpp"

#include <algorithm>

namespace cfevrp {

Schedule decode_schedule(const Instance& instance, const VariableLayout& layout,
                         const SolverModel& model) {
  const int V = static_cast<int>(instance.vehicles.size());
  const int N = instance.graph.node_count();
  const int T = instance.horizon;

  Schedule schedule;
  schedule.vehicles.resize(V);

  for (int i = 0; i < V; ++i) {
    VehicleTimeline& tl = schedule.vehicles[i];
    for (int t = 0; t <= T; ++t) {
      int found = -1;
      for (int n = 0; n < N; ++n) {
        if (!model.bool_value(layout.at(i, n, t))) continue;
        if (found >= 0) {
          throw DecodeError("vehicle " + instance.vehicles[i].id +
                            " occupies two nodes at t=" + std::to_string(t));
        }
        found = n;
      }
      if (found >= 0) tl.location[t] = found;
    }
    // Departures are meaningful only when the vehicle is at a node; move
    // flags raised mid-transit have no effect and are dropped.
    for (int t = 0; t < T; ++t) {
      auto here = tl.location.find(t);
      if (here == tl.location.end()) continue;
      for (int n = 0; n < N; ++n) {
        if (model.bool_value(layout.move(i, n, t))) {
          tl.moves.push_back({t, here->second, n});
        }
      }
    }
    for (int t = 0; t <= T; ++t) {
      auto value = model.int_value(layout.rc(i, t));
      if (!value) {
        throw DecodeError("missing charge value for vehicle " +
                          instance.vehicles[i].id + " at t=" + std::to_string(t));
      }
      tl.charge[t] = static_cast<int>(*value);
    }
  }

  for (int j = 0; j < static_cast<int>(instance.jobs.size()); ++j) {
    const Job& job = instance.jobs[j];
    int assigned = -1;
    for (int i = 0; i < V; ++i) {
      if (!model.bool_value(layout.x(i, j))) continue;
      if (assigned >= 0) {
        throw DecodeError("job " + job.id + " assigned to two vehicles");
      }
      assigned = i;
    }
    if (assigned < 0) throw DecodeError("job " + job.id + " assigned to no vehicle");
    for (int k = 0; k < static_cast<int>(job.tasks.size()); ++k) {
      const Task& task = job.tasks[k];
      int instant = -1;
      for (int t = task.tw_lower; t <= task.tw_upper; ++t) {
        if (model.bool_value(layout.z(assigned, j, k, t))) {
          instant = t;
          break;
        }
      }
      if (instant < 0) {
        throw DecodeError("task " + task.id + " of job " + job.id +
                          " has no service instant inside its window");
      }
      schedule.vehicles[assigned].services.push_back({j, k, instant});
    }
  }

  for (VehicleTimeline& tl : schedule.vehicles) {
    std::sort(tl.services.begin(), tl.services.end(),
              [](const ServiceEvent& a, const ServiceEvent& b) {
                if (a.t != b.t) return a.t < b.t;
                if (a.job != b.job) return a.job < b.job;
                return a.task < b.task;
              });
  }

  auto cost = model.int_value("total_cost");
  if (!cost) throw DecodeError("solver model carries no total_cost value");
  schedule.total_cost = *cost;
  return schedule;
}

}  // namespace cfevrp
