#include "cfevrp/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cfevrp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

int resolve_node(const Graph& graph, const std::string& name,
                 const std::string& context) {
  auto idx = graph.find_node(name);
  if (!idx) throw InstanceError(context + ": unknown node '" + name + "'");
  return *idx;
}

}  // namespace

Instance instance_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InstanceError(std::string("parse error: ") + e.what());
  }

  Instance inst;
  try {
    for (const auto& name : doc.at("nodes")) {
      inst.graph.nodes.push_back(name.get<std::string>());
    }
    inst.graph.hub.assign(inst.graph.nodes.size(), false);
    for (const auto& name : doc.at("hubs")) {
      int n = resolve_node(inst.graph, name.get<std::string>(), "hubs");
      inst.graph.hub[n] = true;
    }
    for (const auto& e : doc.at("edges")) {
      int from = resolve_node(inst.graph, e.at("from").get<std::string>(),
                              "edges.from");
      int to = resolve_node(inst.graph, e.at("to").get<std::string>(),
                            "edges.to");
      EdgeAttr attr{e.at("length").get<int>(), e.at("capacity").get<int>()};
      if (!inst.graph.edges.emplace(std::make_pair(from, to), attr).second)
        throw InstanceError("edges: duplicate edge " +
                            inst.graph.nodes[from] + "->" +
                            inst.graph.nodes[to]);
    }
    for (const auto& v : doc.at("vehicles")) {
      Vehicle vehicle;
      vehicle.id = v.at("id").get<std::string>();
      vehicle.start = resolve_node(inst.graph, v.at("start").get<std::string>(),
                                   "vehicles." + vehicle.id + ".start");
      inst.vehicles.push_back(std::move(vehicle));
    }
    for (const auto& j : doc.at("jobs")) {
      Job job;
      job.id = j.at("id").get<std::string>();
      for (const auto& vid : j.at("eligible")) {
        const std::string id = vid.get<std::string>();
        auto it = std::find_if(inst.vehicles.begin(), inst.vehicles.end(),
                               [&](const Vehicle& v) { return v.id == id; });
        if (it == inst.vehicles.end())
          throw InstanceError("jobs." + job.id + ".eligible: unknown vehicle '" +
                              id + "'");
        job.eligible.push_back(
            static_cast<int>(std::distance(inst.vehicles.begin(), it)));
      }
      std::sort(job.eligible.begin(), job.eligible.end());
      job.eligible.erase(std::unique(job.eligible.begin(), job.eligible.end()),
                         job.eligible.end());

      std::vector<std::string> task_ids;
      for (const auto& t : j.at("tasks"))
        task_ids.push_back(t.at("id").get<std::string>());
      for (const auto& t : j.at("tasks")) {
        Task task;
        task.id = t.at("id").get<std::string>();
        task.location =
            resolve_node(inst.graph, t.at("location").get<std::string>(),
                         "jobs." + job.id + ".tasks." + task.id);
        for (const auto& p : t.at("predecessors")) {
          const std::string pid = p.get<std::string>();
          auto it = std::find(task_ids.begin(), task_ids.end(), pid);
          if (it == task_ids.end())
            throw InstanceError("jobs." + job.id + ".tasks." + task.id +
                                ": unknown predecessor '" + pid + "'");
          task.predecessors.push_back(
              static_cast<int>(std::distance(task_ids.begin(), it)));
        }
        const auto& tw = t.at("tw");
        if (!tw.is_array() || tw.size() != 2)
          throw InstanceError("jobs." + job.id + ".tasks." + task.id +
                              ".tw: expected [lo, hi]");
        task.tw_lower = tw[0].get<int>();
        task.tw_upper = tw[1].get<int>();
        job.tasks.push_back(std::move(task));
      }
      inst.jobs.push_back(std::move(job));
    }
    const auto& b = doc.at("battery");
    inst.battery.operating_range = b.at("operating_range").get<int>();
    inst.battery.charge_coeff = b.at("charge").get<int>();
    inst.battery.discharge_coeff = b.at("discharge").get<int>();
    for (const auto& s : b.at("stations")) {
      inst.battery.stations.push_back(
          resolve_node(inst.graph, s.get<std::string>(), "battery.stations"));
    }
    std::sort(inst.battery.stations.begin(), inst.battery.stations.end());
    inst.battery.stations.erase(
        std::unique(inst.battery.stations.begin(), inst.battery.stations.end()),
        inst.battery.stations.end());
    inst.deadline = doc.at("deadline").get<int>();
  } catch (const json::exception& e) {
    throw InstanceError(std::string("schema error: ") + e.what());
  }

  inst.finalize();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json_text(buf.str());
}

std::string instance_to_json_text(const Instance& inst) {
  ordered_json doc;
  doc["nodes"] = inst.graph.nodes;
  ordered_json hubs = ordered_json::array();
  for (int n = 0; n < inst.graph.node_count(); ++n)
    if (inst.graph.hub[n]) hubs.push_back(inst.graph.nodes[n]);
  doc["hubs"] = hubs;
  ordered_json edges = ordered_json::array();
  for (const auto& [key, attr] : inst.graph.edges) {
    edges.push_back({{"from", inst.graph.nodes[key.first]},
                     {"to", inst.graph.nodes[key.second]},
                     {"length", attr.length},
                     {"capacity", attr.capacity}});
  }
  doc["edges"] = edges;
  ordered_json vehicles = ordered_json::array();
  for (const auto& v : inst.vehicles)
    vehicles.push_back({{"id", v.id}, {"start", inst.graph.nodes[v.start]}});
  doc["vehicles"] = vehicles;
  ordered_json jobs = ordered_json::array();
  for (const auto& job : inst.jobs) {
    ordered_json tasks = ordered_json::array();
    for (const auto& task : job.tasks) {
      ordered_json preds = ordered_json::array();
      for (int p : task.predecessors) preds.push_back(job.tasks[p].id);
      tasks.push_back({{"id", task.id},
                       {"location", inst.graph.nodes[task.location]},
                       {"predecessors", preds},
                       {"tw", {task.tw_lower, task.tw_upper}}});
    }
    ordered_json eligible = ordered_json::array();
    for (int i : job.eligible) eligible.push_back(inst.vehicles[i].id);
    jobs.push_back(
        {{"id", job.id}, {"eligible", eligible}, {"tasks", tasks}});
  }
  doc["jobs"] = jobs;
  ordered_json stations = ordered_json::array();
  for (int n : inst.battery.stations) stations.push_back(inst.graph.nodes[n]);
  doc["battery"] = {{"operating_range", inst.battery.operating_range},
                    {"charge", inst.battery.charge_coeff},
                    {"discharge", inst.battery.discharge_coeff},
                    {"stations", stations}};
  doc["deadline"] = inst.deadline;
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << instance_to_json_text(instance);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

bool instances_equal(const Instance& a, const Instance& b) {
  return instance_to_json_text(a) == instance_to_json_text(b);
}

std::string schedule_to_json_text(const Schedule& schedule,
                                  const Instance& inst) {
  ordered_json doc;
  ordered_json vehicles = ordered_json::array();
  for (size_t i = 0; i < schedule.vehicles.size(); ++i) {
    const auto& tl = schedule.vehicles[i];
    ordered_json timeline = ordered_json::array();
    for (const auto& [t, n] : tl.location)
      timeline.push_back({t, inst.graph.nodes[n]});
    ordered_json moves = ordered_json::array();
    for (const auto& m : tl.moves)
      moves.push_back(
          {m.t, inst.graph.nodes[m.from], inst.graph.nodes[m.to]});
    ordered_json services = ordered_json::array();
    for (const auto& s : tl.services)
      services.push_back({{"job", inst.jobs[s.job].id},
                          {"task", inst.jobs[s.job].tasks[s.task].id},
                          {"t", s.t}});
    ordered_json charge = ordered_json::array();
    for (const auto& [t, rc] : tl.charge) charge.push_back({t, rc});
    vehicles.push_back({{"id", inst.vehicles[i].id},
                        {"timeline", timeline},
                        {"moves", moves},
                        {"services", services},
                        {"charge", charge}});
  }
  doc["vehicles"] = vehicles;
  doc["total_cost"] = schedule.total_cost;
  return doc.dump(2) + "\n";
}

Schedule schedule_from_json_text(const std::string& text,
                                 const Instance& inst) {
  json doc = json::parse(text);
  Schedule schedule;
  schedule.vehicles.resize(inst.vehicles.size());
  for (const auto& v : doc.at("vehicles")) {
    const std::string id = v.at("id").get<std::string>();
    auto it = std::find_if(inst.vehicles.begin(), inst.vehicles.end(),
                           [&](const Vehicle& x) { return x.id == id; });
    if (it == inst.vehicles.end())
      throw std::runtime_error("schedule: unknown vehicle '" + id + "'");
    auto& tl =
        schedule.vehicles[std::distance(inst.vehicles.begin(), it)];
    for (const auto& e : v.at("timeline")) {
      tl.location[e[0].get<int>()] =
          resolve_node(inst.graph, e[1].get<std::string>(), "schedule.timeline");
    }
    for (const auto& m : v.at("moves")) {
      tl.moves.push_back(
          {m[0].get<int>(),
           resolve_node(inst.graph, m[1].get<std::string>(), "schedule.moves"),
           resolve_node(inst.graph, m[2].get<std::string>(), "schedule.moves")});
    }
    for (const auto& s : v.at("services")) {
      const std::string jid = s.at("job").get<std::string>();
      auto jit = std::find_if(inst.jobs.begin(), inst.jobs.end(),
                              [&](const Job& j) { return j.id == jid; });
      if (jit == inst.jobs.end())
        throw std::runtime_error("schedule: unknown job '" + jid + "'");
      const std::string tid = s.at("task").get<std::string>();
      auto tit = std::find_if(jit->tasks.begin(), jit->tasks.end(),
                              [&](const Task& t) { return t.id == tid; });
      if (tit == jit->tasks.end())
        throw std::runtime_error("schedule: unknown task '" + tid + "'");
      tl.services.push_back(
          {static_cast<int>(std::distance(inst.jobs.begin(), jit)),
           static_cast<int>(std::distance(jit->tasks.begin(), tit)),
           s.at("t").get<int>()});
    }
    for (const auto& c : v.at("charge"))
      tl.charge[c[0].get<int>()] = c[1].get<int>();
  }
  schedule.total_cost = doc.at("total_cost").get<long long>();
  return schedule;
}

void save_schedule(const Schedule& schedule, const Instance& instance,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << schedule_to_json_text(schedule, instance);
}

Schedule load_schedule(const std::string& path, const Instance& instance) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return schedule_from_json_text(buf.str(), instance);
}

}  // namespace cfevrp
