#include "cfevrp/generator.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cfevrp/json_io.hpp"
#include "json.hpp"

namespace cfevrp {

namespace {

// Deterministic draws: raw engine output reduced by modulo, so results do not
// depend on the standard library's distribution implementations.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int uniform(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<int>(i) - 1))]);
    }
  }
};

std::uint64_t mix_seed(std::uint64_t seed, int a, int b, int c) {
  std::uint64_t m = seed;
  for (int salt : {a, b, c}) {
    m = m * 6364136223846793005ULL + static_cast<std::uint64_t>(salt) + 1442695040888963407ULL;
  }
  return m;
}

struct ClassParams {
  int nodes, vehicles, jobs, rows, cols;
};

ClassParams class_params(const std::string& klass) {
  if (klass == "15-3-5") return {15, 3, 5, 3, 5};
  if (klass == "25-4-7") return {25, 4, 7, 5, 5};
  if (klass == "35-6-8") return {35, 6, 8, 7, 5};
  throw GenerationError("unknown class '" + klass + "' (expected 15-3-5, 25-4-7, or 35-6-8)");
}

int removed_pairs(int nodes, int reduction) {
  if (reduction == 0) return 0;
  if (reduction == 25) return nodes == 15 ? 3 : nodes == 25 ? 6 : 9;
  if (reduction == 50) return nodes == 15 ? 6 : nodes == 25 ? 12 : 18;
  throw GenerationError("unknown edge reduction " + std::to_string(reduction) +
                        " (expected 0, 25, or 50)");
}

// Unit-length capacity-one grid, both directions per neighbor pair, nodes
// named n0..n{rows*cols-1} in row-major order.
Graph grid_graph(int rows, int cols) {
  Graph g;
  for (int n = 0; n < rows * cols; ++n) g.nodes.push_back("n" + std::to_string(n));
  g.hub.assign(g.nodes.size(), false);
  auto link = [&](int a, int b) {
    g.edges[{a, b}] = EdgeAttr{1, 1};
    g.edges[{b, a}] = EdgeAttr{1, 1};
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int n = r * cols + c;
      if (c + 1 < cols) link(n, n + 1);
      if (r + 1 < rows) link(n, n + cols);
    }
  }
  g.rebuild_adjacency();
  return g;
}

// Removes `pairs` bidirectional edge pairs, drawing candidates in a random
// order and rejecting any removal that breaks strong connectivity. Removing
// edges never restores connectivity, so one pass over the shuffled
// candidates visits every removable pair; the attempt budget is a safety
// net.
void reduce_edges(Graph& g, int pairs, Rng& rng) {
  if (pairs == 0) return;
  std::vector<std::pair<int, int>> candidates;
  for (const auto& [key, attr] : g.edges) {
    if (key.first < key.second) candidates.push_back(key);
  }
  rng.shuffle(candidates);
  int removed = 0, attempts = 0;
  for (const auto& pair : candidates) {
    if (removed == pairs) break;
    if (++attempts > 1000) break;
    EdgeAttr fwd = g.edges.at(pair);
    EdgeAttr bwd = g.edges.at({pair.second, pair.first});
    g.edges.erase(pair);
    g.edges.erase({pair.second, pair.first});
    g.rebuild_adjacency();
    if (strongly_connected(g)) {
      ++removed;
    } else {
      g.edges[pair] = fwd;
      g.edges[{pair.second, pair.first}] = bwd;
      g.rebuild_adjacency();
    }
  }
  if (removed < pairs) {
    throw GenerationError("edge reduction exhausted its retry budget: removed " +
                          std::to_string(removed) + " of " + std::to_string(pairs) +
                          " pairs without disconnecting the graph");
  }
}

int spl(const Graph& g, int a, int b) {
  auto d = shortest_path_length(g, a, b);
  if (!d) throw GenerationError("generated graph is not connected");
  return *d;
}

}  // namespace

Instance generate(const GenSpec& spec) {
  const ClassParams cp = class_params(spec.klass);
  if (spec.deadline < 1) throw GenerationError("deadline must be positive");
  Rng rng(mix_seed(spec.seed, cp.nodes, spec.reduction, spec.deadline));

  Instance inst;
  inst.graph = grid_graph(cp.rows, cp.cols);
  reduce_edges(inst.graph, removed_pairs(cp.nodes, spec.reduction), rng);
  inst.deadline = spec.deadline;

  // Distinct random depots, one vehicle each; depots double as charging
  // stations.
  std::vector<int> nodes(cp.nodes);
  for (int n = 0; n < cp.nodes; ++n) nodes[n] = n;
  rng.shuffle(nodes);
  std::vector<int> depots(nodes.begin(), nodes.begin() + cp.vehicles);
  for (int i = 0; i < cp.vehicles; ++i) {
    inst.vehicles.push_back({std::string(1, static_cast<char>('a' + i)), depots[i]});
  }
  inst.battery.stations = depots;
  std::sort(inst.battery.stations.begin(), inst.battery.stations.end());

  // Vehicle types: every job needs one type, except a final job open to all.
  const int types = rng.uniform(2, cp.vehicles);
  std::vector<int> type_of(cp.vehicles);
  std::vector<int> order(cp.vehicles);
  for (int i = 0; i < cp.vehicles; ++i) order[i] = i;
  rng.shuffle(order);
  for (int i = 0; i < cp.vehicles; ++i) {
    type_of[order[i]] = i < types ? i : rng.uniform(0, types - 1);
  }

  std::vector<bool> is_depot(cp.nodes, false);
  for (int d : depots) is_depot[d] = true;
  auto draw_location = [&](int avoid) {
    while (true) {
      int n = rng.uniform(0, cp.nodes - 1);
      if (!is_depot[n] && n != avoid) return n;
    }
  };

  struct JobDraft {
    int pickup, delivery, required_type;  // required_type -1 = any vehicle
  };
  std::vector<JobDraft> drafts;
  for (int j = 0; j < cp.jobs; ++j) {
    JobDraft d;
    d.required_type = j + 1 < cp.jobs ? rng.uniform(0, types - 1) : -1;
    d.pickup = draw_location(-1);
    d.delivery = draw_location(d.pickup);
    drafts.push_back(d);
  }

  // Delivery windows anchor at the earliest arrival an eligible vehicle can
  // manage; the operating range is drawn from [longest needed round trip,
  // twice that].
  int needed_range = 1;
  for (int j = 0; j < cp.jobs; ++j) {
    const JobDraft& d = drafts[j];
    int best = -1;
    for (int i = 0; i < cp.vehicles; ++i) {
      if (d.required_type >= 0 && type_of[i] != d.required_type) continue;
      int trip = spl(inst.graph, depots[i], d.pickup) +
                 spl(inst.graph, d.pickup, d.delivery) +
                 spl(inst.graph, d.delivery, depots[i]);
      if (best < 0 || trip < best) best = trip;
    }
    needed_range = std::max(needed_range, best);
  }

  for (int j = 0; j < cp.jobs; ++j) {
    const JobDraft& d = drafts[j];
    int arrival = -1;
    for (int i = 0; i < cp.vehicles; ++i) {
      if (d.required_type >= 0 && type_of[i] != d.required_type) continue;
      int a = spl(inst.graph, depots[i], d.pickup) + spl(inst.graph, d.pickup, d.delivery);
      if (arrival < 0 || a < arrival) arrival = a;
    }
    const int slack = rng.uniform(2, 6);
    Job job;
    job.id = d.required_type >= 0 ? "j" + std::to_string(j + 1) : "x1";
    Task pickup;
    pickup.id = "t1";
    pickup.location = d.pickup;
    pickup.tw_lower = 0;
    pickup.tw_upper = spec.deadline;
    Task delivery;
    delivery.id = "t2";
    delivery.location = d.delivery;
    delivery.predecessors = {0};
    delivery.tw_lower = std::min(arrival, spec.deadline);
    delivery.tw_upper = std::min(arrival + slack, spec.deadline);
    job.tasks = {pickup, delivery};
    for (int i = 0; i < cp.vehicles; ++i) {
      if (d.required_type < 0 || type_of[i] == d.required_type) job.eligible.push_back(i);
    }
    inst.jobs.push_back(job);
  }

  inst.battery.operating_range = rng.uniform(needed_range, 2 * needed_range);
  inst.battery.charge_coeff = rng.uniform(1, 3);
  inst.battery.discharge_coeff = 1;

  inst.finalize();
  return inst;
}

std::vector<SuiteEntry> generate_suite(const std::vector<std::string>& classes,
                                       const std::vector<int>& reductions,
                                       const std::vector<int>& deadlines,
                                       int seeds_per_cell,
                                       const std::string& out_dir) {
  if (classes.empty() || reductions.empty() || deadlines.empty()) {
    throw GenerationError("generate_suite needs nonempty parameter lists");
  }
  std::filesystem::create_directories(out_dir);
  std::vector<SuiteEntry> entries;
  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  for (const std::string& klass : classes) {
    for (int reduction : reductions) {
      for (int deadline : deadlines) {
        for (int seed = 0; seed < seeds_per_cell; ++seed) {
          GenSpec spec{klass, reduction, deadline, static_cast<std::uint64_t>(seed)};
          Instance inst = generate(spec);
          std::ostringstream name;
          name << klass << "_r" << reduction << "_d" << deadline << "_s" << seed
               << ".json";
          save_instance(inst, (std::filesystem::path(out_dir) / name.str()).string());
          entries.push_back({spec, name.str()});
          manifest.push_back({{"file", name.str()},
                              {"class", klass},
                              {"reduction", reduction},
                              {"deadline", deadline},
                              {"seed", seed}});
        }
      }
    }
  }
  std::ofstream out(std::filesystem::path(out_dir) / "manifest.json");
  if (!out) throw GenerationError("cannot write manifest.json in " + out_dir);
  out << manifest.dump(2) << "\n";
  return entries;
}

Instance generate_tiny(std::uint64_t seed) {
  Rng rng(mix_seed(seed, 9, 2, 12));

  Instance inst;
  const int rows = rng.uniform(2, 3);
  const int cols = rng.uniform(2, 3);
  const int n_nodes = rows * cols;
  inst.graph = grid_graph(rows, cols);
  if (n_nodes >= 6 && rng.uniform(0, 2) == 0) {
    reduce_edges(inst.graph, 1, rng);
  }
  // Occasionally stretch one edge pair so multi-step traversals occur.
  if (rng.uniform(0, 2) == 0) {
    std::vector<std::pair<int, int>> keys;
    for (const auto& [key, attr] : inst.graph.edges) {
      if (key.first < key.second) keys.push_back(key);
    }
    const auto& pick = keys[static_cast<std::size_t>(
        rng.uniform(0, static_cast<int>(keys.size()) - 1))];
    inst.graph.edges[pick].length = 2;
    inst.graph.edges[{pick.second, pick.first}].length = 2;
  }

  inst.deadline = rng.uniform(6, 10);
  const int vehicles = rng.uniform(1, 2);
  const int jobs = rng.uniform(1, 2);

  std::vector<int> nodes(n_nodes);
  for (int n = 0; n < n_nodes; ++n) nodes[n] = n;
  rng.shuffle(nodes);
  std::vector<int> depots(nodes.begin(), nodes.begin() + vehicles);
  for (int i = 0; i < vehicles; ++i) {
    inst.vehicles.push_back({std::string(1, static_cast<char>('a' + i)), depots[i]});
  }
  // Chargers never coincide with depots; idling at a depot keeps the charge
  // level flat, which the padding after the deadline relies on.
  if (rng.uniform(0, 1) == 1) {
    inst.battery.stations.push_back(nodes[vehicles]);
  }

  std::vector<bool> is_depot(n_nodes, false);
  for (int d : depots) is_depot[d] = true;
  auto draw_location = [&](int avoid) {
    while (true) {
      int n = rng.uniform(0, n_nodes - 1);
      if (!is_depot[n] && n != avoid) return n;
    }
  };

  int needed_range = 1;
  for (int j = 0; j < jobs; ++j) {
    Job job;
    job.id = "j" + std::to_string(j + 1);
    for (int i = 0; i < vehicles; ++i) job.eligible.push_back(i);
    const bool two_tasks = rng.uniform(0, 2) != 0;
    const int pickup_loc = draw_location(-1);
    const int delivery_loc = two_tasks ? draw_location(pickup_loc) : pickup_loc;

    int arrival = -1, trip = -1;
    for (int i : job.eligible) {
      int a = spl(inst.graph, depots[i], pickup_loc) +
              (two_tasks ? spl(inst.graph, pickup_loc, delivery_loc) : 0);
      int t = a + spl(inst.graph, delivery_loc, depots[i]);
      if (arrival < 0 || a < arrival) arrival = a;
      if (trip < 0 || t < trip) trip = t;
    }
    needed_range = std::max(needed_range, trip);

    const int slack = rng.uniform(0, 4);
    if (two_tasks) {
      Task pickup;
      pickup.id = "t1";
      pickup.location = pickup_loc;
      pickup.tw_lower = 0;
      pickup.tw_upper = inst.deadline;
      job.tasks.push_back(pickup);
    }
    Task delivery;
    delivery.id = two_tasks ? "t2" : "t1";
    delivery.location = delivery_loc;
    if (two_tasks) delivery.predecessors = {0};
    delivery.tw_lower = std::min(arrival, inst.deadline);
    delivery.tw_upper = std::min(arrival + slack, inst.deadline);
    job.tasks.push_back(delivery);
    inst.jobs.push_back(job);
  }

  // Sometimes below the needed range, so infeasible instances occur too.
  inst.battery.operating_range = rng.uniform(std::max(1, needed_range - 2),
                                             needed_range + 4);
  inst.battery.charge_coeff = rng.uniform(1, 2);
  inst.battery.discharge_coeff = 1;

  inst.finalize();
  return inst;
}

}  // namespace cfevrp
