#include "cfevrp/model.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace cfevrp {

std::optional<int> Graph::find_node(const std::string& name) const {
  for (int i = 0; i < node_count(); ++i) {
    if (nodes[i] == name) return i;
  }
  return std::nullopt;
}

void Graph::rebuild_adjacency() {
  adjacency.assign(nodes.size(), {});
  for (const auto& [key, attr] : edges) {
    (void)attr;
    adjacency[key.first].push_back(key.second);
  }
  for (auto& succ : adjacency) std::sort(succ.begin(), succ.end());
}

namespace {

void check_graph(const Graph& g) {
  std::set<std::string> seen;
  for (const auto& name : g.nodes) {
    if (!seen.insert(name).second)
      throw InstanceError("nodes: duplicate node id '" + name + "'");
  }
  if (g.hub.size() != g.nodes.size())
    throw InstanceError("hubs: hub flags out of sync with node list");
  for (const auto& [key, attr] : g.edges) {
    auto [from, to] = key;
    if (from < 0 || from >= g.node_count() || to < 0 || to >= g.node_count())
      throw InstanceError("edges: unknown node in edge endpoints");
    if (from == to)
      throw InstanceError("edges: self-loop at node '" + g.nodes[from] + "'");
    if (attr.length < 1)
      throw InstanceError("edges: length < 1 on edge " + g.nodes[from] + "->" +
                          g.nodes[to]);
    if (attr.capacity < 1)
      throw InstanceError("edges: capacity < 1 on edge " + g.nodes[from] +
                          "->" + g.nodes[to]);
  }
}

// The delivery must transitively succeed every other task of the job.
void check_job_structure(const Job& job) {
  const int n = static_cast<int>(job.tasks.size());
  if (n == 0) throw InstanceError("jobs." + job.id + ": no tasks");
  std::set<std::string> ids;
  for (const auto& task : job.tasks) {
    if (!ids.insert(task.id).second)
      throw InstanceError("jobs." + job.id + ": duplicate task id '" +
                          task.id + "'");
  }

  // Cycle check (DFS colors) over the predecessor relation.
  std::vector<int> color(n, 0);
  auto dfs = [&](auto&& self, int k) -> void {
    color[k] = 1;
    for (int p : job.tasks[k].predecessors) {
      if (p < 0 || p >= n)
        throw InstanceError("jobs." + job.id + ": predecessor out of range");
      if (color[p] == 1)
        throw InstanceError("jobs." + job.id + ": predecessor cycle through '" +
                            job.tasks[k].id + "'");
      if (color[p] == 0) self(self, p);
    }
    color[k] = 2;
  };
  for (int k = 0; k < n; ++k)
    if (color[k] == 0) dfs(dfs, k);

  // Transitive-predecessor closure per task.
  std::vector<std::set<int>> preds(n);
  std::vector<int> order;  // topological, predecessors first
  std::vector<int> mark(n, 0);
  auto topo = [&](auto&& self, int k) -> void {
    mark[k] = 1;
    for (int p : job.tasks[k].predecessors)
      if (mark[p] == 0) self(self, p);
    order.push_back(k);
  };
  for (int k = 0; k < n; ++k)
    if (mark[k] == 0) topo(topo, k);
  for (int k : order) {
    for (int p : job.tasks[k].predecessors) {
      preds[k].insert(p);
      preds[k].insert(preds[p].begin(), preds[p].end());
    }
  }

  int delivery_count = 0;
  for (int k = 0; k < n; ++k) {
    if (static_cast<int>(preds[k].size()) == n - 1) ++delivery_count;
  }
  if (delivery_count != 1)
    throw InstanceError("jobs." + job.id +
                        ": expected exactly one delivery task that succeeds "
                        "all pickups, found " +
                        std::to_string(delivery_count));
}

}  // namespace

void Instance::finalize() {
  check_graph(graph);
  graph.rebuild_adjacency();

  longest_edge = 0;
  for (const auto& [key, attr] : graph.edges) {
    (void)key;
    longest_edge = std::max(longest_edge, attr.length);
  }
  if (deadline < 0) throw InstanceError("deadline: must be >= 0");
  horizon = deadline + longest_edge;

  std::set<std::string> vehicle_ids;
  std::map<int, int> start_count;
  for (const auto& v : vehicles) {
    if (!vehicle_ids.insert(v.id).second)
      throw InstanceError("vehicles: duplicate vehicle id '" + v.id + "'");
    if (v.start < 0 || v.start >= graph.node_count())
      throw InstanceError("vehicles." + v.id + ": unknown start node");
    ++start_count[v.start];
  }
  for (const auto& [node, count] : start_count) {
    if (count > 1 && !graph.hub[node])
      throw InstanceError("vehicles: " + std::to_string(count) +
                          " vehicles share non-hub start node '" +
                          graph.nodes[node] + "'");
  }

  std::set<std::string> job_ids;
  for (const auto& job : jobs) {
    if (!job_ids.insert(job.id).second)
      throw InstanceError("jobs: duplicate job id '" + job.id + "'");
    check_job_structure(job);
    if (job.eligible.empty())
      throw InstanceError("jobs." + job.id + ": empty eligible vehicle set");
    for (int i : job.eligible) {
      if (i < 0 || i >= static_cast<int>(vehicles.size()))
        throw InstanceError("jobs." + job.id + ": unknown eligible vehicle");
    }
    for (const auto& task : job.tasks) {
      if (task.location < 0 || task.location >= graph.node_count())
        throw InstanceError("jobs." + job.id + ".tasks." + task.id +
                            ": unknown node");
      if (task.tw_lower < 0 || task.tw_lower > task.tw_upper)
        throw InstanceError("jobs." + job.id + ".tasks." + task.id +
                            ": bad time window");
      if (task.tw_upper > horizon)
        throw InstanceError("jobs." + job.id + ".tasks." + task.id +
                            ": window upper bound " +
                            std::to_string(task.tw_upper) +
                            " exceeds horizon " + std::to_string(horizon));
    }
  }

  if (battery.operating_range < 0)
    throw InstanceError("battery.operating_range: must be >= 0");
  if (battery.charge_coeff < 0)
    throw InstanceError("battery.charge: must be >= 0");
  if (battery.discharge_coeff < 0)
    throw InstanceError("battery.discharge: must be >= 0");
  for (int n : battery.stations) {
    if (n < 0 || n >= graph.node_count())
      throw InstanceError("battery.stations: unknown node");
  }
}

std::optional<int> shortest_path_length(const Graph& graph, int a, int b) {
  if (a == b) return 0;
  const int n = graph.node_count();
  std::vector<long long> dist(n, -1);
  using Item = std::pair<long long, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[a] = 0;
  heap.push({0, a});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    if (u == b) return static_cast<int>(d);
    for (int v : graph.adjacency[u]) {
      long long nd = d + graph.edge(u, v).length;
      if (dist[v] < 0 || nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return std::nullopt;
}

bool strongly_connected(const Graph& graph) {
  const int n = graph.node_count();
  if (n <= 1) return true;

  auto reach_count = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          q.push(v);
        }
      }
    }
    return count;
  };

  if (reach_count(graph.adjacency) != n) return false;
  std::vector<std::vector<int>> reverse(n);
  for (const auto& [key, attr] : graph.edges) {
    (void)attr;
    reverse[key.second].push_back(key.first);
  }
  return reach_count(reverse) == n;
}

}  // namespace cfevrp
