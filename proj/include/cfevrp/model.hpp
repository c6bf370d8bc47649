#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfevrp {

// Thrown on malformed instance files and invariant violations. The message
// names the offending field.
struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeAttr {
  int length = 1;    // travel time in steps, >= 1
  int capacity = 1;  // vehicles the segment holds concurrently, >= 1
};

// Directed plant-layout graph. Nodes are kept in file order; all other
// modules refer to them by index.
struct Graph {
  std::vector<std::string> nodes;
  std::vector<bool> hub;                        // per node
  std::map<std::pair<int, int>, EdgeAttr> edges;
  std::vector<std::vector<int>> adjacency;      // sorted successor indices

  int node_count() const { return static_cast<int>(nodes.size()); }
  std::optional<int> find_node(const std::string& name) const;
  bool has_edge(int from, int to) const { return edges.count({from, to}) != 0; }
  const EdgeAttr& edge(int from, int to) const { return edges.at({from, to}); }

  // Recomputes adjacency from the edge map.
  void rebuild_adjacency();
};

struct Vehicle {
  std::string id;
  int start = -1;  // node index
};

struct Task {
  std::string id;
  int location = -1;              // node index
  std::vector<int> predecessors;  // task indices within the same job
  int tw_lower = 0;
  int tw_upper = 0;
};

struct Job {
  std::string id;
  std::vector<Task> tasks;
  std::vector<int> eligible;  // sorted vehicle indices
};

struct BatteryParams {
  int operating_range = 0;
  int charge_coeff = 0;
  int discharge_coeff = 0;
  std::vector<int> stations;  // sorted node indices
};

struct Instance {
  Graph graph;
  std::vector<Vehicle> vehicles;
  std::vector<Job> jobs;
  BatteryParams battery;
  int deadline = 0;

  // Derived by finalize(): longest edge length h and horizon T = deadline + h.
  int longest_edge = 0;
  int horizon = 0;

  // Recomputes derived fields and checks every type invariant; throws
  // InstanceError on the first violation.
  void finalize();
};

struct MoveEvent {
  int t = 0;  // departure step
  int from = -1;
  int to = -1;
};

struct ServiceEvent {
  int job = -1;   // job index
  int task = -1;  // task index within the job
  int t = 0;
};

struct VehicleTimeline {
  std::map<int, int> location;  // partial: absent while in transit
  std::vector<MoveEvent> moves;
  std::vector<ServiceEvent> services;
  std::map<int, int> charge;
};

struct Schedule {
  std::vector<VehicleTimeline> vehicles;
  long long total_cost = 0;
};

// Shortest directed path length from a to b by edge length; nullopt when b
// is unreachable from a.
std::optional<int> shortest_path_length(const Graph& graph, int a, int b);

// True when every node can reach every other node.
bool strongly_connected(const Graph& graph);

}  // namespace cfevrp
