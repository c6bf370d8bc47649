#include "cfevrp/plot.hpp"

#include <set>
#include <sstream>

namespace cfevrp {

namespace {

const char* kPalette[] = {"crimson",    "royalblue", "forestgreen",
                          "darkorange", "purple",    "teal",
                          "deeppink",   "saddlebrown"};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string schedule_to_dot(const Instance& instance, const Schedule* schedule) {
  const Graph& g = instance.graph;
  std::ostringstream out;
  out << "digraph plant {\n";
  out << "  node [fontname=\"Helvetica\" fontsize=11];\n";
  out << "  edge [fontname=\"Helvetica\" fontsize=9 color=gray55];\n";

  std::set<int> chargers(instance.battery.stations.begin(),
                         instance.battery.stations.end());
  std::vector<std::string> start_marks(g.node_count());
  for (const Vehicle& v : instance.vehicles) {
    if (!start_marks[v.start].empty()) start_marks[v.start] += ",";
    start_marks[v.start] += v.id;
  }

  for (int n = 0; n < g.node_count(); ++n) {
    std::string label = g.nodes[n];
    if (!start_marks[n].empty()) label += "\\nstart: " + start_marks[n];
    if (chargers.count(n)) label += "\\ncharger";
    out << "  " << quote(g.nodes[n]) << " [label=" << quote(label);
    if (g.hub[n]) out << " shape=box";
    else out << " shape=" << (chargers.count(n) ? "doublecircle" : "circle");
    if (!start_marks[n].empty()) out << " style=filled fillcolor=lightyellow";
    else if (chargers.count(n)) out << " style=filled fillcolor=lightblue";
    out << "];\n";
  }

  // Base layout: one undirected stroke per symmetric pair, arrows otherwise.
  for (const auto& [key, attr] : g.edges) {
    const auto& [a, b] = key;
    const bool symmetric = g.has_edge(b, a);
    if (symmetric && a > b) continue;
    out << "  " << quote(g.nodes[a]) << " -> " << quote(g.nodes[b]);
    out << " [";
    if (symmetric) out << "dir=none ";
    if (attr.length != 1) out << "label=\"" << attr.length << "\" ";
    out << "penwidth=0.7];\n";
  }

  if (schedule != nullptr) {
    for (std::size_t i = 0; i < schedule->vehicles.size(); ++i) {
      const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
      const std::string vid =
          i < instance.vehicles.size() ? instance.vehicles[i].id : std::to_string(i);
      for (const MoveEvent& m : schedule->vehicles[i].moves) {
        out << "  " << quote(g.nodes[m.from]) << " -> " << quote(g.nodes[m.to])
            << " [color=" << color << " penwidth=1.8 fontcolor=" << color
            << " label=" << quote(vid + "@" + std::to_string(m.t)) << "];\n";
      }
    }
  }

  out << "}\n";
  return out.str();
}

}  // namespace cfevrp
