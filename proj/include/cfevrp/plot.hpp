#pragma once

#include <string>

#include "cfevrp/model.hpp"

namespace cfevrp {

// Renders the plant graph as a Graphviz document: depots and charging
// stations marked, hubs boxed, and (when a schedule is given) each vehicle's
// moves overlaid as a colored, time-annotated path. Pass nullptr to draw the
// bare graph.
std::string schedule_to_dot(const Instance& instance, const Schedule* schedule);

}  // namespace cfevrp
