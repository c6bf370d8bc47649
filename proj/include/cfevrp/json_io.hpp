#pragma once

#include <string>

#include "cfevrp/model.hpp"

namespace cfevrp {

// Reads an instance file, resolves node/vehicle references, computes derived
// fields and checks all invariants. Throws InstanceError with the offending
// field path.
Instance load_instance(const std::string& path);

Instance instance_from_json_text(const std::string& text);

// Writes the instance in the canonical key order. load(save(x)) is
// structurally equal to x. Throws std::runtime_error on I/O failure.
void save_instance(const Instance& instance, const std::string& path);

std::string instance_to_json_text(const Instance& instance);

bool instances_equal(const Instance& a, const Instance& b);

// Schedule (de)serialization; node/vehicle references are stored by id.
std::string schedule_to_json_text(const Schedule& schedule,
                                  const Instance& instance);
Schedule schedule_from_json_text(const std::string& text,
                                 const Instance& instance);
void save_schedule(const Schedule& schedule, const Instance& instance,
                   const std::string& path);
Schedule load_schedule(const std::string& path, const Instance& instance);

}  // namespace cfevrp
