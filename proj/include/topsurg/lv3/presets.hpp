#pragma once

// Reference simulation setups: parameters and initial conditions of the
// spherical (B/A = 1) and toroidal (B/A > 1) runs.

#include <stdexcept>
#include <string>
#include <vector>

#include "topsurg/lv3/system.hpp"

namespace topsurg::lv3 {

struct Preset {
  std::string name;
  SystemParams params;
  std::vector<State> initial_conditions;
};

inline Preset preset_a() {
  return {"a", {3.0, 3.0, 3.0}, {{1, 1.59, 0.81}, {1, 1.3, 0.89}, {1, 1.18, 0.95}, {1, 1.08, 0.98}, {1, 1, 1}}};
}

inline Preset preset_b() {
  return {"b", {2.9851, 3.0, 3.0}, {{1.1075, 1, 1}, {1, 1, 0.95}, {1, 1, 0.9}, {1, 1, 1}}};
}

inline Preset preset(const std::string& name) {
  if (name == "a") return preset_a();
  if (name == "b") return preset_b();
  throw std::invalid_argument("unknown preset '" + name + "' (expected a or b)");
}

}  // namespace topsurg::lv3
