#pragma once

// JSON forms of the combinatorial complexes:
//
//   {"kind":"surface","vertices":N,"triangles":[[i,j,k],...]}
//   {"kind":"curve","cycles":[[a0,...],...],"chains":[[...],...]}   ("chains" optional)

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "topsurg/kernel/errors.hpp"
#include "topsurg/kernel/invariants.hpp"
#include "topsurg/kernel/one_manifold.hpp"
#include "topsurg/kernel/surface.hpp"

namespace topsurg::kernel {

using Complex = std::variant<OneManifold, Surface>;

inline nlohmann::json to_json(const Surface& s) {
  nlohmann::json tris = nlohmann::json::array();
  for (const auto& t : s.triangles()) tris.push_back({t[0], t[1], t[2]});
  return {{"kind", "surface"}, {"vertices", s.vertex_count()}, {"triangles", std::move(tris)}};
}

inline nlohmann::json to_json(const OneManifold& m) {
  nlohmann::json j{{"kind", "curve"}, {"cycles", m.cycles()}};
  if (!m.chains().empty()) j["chains"] = m.chains();
  return j;
}

inline nlohmann::json to_json(const Complex& c) {
  return std::visit([](const auto& x) { return to_json(x); }, c);
}

inline nlohmann::json to_json(const InvariantReport& r) {
  nlohmann::json j{{"components", r.components},
                   {"euler_characteristic", r.euler_characteristic},
                   {"orientable", r.orientable},
                   {"closed", r.closed}};
  if (auto g = r.genus()) {
    j["genus"] = *g;
    j["component_genus"] = r.component_genus;
  } else {
    j["genus"] = nullptr;
  }
  return j;
}

/// Parses and validates a complex. Throws ManifoldError on schema or
/// manifold violations.
inline Complex complex_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "surface") {
      const int n = j.at("vertices").get<int>();
      std::vector<Triangle> tris;
      for (const auto& t : j.at("triangles")) {
        if (!t.is_array() || t.size() != 3) throw ManifoldError("each triangle must list 3 vertices");
        tris.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
      }
      return Surface(n, std::move(tris));
    }
    if (kind == "curve") {
      auto cycles = j.at("cycles").get<std::vector<std::vector<ArcId>>>();
      std::vector<std::vector<ArcId>> chains;
      if (j.contains("chains")) chains = j.at("chains").get<std::vector<std::vector<ArcId>>>();
      return OneManifold(std::move(cycles), std::move(chains));
    }
    throw ManifoldError("unknown complex kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ManifoldError(std::string("malformed complex JSON: ") + e.what());
  }
}

inline InvariantReport invariants(const Complex& c) {
  return std::visit([](const auto& x) { return invariants(x); }, c);
}

}  // namespace topsurg::kernel
