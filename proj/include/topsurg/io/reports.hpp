#pragma once

// JSON forms of the analysis results. Every floating-point value is rounded
// to 12 significant digits.

#include <json.hpp>

#include "topsurg/flow/limit_cycle.hpp"
#include "topsurg/flow/poincare.hpp"
#include "topsurg/flow/shell.hpp"
#include "topsurg/io/format.hpp"
#include "topsurg/kernel/json_io.hpp"
#include "topsurg/lv3/equilibria.hpp"
#include "topsurg/lv3/regions.hpp"
#include "topsurg/solid/cross_section.hpp"
#include "topsurg/solid/morse.hpp"

namespace topsurg::io {

using nlohmann::json;

template <std::size_t N>
json num_array(const std::array<double, N>& v) {
  json a = json::array();
  for (double x : v) a.push_back(round_sig(x));
  return a;
}

inline json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(round_sig(x));
  return a;
}

inline json complex_pair(const lv3::cplx& z) { return json::array({round_sig(z.real()), round_sig(z.imag())}); }

inline json params_json(const lv3::SystemParams& p) {
  return {{"A", round_sig(p.A)}, {"B", round_sig(p.B)}, {"C", round_sig(p.C)}};
}

inline json to_json(const lv3::EquilibriumReport& e) {
  json values = json::array(), vectors = json::array();
  for (const auto& z : e.eigen.values) values.push_back(complex_pair(z));
  for (const auto& v : e.eigen.vectors) {
    json vec = json::array();
    for (const auto& z : v) vec.push_back(complex_pair(z));
    vectors.push_back(std::move(vec));
  }
  json jac = json::array();
  for (const auto& row : e.jacobian) jac.push_back(num_array(row));
  return {{"label", std::string(lv3::to_string(e.label))},
          {"coordinates", num_array(e.coordinates)},
          {"jacobian", std::move(jac)},
          {"eigenvalues", std::move(values)},
          {"eigenvectors", std::move(vectors)},
          {"residuals", num_array(e.eigen.residuals)},
          {"approximate", e.eigen.approximate},
          {"class", std::string(lv3::to_string(e.stability))}};
}

inline json equilibria_json(const lv3::SystemParams& p) {
  json list = json::array();
  for (const auto& e : lv3::equilibria(p)) list.push_back(to_json(e));
  return {{"params", params_json(p)}, {"region", std::string(lv3::to_string(lv3::region(p)))},
          {"equilibria", std::move(list)}};
}

inline json to_json(const flow::ShellClassification& c) {
  const auto& e = c.evidence;
  return {{"verdict", std::string(flow::to_string(c.verdict))},
          {"note", c.note},
          {"evidence",
           {{"max_displacement", round_sig(e.max_displacement)},
            {"diameter", round_sig(e.diameter)},
            {"closure_error", round_sig(e.closure_error)},
            {"final_speed", round_sig(e.final_speed)},
            {"tail_min_axis_distance", round_sig(e.tail_min_axis_distance)},
            {"total_turns", round_sig(e.total_turns)},
            {"tail_turns", round_sig(e.tail_turns)},
            {"monotone_fraction", round_sig(e.monotone_fraction)},
            {"section_points", e.section_points},
            {"section_spread", round_sig(e.section_spread)},
            {"section_max_gap", round_sig(e.section_max_gap)},
            {"section_closed", e.section_closed}}}};
}

inline json to_json(const std::vector<flow::SectionPoint>& pts) {
  json list = json::array();
  for (const auto& p : pts)
    list.push_back({{"t", round_sig(p.t)},
                    {"state", num_array(p.state)},
                    {"direction", p.direction == flow::Crossing::up ? "up" : "down"}});
  return list;
}

inline json to_json(const flow::LimitCycle& c) {
  json j{{"converged", c.converged}, {"iterations", c.iterations}, {"residuals", num_array(c.residuals)}};
  if (!c.warning.empty()) j["warning"] = c.warning;
  if (!c.converged) {
    j["failure"] = c.failure;
    return j;
  }
  json loop = json::array();
  for (std::size_t i = 0; i < c.loop.size(); ++i) {
    auto row = num_array(c.loop[i]);
    row.insert(row.begin(), round_sig(c.loop_times[i]));
    loop.push_back(std::move(row));
  }
  j["period"] = round_sig(c.period);
  j["rho"] = round_sig(c.rho);
  j["axial"] = round_sig(c.axial);
  j["section_point"] = num_array(c.loop.front());
  j["loop"] = std::move(loop);
  return j;
}

inline json to_json(const solid::LevelSetFrame& f) {
  json lines = json::array();
  for (const auto& l : f.polylines) {
    json pts = json::array();
    for (const auto& p : l) pts.push_back(num_array(p));
    lines.push_back(std::move(pts));
  }
  return {{"t", round_sig(f.t)},
          {"box", round_sig(f.box)},
          {"resolution", f.resolution},
          {"grid_tolerance", round_sig(f.grid_tolerance)},
          {"degenerate", f.degenerate},
          {"branch_count", f.branch_count()},
          {"polylines", std::move(lines)}};
}

inline json to_json(const solid::SolidFamily& f) {
  json layers = json::array();
  for (const auto& l : f.layers)
    layers.push_back({{"radius", round_sig(l.radius)},
                      {"type", std::string(solid::to_string(l.type))},
                      {"invariants", kernel::to_json(l.report)}});
  return {{"kind", std::string(solid::to_string(f.kind))},
          {"limit", std::string(solid::to_string(f.limit))},
          {"layers", std::move(layers)}};
}

inline json to_json(const solid::SectionReport& r) {
  json layers = json::array();
  for (const auto& l : r.layers)
    layers.push_back({{"radius", round_sig(l.radius)},
                      {"layer", std::string(solid::to_string(l.layer))},
                      {"circles", l.circles},
                      {"section_components", l.section_components},
                      {"expected_circles", l.expected_circles},
                      {"match", l.match}});
  return {{"kind", std::string(solid::to_string(r.kind))},
          {"limit", std::string(solid::to_string(r.limit))},
          {"limit_points", r.limit_points},
          {"expected_limit_points", r.expected_limit_points},
          {"limit_match", r.limit_match},
          {"match", r.match},
          {"layers", std::move(layers)}};
}

/// Pretty-printed JSON text with a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace topsurg::io
