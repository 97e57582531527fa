#pragma once

// Trajectory CSV: header `t,X,Y,Z`, one row per sample.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "topsurg/flow/trajectory.hpp"
#include "topsurg/io/format.hpp"

namespace topsurg::io {

inline constexpr const char* kTrajectoryHeader = "t,X,Y,Z";

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct TrajectoryRows {
  std::vector<double> t;
  std::vector<lv3::State> states;
};

inline std::string trajectory_csv(const std::vector<double>& t, const std::vector<lv3::State>& s) {
  std::string out = std::string(kTrajectoryHeader) + "\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += fmt(t[i]) + "," + fmt(s[i][0]) + "," + fmt(s[i][1]) + "," + fmt(s[i][2]) + "\n";
  return out;
}

inline std::string trajectory_csv(const flow::Trajectory& tr) { return trajectory_csv(tr.times, tr.states); }

/// Parses a trajectory CSV. Throws CsvError naming the offending line.
inline TrajectoryRows parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  TrajectoryRows rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != kTrajectoryHeader)
        throw CsvError("line " + std::to_string(lineno) + ": expected header '" + kTrajectoryHeader + "'", lineno);
      header = true;
      continue;
    }
    std::array<double, 4> v{};
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t comma = k < 3 ? line.find(',', pos) : std::string::npos;
      if (k < 3 && comma == std::string::npos)
        throw CsvError("line " + std::to_string(lineno) + ": expected 4 fields", lineno);
      const std::string field = line.substr(pos, k < 3 ? comma - pos : std::string::npos);
      std::size_t used = 0;
      try {
        v[k] = std::stod(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != field.size() || !std::isfinite(v[k]))
        throw CsvError("line " + std::to_string(lineno) + ": bad number '" + field + "'", lineno);
      pos = comma + 1;
    }
    if (!rows.t.empty() && !(v[0] > rows.t.back()))
      throw CsvError("line " + std::to_string(lineno) + ": time must increase", lineno);
    rows.t.push_back(v[0]);
    rows.states.push_back({v[1], v[2], v[3]});
  }
  if (!header) throw CsvError("empty CSV", lineno);
  if (rows.t.empty()) throw CsvError("CSV has no data rows", lineno);
  return rows;
}

/// Rebuilds a trajectory (with vector-field derivatives) from CSV rows.
inline flow::Trajectory trajectory_from_rows(const TrajectoryRows& rows, const lv3::SystemParams& p) {
  flow::Trajectory tr;
  tr.params = p;
  tr.times = rows.t;
  tr.states = rows.states;
  for (const auto& s : rows.states) tr.derivatives.push_back(lv3::rhs(s, p));
  return tr;
}

}  // namespace topsurg::io
