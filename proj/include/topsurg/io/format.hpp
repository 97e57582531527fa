#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace topsurg::io {

/// Significant digits of every number written by the tools.
inline constexpr int kDigits = 12;

/// `x` printed with 12 significant digits ("%.12g"); negative zero prints as 0.
inline std::string fmt(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kDigits, x);
  return buf;
}

/// `x` rounded to 12 significant digits, so that JSON output (which prints
/// the shortest round-trip form) carries at most 12 digits.
inline double round_sig(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(fmt(x));
}

/// Writes `content` to a temporary file next to `path` and renames it into
/// place, so readers never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (!fs::is_directory(dir)) throw std::runtime_error("output directory does not exist: " + dir.string());
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place: " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace topsurg::io
