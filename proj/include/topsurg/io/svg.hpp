#pragma once

// Static SVG plots on a fixed 640x480 canvas. Coordinates are written with
// 12 significant digits so the output is byte-stable for fixed input.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "topsurg/io/format.hpp"
#include "topsurg/lv3/system.hpp"

namespace topsurg::io {

using Vec2 = std::array<double, 2>;

struct Bounds {
  double x0, x1, y0, y1;
};

struct Marker {
  Vec2 at{};
  std::string label;
};

struct SvgPlot {
  std::string title;
  std::string xlabel = "x";
  std::string ylabel = "y";
  std::vector<std::vector<Vec2>> lines;
  std::vector<Marker> markers;
  std::optional<Bounds> bounds;  ///< data bounds; fitted to lines and markers if empty
  bool origin_axes = false;      ///< draw x = 0 and y = 0 when in range
};

inline constexpr int kCanvasWidth = 640;
inline constexpr int kCanvasHeight = 480;
inline constexpr int kMargin = 60;

namespace detail {

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline Bounds fit(const SvgPlot& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto take = [&](const Vec2& p) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  };
  for (const auto& l : plot.lines)
    for (const auto& p : l) take(p);
  for (const auto& m : plot.markers) take(m.at);
  if (!(x0 <= x1)) return {-1, 1, -1, 1};
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-9});
  return {x0 - pad, x1 + pad, y0 - pad, y1 + pad};
}

}  // namespace detail

/// Renders `plot` with equal scaling on both axes, centred in the plot area.
inline std::string render_svg(const SvgPlot& plot) {
  const Bounds b = plot.bounds ? *plot.bounds : detail::fit(plot);
  if (!(b.x1 > b.x0) || !(b.y1 > b.y0)) throw std::invalid_argument("degenerate plot bounds");
  const double w = kCanvasWidth - 2.0 * kMargin, h = kCanvasHeight - 2.0 * kMargin;
  const double scale = std::min(w / (b.x1 - b.x0), h / (b.y1 - b.y0));
  const double ox = kMargin + 0.5 * (w - scale * (b.x1 - b.x0));
  const double oy = kMargin + 0.5 * (h - scale * (b.y1 - b.y0));
  auto sx = [&](double x) { return ox + scale * (x - b.x0); };
  auto sy = [&](double y) { return kCanvasHeight - oy - scale * (y - b.y0); };

  const double left = sx(b.x0), right = sx(b.x1), top = sy(b.y1), bottom = sy(b.y0);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kCanvasWidth) + "\" height=\"" +
       std::to_string(kCanvasHeight) + "\" viewBox=\"0 0 " + std::to_string(kCanvasWidth) + " " +
       std::to_string(kCanvasHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kCanvasWidth) + "\" height=\"" +
       std::to_string(kCanvasHeight) + "\" fill=\"white\"/>\n";
  s += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(right - left) + "\" height=\"" +
       fmt(bottom - top) + "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  if (!plot.title.empty())
    s += "<text x=\"" + std::to_string(kCanvasWidth / 2) + "\" y=\"" + std::to_string(kMargin / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + detail::escape(plot.title) +
         "</text>\n";
  s += "<text x=\"" + fmt(0.5 * (left + right)) + "\" y=\"" + fmt(bottom + 40) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + detail::escape(plot.xlabel) +
       "</text>\n";
  const std::string ly = fmt(0.5 * (top + bottom));
  s += "<text x=\"" + fmt(left - 40) + "\" y=\"" + ly + "\" transform=\"rotate(-90 " + fmt(left - 40) + " " + ly +
       ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + detail::escape(plot.ylabel) +
       "</text>\n";
  // Range labels at the frame corners.
  s += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(bottom + 18) +
       "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(b.x0) + "</text>\n";
  s += "<text x=\"" + fmt(right) + "\" y=\"" + fmt(bottom + 18) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(b.x1) + "</text>\n";
  s += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(bottom) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(b.y0) + "</text>\n";
  s += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(top + 11) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(b.y1) + "</text>\n";

  if (plot.origin_axes) {
    if (b.x0 < 0 && b.x1 > 0)
      s += "<line x1=\"" + fmt(sx(0)) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(sx(0)) + "\" y2=\"" + fmt(bottom) +
           "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
    if (b.y0 < 0 && b.y1 > 0)
      s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(sy(0)) + "\" x2=\"" + fmt(right) + "\" y2=\"" + fmt(sy(0)) +
           "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
  }

  for (const auto& line : plot.lines) {
    if (line.empty()) continue;
    s += "<path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" d=\"";
    for (std::size_t i = 0; i < line.size(); ++i)
      s += (i ? " L" : "M") + fmt(sx(line[i][0])) + " " + fmt(sy(line[i][1]));
    s += "\"/>\n";
  }
  for (const auto& m : plot.markers) {
    s += "<circle cx=\"" + fmt(sx(m.at[0])) + "\" cy=\"" + fmt(sy(m.at[1])) + "\" r=\"4\" fill=\"#c0392b\"/>\n";
    if (!m.label.empty())
      s += "<text x=\"" + fmt(sx(m.at[0]) + 6) + "\" y=\"" + fmt(sy(m.at[1]) - 6) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::escape(m.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

// ---------------------------------------------------------------------------
// Projections of phase space

enum class Projection { xy, xz, yz, iso };

inline Projection parse_projection(const std::string& s) {
  if (s == "xy") return Projection::xy;
  if (s == "xz") return Projection::xz;
  if (s == "yz") return Projection::yz;
  if (s == "iso") return Projection::iso;
  throw std::invalid_argument("unknown projection '" + s + "'");
}

inline Vec2 project(const lv3::State& s, Projection p) {
  switch (p) {
    case Projection::xy: return {s[0], s[1]};
    case Projection::xz: return {s[0], s[2]};
    case Projection::yz: return {s[1], s[2]};
    case Projection::iso: {
      const double c = std::cos(std::numbers::pi / 6), h = 0.5;
      return {c * (s[0] - s[1]), s[2] - h * (s[0] + s[1])};
    }
  }
  return {};
}

inline std::array<std::string, 2> projection_labels(Projection p) {
  switch (p) {
    case Projection::xy: return {"X", "Y"};
    case Projection::xz: return {"X", "Z"};
    case Projection::yz: return {"Y", "Z"};
    case Projection::iso: return {"(X - Y) cos 30", "Z - (X + Y) sin 30"};
  }
  return {};
}

}  // namespace topsurg::io
