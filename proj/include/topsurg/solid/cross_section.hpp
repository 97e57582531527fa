#pragma once

// Meridional cross-sections of layered solids. A plane through the centre
// meets a sphere layer in one circle, a torus layer (around the axis normal
// to the plane's trace) in two circles, and a pair of spheres in one circle
// each. The central circle of a solid torus meets the plane in two points.
// These sections are compared with the layers of the matching solid
// 1-dimensional 0-surgery, which is the cut one dimension down.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "topsurg/solid/solid_surgery.hpp"

namespace topsurg::solid {

struct LayerSection {
  double radius = 0.0;
  LayerType layer = LayerType::other;
  int circles = 0;           ///< circles in the section
  int section_components = 0;  ///< how many layer components they lie in
  int expected_circles = 0;  ///< circles of the matching 1-dimensional layer
  bool match = false;
};

struct SectionReport {
  SolidKind kind = SolidKind::solid_2d_0;
  std::vector<LayerSection> layers;
  LimitObject limit = LimitObject::point;
  int limit_points = 0;           ///< points in which the limit object meets the plane
  int expected_limit_points = 0;  ///< points of the 1-dimensional limit object
  bool limit_match = false;
  bool match = false;
};

/// Circles in the meridional section of one layer and the number of layer
/// components they belong to.
inline std::pair<int, int> section_circles(LayerType t) {
  switch (t) {
    case LayerType::circle: return {1, 1};
    case LayerType::two_circles: return {2, 2};
    case LayerType::sphere: return {1, 1};
    case LayerType::torus: return {2, 1};
    case LayerType::two_spheres: return {2, 2};
    case LayerType::other: break;
  }
  throw std::invalid_argument("unsupported layer type for cross-sections");
}

inline int section_points(LimitObject l) noexcept {
  switch (l) {
    case LimitObject::point: return 1;
    case LimitObject::circle: return 2;
    case LimitObject::two_points: return 2;
  }
  return 0;
}

inline SectionReport cross_section_check(const SolidFamily& f) {
  if (f.layers.empty()) throw std::invalid_argument("family has no layers");
  // The 1-dimensional counterpart at the same stage: before surgery (limit
  // point) or after the forward surgery.
  SolidFamily ref = ball_family(SolidKind::solid_1d_0, f.layers.size());
  if (f.limit != LimitObject::point) ref = apply_solid_surgery(ref, Direction::forward);

  SectionReport rep;
  rep.kind = f.kind;
  rep.limit = f.limit;
  rep.match = true;
  for (std::size_t i = 0; i < f.layers.size(); ++i) {
    LayerSection s;
    s.radius = f.layers[i].radius;
    s.layer = f.layers[i].type;
    const auto [c, comp] = section_circles(s.layer);
    s.circles = c;
    s.section_components = comp;
    s.expected_circles = ref.layers[i].report.components;
    s.match = s.circles == s.expected_circles;
    rep.match = rep.match && s.match;
    rep.layers.push_back(s);
  }
  rep.limit_points = section_points(f.limit);
  rep.expected_limit_points = section_points(ref.limit);
  rep.limit_match = rep.limit_points == rep.expected_limit_points;
  rep.match = rep.match && rep.limit_match;
  return rep;
}

}  // namespace topsurg::solid
