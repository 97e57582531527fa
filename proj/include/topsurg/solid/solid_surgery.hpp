#pragma once

// Solid surgery on layered balls.
//
// The ball D^{m+1} is layered by concentric spheres S^m_r (0 < r <= 1) around
// a central point. Solid m-dimensional n-surgery performs the same surgery on
// every layer and replaces the central point by a limit object:
//
//   solid_1d_0  discs of circles    point -> two points
//   solid_2d_0  balls of spheres    point -> circle      (spheres become tori)
//   solid_2d_1  balls of spheres    point -> two points  (spheres split in two)
//
// The dual operation undoes each of these. Layers are combinatorial manifolds
// from the kernel; each layer also stores the site of the piece the last
// surgery inserted, which is exactly where the dual surgery acts.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "topsurg/kernel/invariants.hpp"
#include "topsurg/kernel/json_io.hpp"
#include "topsurg/kernel/standard.hpp"
#include "topsurg/kernel/surgery.hpp"

namespace topsurg::solid {

enum class SolidKind { solid_1d_0, solid_2d_0, solid_2d_1 };
enum class Direction { forward, dual };
enum class LimitObject { point, circle, two_points };

constexpr std::string_view to_string(SolidKind k) noexcept {
  switch (k) {
    case SolidKind::solid_1d_0: return "solid_1d_0";
    case SolidKind::solid_2d_0: return "solid_2d_0";
    case SolidKind::solid_2d_1: return "solid_2d_1";
  }
  return "?";
}

constexpr std::string_view to_string(Direction d) noexcept { return d == Direction::forward ? "forward" : "dual"; }

constexpr std::string_view to_string(LimitObject l) noexcept {
  switch (l) {
    case LimitObject::point: return "point";
    case LimitObject::circle: return "circle";
    case LimitObject::two_points: return "two_points";
  }
  return "?";
}

/// Homeomorphism type of a layer.
enum class LayerType { circle, two_circles, sphere, torus, two_spheres, other };

constexpr std::string_view to_string(LayerType t) noexcept {
  switch (t) {
    case LayerType::circle: return "circle";
    case LayerType::two_circles: return "two_circles";
    case LayerType::sphere: return "sphere";
    case LayerType::torus: return "torus";
    case LayerType::two_spheres: return "two_spheres";
    case LayerType::other: return "other";
  }
  return "?";
}

using Site = std::variant<kernel::ArcSite, kernel::DiscPairSite, kernel::AnnulusSite>;

struct Layer {
  double radius = 1.0;
  kernel::Complex manifold;
  kernel::InvariantReport report;
  LayerType type = LayerType::other;
  std::optional<Site> inserted;  ///< site of the piece glued in by the last surgery
};

struct SolidFamily {
  SolidKind kind = SolidKind::solid_2d_0;
  std::vector<Layer> layers;
  LimitObject limit = LimitObject::point;
};

inline LayerType classify_layer(const kernel::Complex& c, const kernel::InvariantReport& r) {
  if (std::holds_alternative<kernel::OneManifold>(c)) {
    if (r.components == 1) return LayerType::circle;
    if (r.components == 2) return LayerType::two_circles;
    return LayerType::other;
  }
  if (!r.orientable || !r.closed) return LayerType::other;
  if (r.components == 1 && r.euler_characteristic == 2) return LayerType::sphere;
  if (r.components == 1 && r.euler_characteristic == 0) return LayerType::torus;
  if (r.components == 2 && r.euler_characteristic == 4) return LayerType::two_spheres;
  return LayerType::other;
}

inline Layer make_layer(double radius, kernel::Complex c, std::optional<Site> inserted = std::nullopt) {
  Layer l;
  l.radius = radius;
  l.report = kernel::invariants(c);
  l.type = classify_layer(c, l.report);
  l.manifold = std::move(c);
  l.inserted = std::move(inserted);
  return l;
}

// Layer meshes: circles of 8 arcs, spheres with 3 rings of 6 vertices.
inline constexpr int kCircleArcs = 8;
inline constexpr int kSphereRings = 3;
inline constexpr int kSphereSegments = 6;

/// Radii r_i = i / n for i = 1..n.
inline std::vector<double> layer_radii(std::size_t n) {
  if (n < 1) throw std::invalid_argument("n_layers must be at least 1");
  std::vector<double> r;
  for (std::size_t i = 1; i <= n; ++i) r.push_back(static_cast<double>(i) / static_cast<double>(n));
  r.back() = 1.0;
  return r;
}

/// The layered ball the forward surgery of `kind` starts from.
inline SolidFamily ball_family(SolidKind kind, std::size_t n_layers) {
  SolidFamily f;
  f.kind = kind;
  f.limit = LimitObject::point;
  for (double r : layer_radii(n_layers)) {
    if (kind == SolidKind::solid_1d_0)
      f.layers.push_back(make_layer(r, kernel::circle(kCircleArcs)));
    else
      f.layers.push_back(make_layer(r, kernel::banded_sphere(kSphereRings, kSphereSegments)));
  }
  return f;
}

inline LimitObject forward_limit(SolidKind k) noexcept {
  return k == SolidKind::solid_2d_0 ? LimitObject::circle : LimitObject::two_points;
}

/// Applies one layerwise surgery plus the limit rule. Forward surgery expects
/// the ball layering; dual surgery expects the output of a forward surgery
/// (it acts on the recorded inserted sites).
inline SolidFamily apply_solid_surgery(const SolidFamily& in, Direction dir) {
  if (in.layers.empty()) throw std::invalid_argument("family has no layers");
  const LimitObject expected = dir == Direction::forward ? LimitObject::point : forward_limit(in.kind);
  if (in.limit != expected)
    throw std::invalid_argument(std::string("limit object must be ") + std::string(to_string(expected)));

  SolidFamily out;
  out.kind = in.kind;
  out.limit = dir == Direction::forward ? forward_limit(in.kind) : LimitObject::point;
  const kernel::GluingMap g = kernel::GluingMap::standard();

  for (const Layer& layer : in.layers) {
    if (dir == Direction::dual && !layer.inserted)
      throw std::invalid_argument("dual surgery needs the inserted site of every layer");
    switch (in.kind) {
      case SolidKind::solid_1d_0: {
        const auto& m = std::get<kernel::OneManifold>(layer.manifold);
        // Two opposite arcs of the circle, or the two inserted arcs.
        const kernel::ArcSite site = dir == Direction::forward ? kernel::ArcSite{1, 1 + kCircleArcs / 2}
                                                               : std::get<kernel::ArcSite>(*layer.inserted);
        auto res = kernel::surgery_1d_0_traced(m, site, g);
        out.layers.push_back(make_layer(layer.radius, std::move(res.manifold), Site{res.inserted}));
        break;
      }
      case SolidKind::solid_2d_0: {
        const auto& s = std::get<kernel::Surface>(layer.manifold);
        if (dir == Direction::forward) {
          auto res = kernel::surgery_2d_0_traced(s, kernel::polar_caps(kSphereRings, kSphereSegments), g);
          out.layers.push_back(make_layer(layer.radius, std::move(res.surface), Site{res.inserted}));
        } else {
          auto res = kernel::surgery_2d_1_traced(s, std::get<kernel::AnnulusSite>(*layer.inserted), g);
          out.layers.push_back(make_layer(layer.radius, std::move(res.surface), Site{res.inserted}));
        }
        break;
      }
      case SolidKind::solid_2d_1: {
        const auto& s = std::get<kernel::Surface>(layer.manifold);
        if (dir == Direction::forward) {
          auto res = kernel::surgery_2d_1_traced(s, kernel::equatorial_annulus(kSphereRings, kSphereSegments), g);
          out.layers.push_back(make_layer(layer.radius, std::move(res.surface), Site{res.inserted}));
        } else {
          auto res = kernel::surgery_2d_0_traced(s, std::get<kernel::DiscPairSite>(*layer.inserted), g);
          out.layers.push_back(make_layer(layer.radius, std::move(res.surface), Site{res.inserted}));
        }
        break;
      }
    }
  }
  return out;
}

/// Input and output families of solid surgery of `kind`. The dual starts from
/// the output of the forward surgery.
inline std::pair<SolidFamily, SolidFamily> solid_surgery(SolidKind kind, std::size_t n_layers, Direction dir) {
  SolidFamily in = ball_family(kind, n_layers);
  if (dir == Direction::dual) in = apply_solid_surgery(in, Direction::forward);
  SolidFamily out = apply_solid_surgery(in, dir);
  return {std::move(in), std::move(out)};
}

}  // namespace topsurg::solid
