#pragma once

#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "topsurg/kernel/one_manifold.hpp"
#include "topsurg/kernel/sites.hpp"
#include "topsurg/kernel/surface.hpp"

namespace topsurg::kernel {

// ---------------------------------------------------------------------------
// Curves

/// One circle made of `n` arcs labelled 0..n-1.
inline OneManifold circle(int n) {
  if (n < 2) throw std::invalid_argument("circle needs n >= 2 arcs");
  std::vector<ArcId> c(static_cast<std::size_t>(n));
  std::iota(c.begin(), c.end(), 0);
  return OneManifold({std::move(c)});
}

/// Two circles with `n` and `m` arcs, labelled consecutively.
inline OneManifold two_circles(int n, int m) {
  if (n < 2 || m < 2) throw std::invalid_argument("two_circles needs n, m >= 2 arcs");
  std::vector<ArcId> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(m));
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), n);
  return OneManifold({std::move(a), std::move(b)});
}

// ---------------------------------------------------------------------------
// Surfaces

/// Boundary of the tetrahedron.
inline Surface sphere() { return Surface(4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}}); }

/// Sphere with a north pole, `rings` parallel rings of `segments` vertices and
/// a south pole. Vertex 0 is the north pole, the last vertex the south pole.
inline Surface banded_sphere(int rings, int segments) {
  if (rings < 1 || segments < 3) throw std::invalid_argument("banded_sphere needs rings >= 1, segments >= 3");
  const int n = segments;
  auto ring = [n](int r, int j) { return 1 + r * n + ((j % n) + n) % n; };
  const int south = 1 + rings * n;
  std::vector<Triangle> t;
  for (int j = 0; j < n; ++j) t.push_back({0, ring(0, j), ring(0, j + 1)});
  for (int r = 0; r + 1 < rings; ++r)
    for (int j = 0; j < n; ++j) {
      t.push_back({ring(r, j), ring(r + 1, j), ring(r + 1, j + 1)});
      t.push_back({ring(r, j), ring(r + 1, j + 1), ring(r, j + 1)});
    }
  for (int j = 0; j < n; ++j) t.push_back({south, ring(rings - 1, j + 1), ring(rings - 1, j)});
  return Surface(south + 1, std::move(t));
}

/// Polar caps of `banded_sphere(rings, segments)`: two antipodal discs.
inline DiscPairSite polar_caps(int rings, int segments) {
  if (rings < 2) throw std::invalid_argument("polar caps are disjoint only for rings >= 2");
  DiscPairSite site;
  const auto n = static_cast<std::size_t>(segments);
  const std::size_t total = 2 * n + 2 * n * static_cast<std::size_t>(rings - 1);
  for (std::size_t j = 0; j < n; ++j) {
    site.first.push_back(j);
    site.second.push_back(total - n + j);
  }
  return site;
}

/// Band of `banded_sphere(rings, segments)` between the two middle rings.
inline AnnulusSite equatorial_annulus(int rings, int segments) {
  if (rings < 2) throw std::invalid_argument("equatorial annulus needs rings >= 2");
  const auto n = static_cast<std::size_t>(segments);
  const std::size_t band = static_cast<std::size_t>((rings - 1) / 2);
  AnnulusSite site;
  const std::size_t first = n + band * 2 * n;
  for (std::size_t k = 0; k < 2 * n; ++k) site.triangles.push_back(first + k);
  return site;
}

/// Minimal 7-vertex triangulation of the torus.
inline Surface torus() {
  std::vector<Triangle> t;
  for (int i = 0; i < 7; ++i) {
    t.push_back({i, (i + 1) % 7, (i + 3) % 7});
    t.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return Surface(7, std::move(t));
}

/// Torus as an n x m quotient grid (n, m >= 3), each square split in two.
inline Surface grid_torus(int n, int m) {
  if (n < 3 || m < 3) throw std::invalid_argument("grid_torus needs n, m >= 3");
  auto v = [n, m](int i, int j) { return ((i % n + n) % n) * m + ((j % m + m) % m); };
  std::vector<Triangle> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      t.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      t.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
    }
  return Surface(n * m, std::move(t));
}

/// Non-separating annulus of `grid_torus(n, m)`: the strip of squares in
/// column `column`.
inline AnnulusSite meridian_annulus(int n, int m, int column = 0) {
  AnnulusSite site;
  const int j = ((column % m) + m) % m;
  for (int i = 0; i < n; ++i) {
    const auto sq = static_cast<std::size_t>(i * m + j);
    site.triangles.push_back(2 * sq);
    site.triangles.push_back(2 * sq + 1);
  }
  return site;
}

/// Closed orientable surface of genus `g`: boundary of a 3 x (2g+1) slab of
/// unit cubes with `g` cubes removed.
inline Surface genus_g(int g) {
  if (g < 0) throw std::invalid_argument("genus must be >= 0");
  using P = std::array<int, 3>;
  const int nx = 2 * g + 1, ny = 3;
  auto solid = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z != 0 || x >= nx || y >= ny) return false;
    return !(y == 1 && x % 2 == 1);
  };
  std::map<P, int> index;
  auto vid = [&](const P& p) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(index.size()));
    return it->second;
  };
  std::vector<Triangle> tris;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      if (!solid(x, y, 0)) continue;
      for (int axis = 0; axis < 3; ++axis)
        for (int side = 0; side < 2; ++side) {
          P nb{x, y, 0};
          nb[axis] += side ? 1 : -1;
          if (solid(nb[0], nb[1], nb[2])) continue;
          // face corners in the plane orthogonal to `axis`
          const int u = (axis + 1) % 3, w = (axis + 2) % 3;
          P base{x, y, 0};
          base[axis] += side;
          std::array<P, 4> c{base, base, base, base};
          c[1][u] += 1;
          c[2][u] += 1;
          c[2][w] += 1;
          c[3][w] += 1;
          // (u, w, axis) is a cyclic permutation of (x, y, z), so this order
          // faces +axis; reverse for the -axis side.
          std::array<int, 4> q{vid(c[0]), vid(c[1]), vid(c[2]), vid(c[3])};
          if (!side) std::swap(q[1], q[3]);
          tris.push_back({q[0], q[1], q[2]});
          tris.push_back({q[0], q[2], q[3]});
        }
    }
  return Surface(static_cast<int>(index.size()), std::move(tris));
}

// ---------------------------------------------------------------------------
// Refinement helpers

/// 1-to-4 midpoint subdivision.
inline Surface subdivide(const Surface& s) {
  std::unordered_map<Edge, int, EdgeHash> mid;
  int next = s.vertex_count();
  auto midpoint = [&](VertexId u, VertexId v) {
    auto [it, inserted] = mid.emplace(Edge::of(u, v), next);
    if (inserted) ++next;
    return it->second;
  };
  std::vector<Triangle> out;
  out.reserve(4 * s.triangle_count());
  for (const auto& t : s.triangles()) {
    const int ab = midpoint(t[0], t[1]);
    const int bc = midpoint(t[1], t[2]);
    const int ca = midpoint(t[2], t[0]);
    out.push_back({t[0], ab, ca});
    out.push_back({ab, t[1], bc});
    out.push_back({ca, bc, t[2]});
    out.push_back({ab, bc, ca});
  }
  return Surface(next, std::move(out));
}

/// Triangles around vertex `v`; always a disc on a closed surface.
inline std::vector<std::size_t> vertex_star(const Surface& s, VertexId v) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < s.triangle_count(); ++t)
    if (has_vertex(s.triangle(t), v)) out.push_back(t);
  return out;
}

/// Disjoint union of two surfaces; vertices of `b` are shifted past `a`.
inline Surface disjoint_union(const Surface& a, const Surface& b) {
  std::vector<Triangle> t = a.triangles();
  for (auto tri : b.triangles()) {
    for (auto& v : tri) v += a.vertex_count();
    t.push_back(tri);
  }
  return Surface(a.vertex_count() + b.vertex_count(), std::move(t));
}

// ---------------------------------------------------------------------------
// Named constructors

enum class StandardKind { circle, two_circles, sphere, torus, genus_g };

/// Builds one of the standard starting manifolds. `n` is the arc count of a
/// circle (or first circle) or the genus; `m` the arc count of the second
/// circle.
inline std::variant<OneManifold, Surface> build_standard(StandardKind kind, int n = 6, int m = 6) {
  switch (kind) {
    case StandardKind::circle: return circle(n);
    case StandardKind::two_circles: return two_circles(n, m);
    case StandardKind::sphere: return sphere();
    case StandardKind::torus: return torus();
    case StandardKind::genus_g: return genus_g(n);
  }
  throw std::invalid_argument("unknown standard kind");
}

}  // namespace topsurg::kernel
