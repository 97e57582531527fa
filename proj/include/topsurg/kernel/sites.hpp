#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "topsurg/kernel/errors.hpp"
#include "topsurg/kernel/invariants.hpp"
#include "topsurg/kernel/one_manifold.hpp"
#include "topsurg/kernel/surface.hpp"

namespace topsurg::kernel {

/// The two arcs (the removed S^0 x D^1) of a 1-dimensional 0-surgery.
struct ArcSite {
  ArcId first = 0;
  ArcId second = 0;
  friend bool operator==(const ArcSite&, const ArcSite&) = default;
};

/// Two disjoint discs (S^0 x D^2) of a 2-dimensional 0-surgery, as triangle
/// index sets.
struct DiscPairSite {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  friend bool operator==(const DiscPairSite&, const DiscPairSite&) = default;
};

/// The annulus (S^1 x D^1) of a 2-dimensional 1-surgery.
struct AnnulusSite {
  std::vector<std::size_t> triangles;
  friend bool operator==(const AnnulusSite&, const AnnulusSite&) = default;
};

/// Combinatorial summary of a set of triangles viewed as a surface with
/// boundary.
struct PatchInfo {
  bool connected = false;
  int euler_characteristic = 0;
  bool simple_boundary = false;  ///< every boundary vertex has boundary degree 2
  std::vector<std::vector<VertexId>> boundary_cycles;
  std::unordered_set<VertexId> vertices;
  std::unordered_set<VertexId> interior_vertices;
};

inline PatchInfo analyze_patch(const Surface& s, const std::vector<std::size_t>& tris) {
  PatchInfo info;
  if (tris.empty()) return info;
  std::unordered_set<std::size_t> in(tris.begin(), tris.end());
  std::unordered_map<Edge, int, EdgeHash> edge_use;
  for (std::size_t t : tris) {
    const auto& tri = s.triangle(t);
    for (int i = 0; i < 3; ++i) {
      info.vertices.insert(tri[i]);
      ++edge_use[Edge::of(tri[i], tri[(i + 1) % 3])];
    }
  }
  info.euler_characteristic =
      static_cast<int>(info.vertices.size()) - static_cast<int>(edge_use.size()) + static_cast<int>(in.size());

  // connectivity through shared edges
  std::vector<std::size_t> order(in.begin(), in.end());
  std::sort(order.begin(), order.end());
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  UnionFind uf(order.size());
  for (std::size_t t : order)
    for (std::size_t n : s.neighbours(t))
      if (in.count(n)) uf.unite(pos[t], pos[n]);
  info.connected = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (uf.find(i) != uf.find(0)) info.connected = false;

  // boundary graph
  std::unordered_map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [e, c] : edge_use) {
    if (c != 1) continue;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  info.simple_boundary = true;
  for (const auto& [v, nb] : adj)
    if (nb.size() != 2) info.simple_boundary = false;
  for (VertexId v : info.vertices)
    if (!adj.count(v)) info.interior_vertices.insert(v);
  if (!info.simple_boundary) return info;

  std::set<VertexId> unvisited;
  for (const auto& [v, nb] : adj) unvisited.insert(v);
  while (!unvisited.empty()) {
    const VertexId start = *unvisited.begin();
    std::vector<VertexId> cyc;
    VertexId prev = -1, cur = start;
    do {
      cyc.push_back(cur);
      unvisited.erase(cur);
      const auto& nb = adj[cur];
      const VertexId next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    } while (cur != start);
    info.boundary_cycles.push_back(std::move(cyc));
  }
  return info;
}

namespace detail {

inline void check_indices(const Surface& s, const std::vector<std::size_t>& tris, const char* what) {
  if (tris.empty()) throw SiteError(std::string(what) + " is empty");
  std::unordered_set<std::size_t> seen;
  for (std::size_t t : tris) {
    if (t >= s.triangle_count())
      throw SiteError(std::string(what) + " references triangle " + std::to_string(t) + " out of range");
    if (!seen.insert(t).second)
      throw SiteError(std::string(what) + " lists triangle " + std::to_string(t) + " twice");
  }
  if (tris.size() >= s.triangle_count()) throw SiteError(std::string(what) + " covers the whole surface");
}

}  // namespace detail

/// Throws SiteError unless `tris` is a disc: connected, chi = 1, one simple
/// boundary cycle.
inline PatchInfo validate_disc(const Surface& s, const std::vector<std::size_t>& tris, const char* what = "disc") {
  detail::check_indices(s, tris, what);
  PatchInfo info = analyze_patch(s, tris);
  if (!info.connected) throw SiteError(std::string(what) + " is not connected");
  if (!info.simple_boundary) throw SiteError(std::string(what) + " has a pinched boundary");
  if (info.euler_characteristic != 1)
    throw SiteError(std::string(what) + " has Euler characteristic " + std::to_string(info.euler_characteristic) +
                    ", expected 1");
  if (info.boundary_cycles.size() != 1)
    throw SiteError(std::string(what) + " has " + std::to_string(info.boundary_cycles.size()) +
                    " boundary cycles, expected 1");
  return info;
}

/// Throws SiteError unless `tris` is an annulus: connected, chi = 0, two
/// simple boundary cycles.
inline PatchInfo validate_annulus(const Surface& s, const AnnulusSite& site) {
  detail::check_indices(s, site.triangles, "annulus");
  PatchInfo info = analyze_patch(s, site.triangles);
  if (!info.connected) throw SiteError("annulus is not connected");
  if (!info.simple_boundary) throw SiteError("annulus has a pinched boundary");
  if (info.euler_characteristic != 0)
    throw SiteError("annulus has Euler characteristic " + std::to_string(info.euler_characteristic) +
                    ", expected 0");
  if (info.boundary_cycles.size() != 2)
    throw SiteError("annulus has " + std::to_string(info.boundary_cycles.size()) + " boundary cycles, expected 2");
  return info;
}

/// Validates both discs and that they are disjoint and share no vertex.
inline std::pair<PatchInfo, PatchInfo> validate_disc_pair(const Surface& s, const DiscPairSite& site) {
  PatchInfo a = validate_disc(s, site.first, "first disc");
  PatchInfo b = validate_disc(s, site.second, "second disc");
  for (VertexId v : a.vertices)
    if (b.vertices.count(v))
      throw SiteError("discs are not disjoint: both contain vertex " + std::to_string(v));
  return {std::move(a), std::move(b)};
}

inline void validate_arc_site(const OneManifold& m, const ArcSite& site) {
  if (!m.contains(site.first)) throw SiteError("arc " + std::to_string(site.first) + " does not exist");
  if (!m.contains(site.second)) throw SiteError("arc " + std::to_string(site.second) + " does not exist");
  if (site.first == site.second) throw SiteError("site arcs must be distinct");
}

}  // namespace topsurg::kernel
