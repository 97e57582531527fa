#pragma once

// Surgery on combinatorial 1- and 2-manifolds.
//
// An m-dimensional n-surgery removes an embedded S^n x D^{m-n} and glues in
// D^{n+1} x S^{m-n-1} along the common boundary S^n x S^{m-n-1}:
//
//   1d 0-surgery: two arcs (S^0 x D^1) are replaced by two new arcs (D^1 x S^0)
//   2d 0-surgery: two discs (S^0 x D^2) are replaced by a cylinder (D^1 x S^1)
//   2d 1-surgery: an annulus (S^1 x D^1) is replaced by two discs (D^2 x S^0)
//
// Each operation also reports the site occupied by the inserted piece, so the
// dual surgery can be applied to it directly.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "topsurg/kernel/errors.hpp"
#include "topsurg/kernel/gluing.hpp"
#include "topsurg/kernel/one_manifold.hpp"
#include "topsurg/kernel/sites.hpp"
#include "topsurg/kernel/surface.hpp"

namespace topsurg::kernel {

/// Maximum number of boundary-edge subdivisions used to equalise the two
/// boundary cycles of a 2-dimensional 0-surgery.
inline constexpr int kMaxBoundarySubdivisions = 64;

struct CurveSurgery {
  OneManifold manifold;
  ArcSite inserted;  ///< one arc of each new connection
};

struct TubeSurgery {
  Surface surface;
  AnnulusSite inserted;  ///< the glued-in cylinder
};

struct CapSurgery {
  Surface surface;
  DiscPairSite inserted;  ///< the two capping discs
};

// ---------------------------------------------------------------------------
// 1-dimensional 0-surgery

/// Removes the two site arcs and reconnects the four free endpoints with two
/// new arcs. With `orientation_flip = false` the endpoints are joined so that
/// a single circle splits into two; with `true` the crossed reconnection keeps
/// one circle. On two different circles both reconnections merge them.
/// The rotation is irrelevant for S^0 boundaries and is ignored.
inline CurveSurgery surgery_1d_0_traced(const OneManifold& m, const ArcSite& site, const GluingMap& g) {
  validate_arc_site(m, site);

  // Endpoint graph: every arc has a tail and a head node.
  std::unordered_map<ArcId, std::pair<int, int>> ends;
  std::vector<ArcId> order;
  int node = 0;
  for (const auto& c : m.cycles()) {
    const int base = node;
    const int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i) {
      ends[c[i]] = {base + (i + k - 1) % k, base + i};
      order.push_back(c[i]);
    }
    node += k;
  }
  for (const auto& c : m.chains()) {
    const int base = node;
    const int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i) {
      ends[c[i]] = {base + i, base + i + 1};
      order.push_back(c[i]);
    }
    node += k + 1;
  }

  const auto [a_tail, a_head] = ends.at(site.first);
  const auto [b_tail, b_head] = ends.at(site.second);
  ends.erase(site.first);
  ends.erase(site.second);
  order.erase(std::remove_if(order.begin(), order.end(),
                             [&](ArcId x) { return x == site.first || x == site.second; }),
              order.end());

  ArcId next_arc = m.max_arc() + 1;
  std::array<ArcId, 2> connection_arc{};
  auto connect = [&](int slot, int u, int v) {
    if (u == v) {
      // A loop would be a one-arc circle; split it through a fresh node.
      const int mid = node++;
      ends[next_arc] = {u, mid};
      order.push_back(next_arc);
      connection_arc[slot] = next_arc++;
      ends[next_arc] = {mid, v};
      order.push_back(next_arc++);
    } else {
      ends[next_arc] = {u, v};
      order.push_back(next_arc);
      connection_arc[slot] = next_arc++;
    }
  };
  if (!g.orientation_flip) {
    connect(0, a_head, b_tail);
    connect(1, b_head, a_tail);
  } else {
    connect(0, a_head, b_head);
    connect(1, a_tail, b_tail);
  }

  // Rebuild components by walking the endpoint graph.
  std::unordered_map<int, std::vector<ArcId>> at_node;
  for (ArcId x : order) {
    at_node[ends[x].first].push_back(x);
    at_node[ends[x].second].push_back(x);
  }
  std::unordered_set<ArcId> used;
  auto other_end = [&](ArcId x, int from) { return ends[x].first == from ? ends[x].second : ends[x].first; };
  auto walk = [&](ArcId start, int from) {
    std::vector<ArcId> seq;
    ArcId cur = start;
    int at = from;
    while (true) {
      seq.push_back(cur);
      used.insert(cur);
      at = other_end(cur, at);
      const auto& here = at_node[at];
      ArcId nxt = -1;
      for (ArcId y : here)
        if (!used.count(y)) nxt = y;
      if (nxt < 0) break;
      cur = nxt;
    }
    return seq;
  };

  std::vector<std::vector<ArcId>> cycles, chains;
  std::vector<int> free_nodes;
  for (const auto& [n, arcs] : at_node)
    if (arcs.size() == 1) free_nodes.push_back(n);
  std::sort(free_nodes.begin(), free_nodes.end());
  for (int n : free_nodes) {
    const ArcId x = at_node[n].front();
    if (used.count(x)) continue;
    chains.push_back(walk(x, n));
  }
  for (ArcId x : order) {
    if (used.count(x)) continue;
    cycles.push_back(walk(x, ends[x].first));
  }

  return {OneManifold(std::move(cycles), std::move(chains)), ArcSite{connection_arc[0], connection_arc[1]}};
}

inline OneManifold surgery_1d_0(const OneManifold& m, const ArcSite& site, const GluingMap& g) {
  return surgery_1d_0_traced(m, site, g).manifold;
}

// ---------------------------------------------------------------------------
// 2-dimensional surgery

namespace detail {

/// Working copy of the triangles left after a site is removed.
struct Remainder {
  std::vector<Triangle> triangles;
  int vertex_count = 0;

  /// Index of the remaining triangle traversing u -> v, or -1.
  [[nodiscard]] int find_directed(VertexId u, VertexId v) const {
    for (std::size_t t = 0; t < triangles.size(); ++t)
      if (traverses(triangles[t], u, v)) return static_cast<int>(t);
    return -1;
  }

  /// Orients a boundary cycle so that each edge c[i] -> c[i+1] is traversed by
  /// a remaining triangle.
  void orient(std::vector<VertexId>& cycle) const {
    if (find_directed(cycle[0], cycle[1]) < 0) std::reverse(cycle.begin(), cycle.end());
    if (find_directed(cycle[0], cycle[1]) < 0) throw SiteError("boundary cycle is not adjacent to the remainder");
  }

  /// Splits boundary edge cycle[i] -> cycle[i+1] with a new vertex.
  void split_boundary_edge(std::vector<VertexId>& cycle, std::size_t i) {
    const VertexId u = cycle[i], v = cycle[(i + 1) % cycle.size()];
    const int t = find_directed(u, v);
    Triangle tri = triangles[static_cast<std::size_t>(t)];
    while (tri[0] != u) std::rotate(tri.begin(), tri.begin() + 1, tri.end());
    const VertexId x = tri[2];
    const VertexId mid = vertex_count++;
    triangles[static_cast<std::size_t>(t)] = {u, mid, x};
    triangles.push_back({mid, v, x});
    cycle.insert(cycle.begin() + static_cast<std::ptrdiff_t>(i + 1), mid);
  }

  VertexId fresh() { return vertex_count++; }

  /// Compacts vertex ids to 0..n-1 in increasing order of the old ids.
  [[nodiscard]] Surface build() const {
    std::set<VertexId> used;
    for (const auto& t : triangles)
      for (VertexId v : t) used.insert(v);
    std::unordered_map<VertexId, VertexId> relabel;
    for (VertexId v : used) relabel.emplace(v, static_cast<VertexId>(relabel.size()));
    std::vector<Triangle> out = triangles;
    for (auto& t : out)
      for (auto& v : t) v = relabel.at(v);
    return Surface(static_cast<int>(used.size()), std::move(out));
  }
};

inline Remainder remove_triangles(const Surface& oriented, const std::unordered_set<std::size_t>& removed) {
  Remainder r;
  r.vertex_count = oriented.vertex_count();
  for (std::size_t t = 0; t < oriented.triangle_count(); ++t)
    if (!removed.count(t)) r.triangles.push_back(oriented.triangle(t));
  return r;
}

/// Glues a band between an outer ring (oriented as the remainder traverses
/// it) and an inner ring given by `inner(i)`; returns nothing, appends
/// triangles. The band is coherent with the remainder along the outer ring and
/// traverses inner(i) -> inner(i+1).
template <class Inner>
void glue_band(std::vector<Triangle>& out, const std::vector<VertexId>& outer, Inner inner) {
  const std::size_t k = outer.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    out.push_back({outer[j], outer[i], inner(i)});
    out.push_back({outer[j], inner(i), inner(j)});
  }
}

inline std::size_t wrap(std::int64_t i, std::size_t k) {
  const auto kk = static_cast<std::int64_t>(k);
  return static_cast<std::size_t>(((i % kk) + kk) % kk);
}

}  // namespace detail

/// 2-dimensional 0-surgery: removes two disjoint discs and glues a cylinder
/// between the two boundary circles. The cylinder has one intermediate ring
/// so it never duplicates an existing edge. If the boundary lengths differ,
/// edges of the shorter boundary are subdivided (at most
/// kMaxBoundarySubdivisions times).
inline TubeSurgery surgery_2d_0_traced(const Surface& s, const DiscPairSite& site, const GluingMap& g) {
  auto [first, second] = validate_disc_pair(s, site);
  const Surface oriented = s.coherently_oriented();
  std::unordered_set<std::size_t> removed(site.first.begin(), site.first.end());
  removed.insert(site.second.begin(), site.second.end());
  detail::Remainder rem = detail::remove_triangles(oriented, removed);

  std::vector<VertexId> b1 = first.boundary_cycles.front();
  std::vector<VertexId> b2 = second.boundary_cycles.front();
  rem.orient(b1);
  rem.orient(b2);

  const std::size_t diff = b1.size() > b2.size() ? b1.size() - b2.size() : b2.size() - b1.size();
  if (diff > static_cast<std::size_t>(kMaxBoundarySubdivisions))
    throw SiteError("boundary lengths " + std::to_string(b1.size()) + " and " + std::to_string(b2.size()) +
                    " differ by more than the subdivision cap");
  auto& shorter = b1.size() < b2.size() ? b1 : b2;
  for (std::size_t n = 0; n < diff; ++n) {
    // Spread the splits around the cycle.
    const std::size_t len = shorter.size();
    rem.split_boundary_edge(shorter, (2 * n) % len);
  }

  const std::size_t k = b1.size();
  const std::int64_t r = g.normalized_rotation(static_cast<std::int64_t>(k));
  std::vector<VertexId> middle(k);
  for (auto& v : middle) v = rem.fresh();

  const std::size_t start = rem.triangles.size();
  detail::glue_band(rem.triangles, b1, [&](std::size_t i) { return middle[i]; });
  detail::glue_band(rem.triangles, middle, [&](std::size_t i) {
    const auto ii = static_cast<std::int64_t>(i);
    return b2[detail::wrap(g.orientation_flip ? r + ii : r - ii, k)];
  });

  TubeSurgery out{rem.build(), {}};
  for (std::size_t t = start; t < out.surface.triangle_count(); ++t) out.inserted.triangles.push_back(t);
  return out;
}

inline Surface surgery_2d_0(const Surface& s, const DiscPairSite& site, const GluingMap& g) {
  return surgery_2d_0_traced(s, site, g).surface;
}

/// 2-dimensional 1-surgery: removes an annulus and caps each of its two
/// boundary circles with a disc (a collar ring, offset by the gluing
/// rotation, coned to a new centre vertex).
inline CapSurgery surgery_2d_1_traced(const Surface& s, const AnnulusSite& site, const GluingMap& g) {
  PatchInfo info = validate_annulus(s, site);
  const Surface oriented = s.coherently_oriented();
  std::unordered_set<std::size_t> removed(site.triangles.begin(), site.triangles.end());
  detail::Remainder rem = detail::remove_triangles(oriented, removed);

  std::array<std::vector<std::size_t>, 2> caps;
  for (std::size_t c = 0; c < 2; ++c) {
    std::vector<VertexId> b = info.boundary_cycles[c];
    rem.orient(b);
    const std::size_t k = b.size();
    const std::int64_t r = g.normalized_rotation(static_cast<std::int64_t>(k));
    std::vector<VertexId> collar(k);
    for (auto& v : collar) v = rem.fresh();
    const VertexId centre = rem.fresh();
    auto ring = [&](std::size_t i) {
      const auto ii = static_cast<std::int64_t>(i);
      return collar[detail::wrap(g.orientation_flip ? r - ii : r + ii, k)];
    };
    const std::size_t start = rem.triangles.size();
    detail::glue_band(rem.triangles, b, ring);
    for (std::size_t i = 0; i < k; ++i) rem.triangles.push_back({ring((i + 1) % k), ring(i), centre});
    for (std::size_t t = start; t < rem.triangles.size(); ++t) caps[c].push_back(t);
  }

  return {rem.build(), DiscPairSite{std::move(caps[0]), std::move(caps[1])}};
}

inline Surface surgery_2d_1(const Surface& s, const AnnulusSite& site, const GluingMap& g) {
  return surgery_2d_1_traced(s, site, g).surface;
}

}  // namespace topsurg::kernel
