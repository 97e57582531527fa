#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topsurg/kernel/errors.hpp"

namespace topsurg::kernel {

using VertexId = int;
using Triangle = std::array<VertexId, 3>;

/// Undirected edge key, smaller endpoint first.
struct Edge {
  VertexId a = 0;
  VertexId b = 0;

  static Edge of(VertexId u, VertexId v) noexcept { return u < v ? Edge{u, v} : Edge{v, u}; }
  [[nodiscard]] std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept { return std::hash<std::uint64_t>{}(e.key()); }
};

/// True when the oriented triangle traverses u -> v.
inline bool traverses(const Triangle& t, VertexId u, VertexId v) noexcept {
  for (int i = 0; i < 3; ++i)
    if (t[i] == u && t[(i + 1) % 3] == v) return true;
  return false;
}

inline bool has_vertex(const Triangle& t, VertexId v) noexcept { return t[0] == v || t[1] == v || t[2] == v; }

/// Closed combinatorial surface: every edge lies on exactly two triangles and
/// the link of every vertex is a single cycle. Validated on construction.
class Surface {
 public:
  Surface() = default;

  Surface(int vertex_count, std::vector<Triangle> triangles)
      : vertex_count_(vertex_count), triangles_(std::move(triangles)) {
    validate();
  }

  [[nodiscard]] int vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_faces_.size(); }
  [[nodiscard]] std::size_t triangle_count() const noexcept { return triangles_.size(); }
  [[nodiscard]] const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  [[nodiscard]] const Triangle& triangle(std::size_t i) const { return triangles_.at(i); }

  /// The two triangles incident to an edge.
  [[nodiscard]] const std::array<std::size_t, 2>& faces_of(Edge e) const { return edge_faces_.at(e); }
  [[nodiscard]] bool has_edge(VertexId u, VertexId v) const { return edge_faces_.count(Edge::of(u, v)) != 0; }

  [[nodiscard]] const std::unordered_map<Edge, std::array<std::size_t, 2>, EdgeHash>& edge_faces() const noexcept {
    return edge_faces_;
  }

  /// Triangles sharing an edge with triangle `t`.
  [[nodiscard]] std::array<std::size_t, 3> neighbours(std::size_t t) const {
    std::array<std::size_t, 3> out{};
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const auto& f = edge_faces_.at(Edge::of(tri[i], tri[(i + 1) % 3]));
      out[i] = f[0] == t ? f[1] : f[0];
    }
    return out;
  }

  /// Copy whose triangles are coherently oriented within every orientable
  /// component. Triangle indices are preserved; non-orientable components
  /// are returned with a best-effort orientation.
  [[nodiscard]] Surface coherently_oriented() const {
    Surface out = *this;
    std::vector<int> state(triangles_.size(), -1);
    for (std::size_t seed = 0; seed < triangles_.size(); ++seed) {
      if (state[seed] != -1) continue;
      state[seed] = 0;
      std::queue<std::size_t> q;
      q.push(seed);
      while (!q.empty()) {
        const std::size_t t = q.front();
        q.pop();
        const Triangle& cur = out.triangles_[t];
        for (int i = 0; i < 3; ++i) {
          const VertexId u = cur[i], v = cur[(i + 1) % 3];
          const auto& f = edge_faces_.at(Edge::of(u, v));
          const std::size_t n = f[0] == t ? f[1] : f[0];
          if (state[n] != -1) continue;
          state[n] = 0;
          if (traverses(out.triangles_[n], u, v)) std::swap(out.triangles_[n][1], out.triangles_[n][2]);
          q.push(n);
        }
      }
    }
    return out;
  }

 private:
  void validate() {
    if (vertex_count_ <= 0) throw ManifoldError("surface needs at least one vertex");
    if (triangles_.empty()) throw ManifoldError("surface needs at least one triangle");
    edge_faces_.clear();
    std::unordered_map<Edge, int, EdgeHash> counts;
    std::vector<std::array<VertexId, 3>> sorted;
    sorted.reserve(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      const auto& tri = triangles_[t];
      for (VertexId v : tri)
        if (v < 0 || v >= vertex_count_)
          throw ManifoldError("triangle " + std::to_string(t) + " references vertex " + std::to_string(v) +
                              " outside [0, " + std::to_string(vertex_count_) + ")");
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
        throw ManifoldError("triangle " + std::to_string(t) + " is degenerate");
      auto s = tri;
      std::sort(s.begin(), s.end());
      sorted.push_back(s);
      for (int i = 0; i < 3; ++i) {
        const Edge e = Edge::of(tri[i], tri[(i + 1) % 3]);
        int& c = counts[e];
        if (c < 2) edge_faces_[e][c] = t;
        ++c;
      }
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ManifoldError("duplicate triangle");
    for (const auto& [e, c] : counts)
      if (c != 2)
        throw ManifoldError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") lies on " +
                            std::to_string(c) + " triangles; a closed surface needs exactly 2");

    // Link of each vertex must be one cycle.
    std::vector<std::vector<std::pair<VertexId, VertexId>>> link(vertex_count_);
    for (const auto& tri : triangles_)
      for (int i = 0; i < 3; ++i) link[tri[i]].emplace_back(tri[(i + 1) % 3], tri[(i + 2) % 3]);
    for (VertexId v = 0; v < vertex_count_; ++v) {
      const auto& edges = link[v];
      if (edges.empty()) throw ManifoldError("vertex " + std::to_string(v) + " is not used by any triangle");
      std::unordered_map<VertexId, std::vector<VertexId>> adj;
      for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      for (const auto& [w, nb] : adj)
        if (nb.size() != 2) throw ManifoldError("link of vertex " + std::to_string(v) + " is not a cycle");
      // walk the cycle
      const VertexId start = edges.front().first;
      VertexId prev = -1, cur = start;
      std::size_t steps = 0;
      do {
        const auto& nb = adj[cur];
        const VertexId next = nb[0] != prev ? nb[0] : nb[1];
        prev = cur;
        cur = next;
        ++steps;
      } while (cur != start && steps <= adj.size());
      if (steps != adj.size())
        throw ManifoldError("link of vertex " + std::to_string(v) + " has more than one cycle");
    }
  }

  int vertex_count_ = 0;
  std::vector<Triangle> triangles_;
  std::unordered_map<Edge, std::array<std::size_t, 2>, EdgeHash> edge_faces_;
};

}  // namespace topsurg::kernel
