#pragma once

// Independent reference implementations used only by the tests. They share
// no code with the library beyond the lattice and configuration containers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <vector>

#include "fklab/configuration.hpp"
#include "fklab/lattice.hpp"

namespace oracle {

using fklab::Configuration;
using fklab::EdgeId;
using fklab::Lattice;
using fklab::VertexId;

inline std::vector<std::vector<VertexId>> open_adjacency(const Lattice& l, const Configuration& c) {
  std::vector<std::vector<VertexId>> adj(l.vertex_count());
  for (EdgeId e = 0; e < l.edge_count(); ++e)
    if (c.open(e)) {
      adj[l.edge(e).a].push_back(l.edge(e).b);
      adj[l.edge(e).b].push_back(l.edge(e).a);
    }
  return adj;
}

/// Components of omega plus wired classes, by iterative DFS; the classes are
/// realized as extra adjacency between consecutive class members.
inline std::size_t dfs_components(const Lattice& l, const Configuration& c,
                                  const std::vector<std::vector<VertexId>>& classes = {}) {
  auto adj = open_adjacency(l, c);
  for (const auto& cls : classes)
    for (std::size_t i = 1; i < cls.size(); ++i) {
      adj[cls[i - 1]].push_back(cls[i]);
      adj[cls[i]].push_back(cls[i - 1]);
    }
  std::vector<char> seen(l.vertex_count(), 0);
  std::size_t count = 0;
  for (VertexId s = 0; s < l.vertex_count(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<VertexId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return count;
}

/// Partition function by direct summation with DFS component counts.
inline double brute_partition_function(const Lattice& l, double p, double q,
                                       const std::vector<std::vector<VertexId>>& classes = {}) {
  double z = 0.0;
  Configuration c(l.edge_count());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << l.edge_count()); ++m) {
    c.assign_mask(m);
    const double o = static_cast<double>(c.open_count());
    z += std::pow(p, o) * std::pow(1 - p, static_cast<double>(l.edge_count()) - o) *
         std::pow(q, static_cast<double>(dfs_components(l, c, classes)));
  }
  return z;
}

/// Graph distance by plain BFS from `source` to the nearest target.
inline std::size_t bfs_distance(const Lattice& l, VertexId source, const std::vector<VertexId>& targets) {
  std::vector<std::size_t> dist(l.vertex_count(), std::numeric_limits<std::size_t>::max());
  std::vector<char> is_target(l.vertex_count(), 0);
  for (VertexId t : targets) is_target[t] = 1;
  std::queue<VertexId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    if (is_target[v]) return dist[v];
    for (const auto& inc : l.incident(v))
      if (dist[inc.other] == std::numeric_limits<std::size_t>::max()) {
        dist[inc.other] = dist[v] + 1;
        q.push(inc.other);
      }
  }
  return std::numeric_limits<std::size_t>::max();
}

/// Faces of a straight-line planar embedding, by tracing every dart with
/// the rotation system given by the vertex positions.
inline std::size_t trace_faces(const Lattice& l) {
  const std::size_t nd = 2 * l.edge_count();
  auto tail = [&](std::size_t d) { return d % 2 == 0 ? l.edge(d / 2).a : l.edge(d / 2).b; };
  auto head = [&](std::size_t d) { return d % 2 == 0 ? l.edge(d / 2).b : l.edge(d / 2).a; };
  auto angle = [&](std::size_t d) {
    const auto a = l.position(tail(d)), b = l.position(head(d));
    return std::atan2(b[1] - a[1], b[0] - a[0]);
  };
  // outgoing darts of each vertex sorted counterclockwise
  std::vector<std::vector<std::size_t>> out(l.vertex_count());
  for (std::size_t d = 0; d < nd; ++d) out[tail(d)].push_back(d);
  for (auto& o : out) std::sort(o.begin(), o.end(), [&](std::size_t x, std::size_t y) { return angle(x) < angle(y); });
  std::vector<char> used(nd, 0);
  std::size_t faces = 0;
  for (std::size_t d0 = 0; d0 < nd; ++d0) {
    if (used[d0]) continue;
    ++faces;
    std::size_t d = d0;
    while (!used[d]) {
      used[d] = 1;
      // at the head, take the dart following the reverse of d clockwise
      const VertexId v = head(d);
      const std::size_t rev = d ^ 1;
      const auto& o = out[v];
      const auto it = std::find(o.begin(), o.end(), rev);
      const std::size_t idx = static_cast<std::size_t>(it - o.begin());
      d = o[(idx + o.size() - 1) % o.size()];
    }
  }
  return faces;
}

/// Derivative of phi_p(A) at q = 1 as the expected number of pivotal edges.
inline double pivotal_derivative(const Lattice& l, double p, const std::function<bool(const Configuration&)>& a) {
  double total = 0.0;
  Configuration c(l.edge_count());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << l.edge_count()); ++m) {
    c.assign_mask(m);
    const double o = static_cast<double>(c.open_count());
    const double w = std::pow(p, o) * std::pow(1 - p, static_cast<double>(l.edge_count()) - o);
    for (EdgeId e = 0; e < l.edge_count(); ++e) {
      if (c.open(e)) continue;  // count each (config, e) pair once via the closed state
      Configuration up = c;
      up.set(e, true);
      if (a(up) != a(c)) total += w / (1 - p);  // weight of the other edges
    }
  }
  return total;
}

/// Homology rank of omega on a square torus, from cluster counts of omega
/// and of its dual: r = o - V + k + 1 - k*.
inline int homology_rank(const Lattice& torus, const fklab::DualMap& dm, const Configuration& c) {
  const auto k = static_cast<int>(dfs_components(torus, c));
  const auto ks = static_cast<int>(dfs_components(dm.dual, fklab::dual_configuration(c, dm)));
  return static_cast<int>(c.open_count()) - static_cast<int>(torus.vertex_count()) + k + 1 - ks;
}

/// phi(A) under the torus weight p^o (1-p)^c q^(k - r/2), which is exactly
/// self-dual.
inline double tilted_probability(const Lattice& torus, double p, double q,
                                 const std::function<bool(const Configuration&)>& a) {
  const auto dm = fklab::dual_map(torus);
  double z = 0.0, za = 0.0;
  Configuration c(torus.edge_count());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << torus.edge_count()); ++m) {
    c.assign_mask(m);
    const double o = static_cast<double>(c.open_count());
    const double k = static_cast<double>(dfs_components(torus, c));
    const double w = std::pow(p, o) * std::pow(1 - p, static_cast<double>(torus.edge_count()) - o) *
                     std::pow(q, k - 0.5 * homology_rank(torus, dm, c));
    z += w;
    if (a(c)) za += w;
  }
  return za / z;
}

/// Every simple open path inside `inside` from a vertex of `from` to a vertex
/// of `to`, reported through the callback (stops when it returns false).
inline void for_each_open_path(const Lattice& l, const Configuration& c, const std::vector<char>& inside_edge,
                               const std::vector<VertexId>& from, const std::vector<VertexId>& to,
                               const std::function<bool(const std::vector<VertexId>&)>& visit) {
  std::vector<char> is_to(l.vertex_count(), 0), on_path(l.vertex_count(), 0);
  for (VertexId v : to) is_to[v] = 1;
  std::vector<VertexId> path;
  bool stop = false;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (stop) return;
    path.push_back(v);
    on_path[v] = 1;
    if (is_to[v]) {
      if (!visit(path)) stop = true;
    } else {
      for (const auto& inc : l.incident(v)) {
        if (!inside_edge[inc.edge] || !c.open(inc.edge) || on_path[inc.other]) continue;
        dfs(inc.other);
        if (stop) break;
      }
    }
    on_path[v] = 0;
    path.pop_back();
  };
  for (VertexId s : from) {
    dfs(s);
    if (stop) return;
  }
}

}  // namespace oracle
