#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "rigidity/multigraph.hpp"
#include "rigidity/rng.hpp"

namespace testsupport {

using rigidity::Multigraph;
using rigidity::Vertex;

inline Multigraph graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& e) {
  return rigidity::build_multigraph(n, e);
}

inline Multigraph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return graph(n, e);
}

inline Multigraph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u) e.push_back({u, (u + 1) % n});
  return graph(n, e);
}

inline Multigraph path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return graph(n, e);
}

// outer 0..4, spokes i -- i+5, inner pentagram
inline std::vector<std::pair<Vertex, Vertex>> petersen_edges() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return e;
}

inline Multigraph petersen() { return graph(10, petersen_edges()); }

// u=0, v=1; interiors: {2}, {3}, {4,5}
inline Multigraph theta() {
  return graph(6, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}});
}

/// Simple graph on n vertices with each pair present with probability p.
inline Multigraph random_graph(std::size_t n, double p, rigidity::Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.push_back({u, v});
  return graph(n, e);
}

/// Random multigraph with loops and parallel edges.
inline Multigraph random_multigraph(std::size_t n, std::size_t m, rigidity::Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 0; i < m; ++i) e.push_back({rng.below(n), rng.below(n)});
  return graph(n, e);
}

/// Graph from the bits of `mask` over the pairs (u<v) in lexicographic order.
inline Multigraph from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::pair<Vertex, Vertex>> e;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) e.push_back({u, v});
  return graph(n, e);
}

}  // namespace testsupport
