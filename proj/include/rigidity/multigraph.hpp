#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rigidity {

using Vertex = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool is_loop() const noexcept { return u == v; }
  Vertex other(Vertex w) const noexcept { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Labelled multigraph on dense vertex ids 0..n-1. Parallel edges are repeated
/// entries, loops are (v,v) and contribute 2 to the degree. Edge order is the
/// construction order and is never changed.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(std::size_t vertex_count, std::vector<Edge> edges,
             std::map<Vertex, std::string> labels = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return n_ == 0; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  std::size_t degree(Vertex v) const { return degree_.at(v); }
  std::size_t max_degree() const noexcept;
  std::size_t min_degree() const noexcept;
  std::size_t degree_sum() const noexcept { return 2 * edges_.size(); }

  /// Edge ids incident to v in edge order; a loop appears once.
  const std::vector<EdgeId>& incident(Vertex v) const { return incidence_.at(v); }

  /// Distinct neighbours of v other than v itself, ascending.
  std::vector<Vertex> neighbors(Vertex v) const;

  /// Distinct-neighbour lists for every vertex (loops and multiplicity dropped).
  std::vector<std::vector<Vertex>> simple_adjacency() const;

  const std::map<Vertex, std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::map<Vertex, std::string> labels_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::vector<std::size_t> degree_;
};

/// Validating constructor used by the IO layer and tests.
Multigraph build_multigraph(std::size_t n,
                            const std::vector<std::pair<Vertex, Vertex>>& edges);

/// A subgraph together with the parent id of each of its vertices.
struct Subgraph {
  Multigraph graph;
  std::vector<Vertex> original;
};

/// Subgraph induced by `keep` (any order; duplicates rejected). Vertex i of
/// the result is keep-sorted[i]; edges keep the parent order; labels follow.
Subgraph induced_subgraph(const Multigraph& g, std::span<const Vertex> keep);

/// Components ordered by their smallest vertex id.
std::vector<Subgraph> connected_components(const Multigraph& g);

bool is_connected(const Multigraph& g);

/// Largest component by vertex count, ties to the smallest minimum vertex id.
/// Empty graph gives an empty subgraph.
Subgraph largest_component(const Multigraph& g);

/// Maximal subgraph of minimum degree >= 2, obtained by repeatedly deleting
/// vertices of degree < 2. Parent ids are kept in `original`.
Subgraph two_core(const Multigraph& g);

/// Edges with exactly one endpoint in `subset`.
std::size_t edge_boundary_count(const Multigraph& g, std::span<const Vertex> subset);

}  // namespace rigidity
