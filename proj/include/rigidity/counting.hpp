#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "rigidity/multigraph.hpp"
#include "rigidity/rational.hpp"

namespace rigidity {

enum class BoundKind { subgraphs, partitions, spanning_trees };

/// Parameters for the closed-form counting bounds. When `graph` is set the
/// degree and size parameters are read from it (unless given explicitly) and
/// `want_exact` adds a brute-force count.
struct BoundQuery {
  BoundKind kind = BoundKind::spanning_trees;
  /// Maximum degree; 0 means "take it from graph".
  std::size_t max_degree = 0;
  /// subgraphs: number of vertices of the counted sets (n+1 in the bound
  /// (e(D-1))^n). partitions: |V(K)|. 0 means "take it from graph".
  std::size_t size = 0;
  /// subgraphs only: count every size 1..size and sum the per-size bounds.
  bool cumulative = false;
  /// partitions only.
  Rational c;
  std::optional<Multigraph> graph;
  Vertex root = 0;
  bool want_exact = false;
  std::size_t exact_cap = 10;
};

struct BoundResult {
  double bound = 0.0;      // may be +inf when the value overflows a double
  double log_bound = 0.0;  // natural log of the bound
  std::optional<BigInt> exact;
};

/// Evaluates the requested bound. Raises precondition errors naming the
/// violated hypothesis (D >= 3 for subgraphs, D <= |V|^c/10 for partitions),
/// a size error when an exact count exceeds exact_cap vertices, and an
/// indeterminate error if an exact count ever exceeds its bound.
BoundResult combinatorial_bounds(const BoundQuery& query);

/// Number of spanning trees (matrix-tree theorem, exact; parallel edges
/// counted with multiplicity, loops ignored). A single vertex has one.
BigInt count_spanning_trees(const Multigraph& g);

/// Number of partitions of V(g) into parts that each induce a connected
/// subgraph. Only adjacency matters. Limited to 24 vertices.
BigInt count_connected_partitions(const Multigraph& g);

/// Exact check of D <= k^c / 10 for rational c.
bool partition_hypothesis_holds(std::size_t max_degree, std::size_t k, const Rational& c);

}  // namespace rigidity
