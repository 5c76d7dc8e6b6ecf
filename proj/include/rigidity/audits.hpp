#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rigidity/multigraph.hpp"
#include "rigidity/rational.hpp"

namespace rigidity {

/// Visitor for connected vertex sets. Return false to stop the enumeration.
using SubsetVisitor = std::function<bool(std::span<const Vertex>)>;

/// Visits every vertex set S with root in S, |S| <= max_size and S inducing a
/// connected subgraph, exactly once. Only adjacency matters (loops and
/// parallel edges are ignored). Returns the number of sets visited.
std::size_t enumerate_connected_subsets(const Multigraph& g, Vertex root, std::size_t max_size,
                                        const SubsetVisitor& visit);

/// Same enumeration over an explicit adjacency list (distinct neighbours).
std::size_t enumerate_connected_subsets(const std::vector<std::vector<Vertex>>& adjacency,
                                        Vertex root, std::size_t max_size,
                                        const SubsetVisitor& visit);

std::vector<std::vector<Vertex>> collect_connected_subsets(const Multigraph& g, Vertex root,
                                                           std::size_t max_size);

struct ExpansionSpec {
  Rational c;      // in (0,1)
  Rational alpha;  // >= 0
};

enum class AuditMode { exact, sampled };

struct ExpansionAuditOptions {
  AuditMode mode = AuditMode::exact;
  std::size_t sample_budget = 1000;
  std::size_t exact_cap = 20;
  std::uint64_t seed = 0;
};

/// Minimum of |N(U)|/|U| over nonempty U with |U| <= max(1, floor(c|V|)).
/// Sampled mode minimises over random connected sets only, giving an upper
/// bound on the exact value.
Rational vertex_expansion_audit(const Multigraph& g, const Rational& c,
                                const ExpansionAuditOptions& options = {});

bool is_vertex_expander(const Multigraph& g, const ExpansionSpec& spec,
                        const ExpansionAuditOptions& options = {});

struct SpectralReport {
  std::size_t degree = 0;
  double top_eigenvalue = 0.0;
  double second_magnitude = 0.0;
  std::size_t iterations = 0;
  double tolerance_achieved = 0.0;
};

struct SpectralOptions {
  double tolerance = 1e-9;
  std::size_t iteration_cap = 1'000'000;
};

/// max_{i>=2} |lambda_i| of the adjacency matrix of a connected regular
/// multigraph (loops count 2 on the diagonal), by power iteration with A^2 on
/// the complement of the all-ones vector.
SpectralReport second_adjacency_eigenvalue(const Multigraph& g, SpectralOptions options = {});

}  // namespace rigidity
