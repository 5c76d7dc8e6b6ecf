#pragma once

#include <cstddef>
#include <vector>

#include "rigidity/multigraph.hpp"

namespace rigidity {

/// A min-degree-2 core, its kernel multigraph on the degree->=3 vertices and,
/// for every kernel edge, the 2-path of the core it stands for.
struct KernelDecomposition {
  Multigraph core;
  Multigraph kernel;
  /// kernel vertex id -> core vertex id (ascending).
  std::vector<Vertex> kernel_vertices;
  /// Per kernel edge: core vertex sequence from kernel.edge(e).u to .v.
  std::vector<std::vector<Vertex>> twopaths;
  /// Per kernel edge: core edge ids along the 2-path, in path order.
  std::vector<std::vector<EdgeId>> twopath_edges;
  bool pure_cycle = false;

  std::size_t path_length(EdgeId kernel_edge) const { return twopath_edges.at(kernel_edge).size(); }

  /// core vertex -> kernel id, or npos for interior vertices.
  std::vector<std::size_t> core_to_kernel() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct DecomposeOptions {
  /// When false a disconnected core is accepted (every component must contain
  /// a vertex of degree >= 3); used for samples of the contiguity model.
  bool require_connected = true;
};

KernelDecomposition kernel_decompose(const Multigraph& component,
                                     DecomposeOptions options = {});

/// Rebuilds a core from a kernel and per-edge path lengths: core vertices
/// 0..k-1 are the kernel vertices, interior vertices are appended edge by
/// edge. Returns the matching decomposition.
KernelDecomposition assemble_core(const Multigraph& kernel,
                                  const std::vector<std::size_t>& path_lengths);

struct PruneResult {
  /// Decomposition of the pruned core; empty when nothing survives.
  KernelDecomposition decomposition;
  /// pruned core vertex -> core vertex of the input decomposition.
  std::vector<Vertex> core_origin;
  bool empty = true;
};

/// Subcubic pruning of a kernel: delete kernel vertices of degree >= 4,
/// peel degree <= 1, suppress degree 2, keep one largest component (most
/// kernel vertices, then most core vertices, then smallest original id).
PruneResult prune_to_subcubic(const KernelDecomposition& decomposition);

}  // namespace rigidity
