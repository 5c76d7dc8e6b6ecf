#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rigidity/decomposition.hpp"
#include "rigidity/embedding.hpp"
#include "rigidity/multigraph.hpp"
#include "rigidity/rational.hpp"

namespace rigidity {

/// One distance-preserving map up to isometry. The representative fixes the
/// smallest vertex r (phi(r) = pos(r)) and has sigma = +1 on the
/// lowest-index non-loop edge at r. Loops carry sigma = +1.
struct RigidMapClass {
  std::vector<Rational> representative;
  std::vector<int> sigma;
  bool injective = true;
  bool trivial = true;
};

struct RigidMapOptions {
  /// Keep only injective maps.
  bool injective_only = true;
  /// Stop after this many classes and clear class_count_exact.
  std::size_t class_cap = std::size_t{1} << 16;
  /// Partial maps alive at once inside one block before giving up.
  std::size_t work_cap = std::size_t{1} << 16;
  /// Longest ear closed by sign subset sums (2^(len/2) table entries).
  std::size_t ear_cap = 44;
  /// Combinations walked while materialising classes across blocks.
  std::size_t product_walk_cap = std::size_t{1} << 22;
  /// Branch-and-bound nodes allowed when intersecting isometric families.
  std::size_t family_node_budget = std::size_t{1} << 20;
};

struct ReconstructionReport {
  /// Sorted by sigma with + before -, so the trivial class comes first.
  std::vector<RigidMapClass> classes;
  bool class_count_exact = true;
  /// Filled when the enumeration is exact and the family search fits its
  /// budget; empty otherwise.
  std::vector<Vertex> largest_set;
  std::vector<std::size_t> per_class_max_isometric_family;
};

/// All rigid-map classes of a connected graph. Precondition error when
/// disconnected; resource error when a block exceeds work_cap or ear_cap.
ReconstructionReport enumerate_rigid_map_classes(const Multigraph& g, const LineEmbedding& emb,
                                                 const RigidMapOptions& options = {});

struct ReconstructibilityResult {
  bool holds = true;
  /// Violating class on the component of U (absent when U spans components:
  /// any translation of one component alone breaks it).
  std::optional<RigidMapClass> witness;
};

/// Indeterminate error if the classes needed could not all be enumerated.
ReconstructibilityResult is_reconstructible(const Multigraph& g, const LineEmbedding& emb,
                                            const std::vector<Vertex>& subset,
                                            const RigidMapOptions& options = {});

/// Maximum reconstructible set, lexicographically smallest among ties.
/// Empty graph gives the empty set.
std::vector<Vertex> largest_reconstructible_set(const Multigraph& g, const LineEmbedding& emb,
                                                const RigidMapOptions& options = {});

struct PathExtensionCount {
  std::uint64_t total = 0;
  std::uint64_t nontrivial = 0;
};

/// Sign vectors s with sum s_i d_i = img_v - img_u where d are the
/// consecutive gaps along u, interior..., v.
PathExtensionCount path_extension_solutions(const Rational& pos_u, const Rational& pos_v,
                                            const Rational& img_u, const Rational& img_v,
                                            const std::vector<Rational>& interior);

struct EventAResult {
  bool holds = true;
  std::optional<RigidMapClass> worst_class;
  std::size_t worst_preserved = 0;
  std::size_t required = 0;
};

/// emb is indexed by core vertices of the decomposition.
EventAResult event_A_check(const KernelDecomposition& decomp, const LineEmbedding& emb,
                           const Rational& c, const RigidMapOptions& options = {});

}  // namespace rigidity
