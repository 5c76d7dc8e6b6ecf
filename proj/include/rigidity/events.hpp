#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "rigidity/decomposition.hpp"
#include "rigidity/rational.hpp"

namespace rigidity {

/// Edge accounting of a kernel vertex set S. bigD counts kernel edges meeting
/// S (a loop once), bigE the core edges on their 2-paths, boundary the kernel
/// vertices outside S adjacent to S.
struct SubsetStats {
  std::vector<Vertex> subset;
  std::size_t bigE = 0;
  std::size_t bigD = 0;
  std::size_t boundary = 0;
};

/// S holds kernel ids; any id outside the kernel is a validation error.
SubsetStats subset_stats(const KernelDecomposition& decomp, std::vector<Vertex> subset);

enum class EventDReason { none, not_in_kernel, edge_excess, small_boundary };

const char* to_string(EventDReason reason) noexcept;

struct EventDReport {
  Vertex vertex = 0;
  Rational beta;
  bool holds = false;
  std::optional<SubsetStats> witness;
  EventDReason reason = EventDReason::none;
  /// Sizes above the cap were skipped; holds is then only a bound.
  bool truncated = false;
  std::size_t subsets_examined = 0;
};

/// Subset size limit when no cap is given: every size for kernels with at
/// most 18 vertices, else 8.
std::size_t default_event_D_cap(std::size_t kernel_vertices);

/// Checks connected kernel sets S containing v with
/// |S| <= min(floor((1-beta)|V(K)|), size_cap), smallest sizes first, and
/// returns the lexicographically first violator of the smallest size.
EventDReport event_D_check(const KernelDecomposition& decomp, Vertex v, const Rational& beta,
                           std::size_t n_ambient, std::optional<std::size_t> size_cap = {});

struct EventDCensus {
  std::vector<Vertex> holding;
  Rational fraction;
  bool any_truncated = false;
  std::vector<EventDReport> reports;  // one per kernel vertex
};

/// event_D_check for every kernel vertex. A violating set found for one
/// vertex is reused for each of its members.
EventDCensus event_D_census(const KernelDecomposition& decomp, const Rational& beta,
                            std::size_t n_ambient, std::optional<std::size_t> size_cap = {});

/// Header `vertex,holds,witness_size,truncated`.
void write_census_csv(std::ostream& out, const EventDCensus& census);

}  // namespace rigidity
