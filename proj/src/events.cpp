#include "rigidity/events.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rigidity/audits.hpp"
#include "rigidity/error.hpp"

namespace rigidity {

namespace {

// Scratch marks reused across many subsets of one kernel.
class StatsScratch {
 public:
  explicit StatsScratch(const KernelDecomposition& d)
      : d_(d), edge_mark_(d.kernel.edge_count(), 0), vertex_mark_(d.kernel.vertex_count(), 0) {}

  SubsetStats compute(std::span<const Vertex> subset) {
    ++stamp_;
    SubsetStats s;
    s.subset.assign(subset.begin(), subset.end());
    for (Vertex v : subset) vertex_mark_[v] = stamp_;
    for (Vertex v : subset) {
      for (EdgeId e : d_.kernel.incident(v)) {
        if (edge_mark_[e] == stamp_) continue;
        edge_mark_[e] = stamp_;
        ++s.bigD;
        s.bigE += d_.path_length(e);
      }
    }
    // second pass: neighbours outside S, marked with the negated stamp
    const std::int64_t outside = -stamp_;
    for (Vertex v : subset) {
      for (EdgeId e : d_.kernel.incident(v)) {
        const Vertex w = d_.kernel.edge(e).other(v);
        if (vertex_mark_[w] == stamp_ || vertex_mark_[w] == outside) continue;
        vertex_mark_[w] = outside;
        ++s.boundary;
      }
    }
    return s;
  }

 private:
  const KernelDecomposition& d_;
  std::vector<std::int64_t> edge_mark_;
  std::vector<std::int64_t> vertex_mark_;
  std::int64_t stamp_ = 0;
};

void require_not_pure_cycle(const KernelDecomposition& d, const char* who) {
  if (d.pure_cycle) fail(ErrorKind::precondition, std::string(who) + ": decomposition is a pure cycle");
}

void require_event_params(const Rational& beta, std::size_t n_ambient, const char* who) {
  if (beta <= 0 || beta >= 1) fail(ErrorKind::domain, std::string(who) + ": beta must lie in (0,1)");
  if (n_ambient < 2) fail(ErrorKind::domain, std::string(who) + ": n_ambient must be >= 2");
}

// floor((1-beta) k)
std::size_t size_limit(const Rational& beta, std::size_t k) {
  const Rational bound = (1 - beta) * Rational(static_cast<unsigned long>(k));
  const BigInt f = bound.get_num() / bound.get_den();
  return static_cast<std::size_t>(f.get_ui());
}

struct Checker {
  const KernelDecomposition& d;
  StatsScratch scratch;
  std::vector<std::vector<Vertex>> adjacency;
  double per_vertex;  // beta ln n
  std::size_t limit;
  bool truncated;

  Checker(const KernelDecomposition& decomp, const Rational& beta, std::size_t n_ambient,
          std::optional<std::size_t> size_cap)
      : d(decomp), scratch(decomp), adjacency(decomp.kernel.simple_adjacency()) {
    const std::size_t k = d.kernel.vertex_count();
    const std::size_t cap = size_cap ? *size_cap : default_event_D_cap(k);
    const std::size_t natural = size_limit(beta, k);
    limit = std::min(natural, cap);
    truncated = cap < natural;
    per_vertex = to_double(beta) * std::log(static_cast<double>(n_ambient));
  }

  EventDReason violation(const SubsetStats& s) const {
    if (static_cast<double>(s.bigE) > per_vertex * static_cast<double>(s.subset.size()))
      return EventDReason::edge_excess;
    if (s.boundary < 3) return EventDReason::small_boundary;
    return EventDReason::none;
  }

  EventDReport run(Vertex v, const Rational& beta) {
    EventDReport r;
    r.vertex = v;
    r.beta = beta;
    if (v >= d.kernel.vertex_count()) {
      r.reason = EventDReason::not_in_kernel;
      return r;
    }
    for (std::size_t size = 1; size <= limit; ++size) {
      std::optional<SubsetStats> best;
      EventDReason best_reason = EventDReason::none;
      std::size_t visited = 0;
      enumerate_connected_subsets(adjacency, v, size, [&](std::span<const Vertex> s) {
        if (s.size() != size) return true;
        ++visited;
        auto stats = scratch.compute(s);
        const auto why = violation(stats);
        if (why == EventDReason::none) return true;
        std::sort(stats.subset.begin(), stats.subset.end());
        if (!best || stats.subset < best->subset) {
          best = std::move(stats);
          best_reason = why;
        }
        return true;
      });
      r.subsets_examined += visited;
      if (best) {
        r.witness = std::move(best);
        r.reason = best_reason;
        return r;
      }
    }
    r.holds = true;
    r.truncated = truncated;
    return r;
  }
};

}  // namespace

const char* to_string(EventDReason reason) noexcept {
  switch (reason) {
    case EventDReason::none: return "none";
    case EventDReason::not_in_kernel: return "not_in_kernel";
    case EventDReason::edge_excess: return "edge_excess";
    case EventDReason::small_boundary: return "small_boundary";
  }
  return "?";
}

SubsetStats subset_stats(const KernelDecomposition& decomp, std::vector<Vertex> subset) {
  require_not_pure_cycle(decomp, "subset_stats");
  const std::size_t k = decomp.kernel.vertex_count();
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    fail(ErrorKind::validation, "subset_stats: repeated vertex");
  for (Vertex v : subset)
    if (v >= k) fail(ErrorKind::validation, "subset_stats: vertex " + std::to_string(v) + " is not a kernel vertex");
  StatsScratch scratch(decomp);
  return scratch.compute(subset);
}

std::size_t default_event_D_cap(std::size_t kernel_vertices) {
  return kernel_vertices <= 18 ? kernel_vertices : 8;
}

EventDReport event_D_check(const KernelDecomposition& decomp, Vertex v, const Rational& beta,
                           std::size_t n_ambient, std::optional<std::size_t> size_cap) {
  require_not_pure_cycle(decomp, "event_D_check");
  require_event_params(beta, n_ambient, "event_D_check");
  Checker checker(decomp, beta, n_ambient, size_cap);
  return checker.run(v, beta);
}

EventDCensus event_D_census(const KernelDecomposition& decomp, const Rational& beta,
                            std::size_t n_ambient, std::optional<std::size_t> size_cap) {
  require_not_pure_cycle(decomp, "event_D_census");
  require_event_params(beta, n_ambient, "event_D_census");
  Checker checker(decomp, beta, n_ambient, size_cap);
  const std::size_t k = decomp.kernel.vertex_count();
  EventDCensus out;
  out.reports.resize(k);
  // vertex -> report that already holds a violating set through it
  std::vector<std::size_t> covered(k, KernelDecomposition::npos);
  for (Vertex v = 0; v < k; ++v) {
    if (covered[v] != KernelDecomposition::npos) {
      const EventDReport& src = out.reports[covered[v]];
      EventDReport r;
      r.vertex = v;
      r.beta = beta;
      r.witness = src.witness;
      r.reason = src.reason;
      out.reports[v] = std::move(r);
      continue;
    }
    out.reports[v] = checker.run(v, beta);
    const auto& r = out.reports[v];
    if (r.witness) {
      for (Vertex w : r.witness->subset)
        if (covered[w] == KernelDecomposition::npos) covered[w] = v;
    }
  }
  for (const auto& r : out.reports) {
    if (r.holds) out.holding.push_back(r.vertex);
    out.any_truncated = out.any_truncated || r.truncated;
  }
  out.fraction = k == 0 ? Rational(1)
                        : Rational(static_cast<unsigned long>(out.holding.size()), static_cast<unsigned long>(k));
  out.fraction.canonicalize();
  return out;
}

void write_census_csv(std::ostream& out, const EventDCensus& census) {
  out << "vertex,holds,witness_size,truncated\n";
  for (const auto& r : census.reports) {
    out << r.vertex << ',' << (r.holds ? 1 : 0) << ',' << (r.witness ? r.witness->subset.size() : 0) << ','
        << (r.truncated ? 1 : 0) << '\n';
  }
}

}  // namespace rigidity
