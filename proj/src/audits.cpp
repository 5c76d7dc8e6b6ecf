#include "rigidity/audits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "rigidity/error.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

namespace {

class SubsetEnumerator {
 public:
  SubsetEnumerator(const std::vector<std::vector<Vertex>>& adj, std::size_t max_size,
                   const SubsetVisitor& visit)
      : adj_(adj), max_size_(max_size), visit_(visit), mark_(adj.size(), 0) {}

  std::size_t run(Vertex root) {
    mark_[root] = 1;
    current_.push_back(root);
    std::vector<Vertex> ext;
    for (Vertex w : adj_[root]) {
      if (mark_[w] == 0) {
        mark_[w] = 2;
        ext.push_back(w);
      }
    }
    recurse(ext);
    return count_;
  }

 private:
  bool recurse(const std::vector<Vertex>& ext) {
    ++count_;
    if (!visit_(current_)) return false;
    if (current_.size() >= max_size_) return true;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      const Vertex u = ext[i];
      std::vector<Vertex> next(ext.begin() + static_cast<std::ptrdiff_t>(i) + 1, ext.end());
      std::vector<Vertex> added;
      for (Vertex w : adj_[u]) {
        if (mark_[w] == 0) {
          mark_[w] = 2;
          added.push_back(w);
          next.push_back(w);
        }
      }
      mark_[u] = 1;
      current_.push_back(u);
      const bool go_on = recurse(next);
      current_.pop_back();
      mark_[u] = 2;
      for (Vertex w : added) mark_[w] = 0;
      if (!go_on) return false;
    }
    return true;
  }

  const std::vector<std::vector<Vertex>>& adj_;
  std::size_t max_size_;
  const SubsetVisitor& visit_;
  std::vector<char> mark_;
  std::vector<Vertex> current_;
  std::size_t count_ = 0;
};

}  // namespace

std::size_t enumerate_connected_subsets(const std::vector<std::vector<Vertex>>& adjacency,
                                        Vertex root, std::size_t max_size,
                                        const SubsetVisitor& visit) {
  if (root >= adjacency.size()) fail(ErrorKind::validation, "enumerate_connected_subsets: bad root");
  if (max_size == 0) fail(ErrorKind::validation, "enumerate_connected_subsets: max_size must be >= 1");
  SubsetEnumerator en(adjacency, max_size, visit);
  return en.run(root);
}

std::size_t enumerate_connected_subsets(const Multigraph& g, Vertex root, std::size_t max_size,
                                        const SubsetVisitor& visit) {
  const auto adj = g.simple_adjacency();
  return enumerate_connected_subsets(adj, root, max_size, visit);
}

std::vector<std::vector<Vertex>> collect_connected_subsets(const Multigraph& g, Vertex root,
                                                           std::size_t max_size) {
  std::vector<std::vector<Vertex>> out;
  enumerate_connected_subsets(g, root, max_size, [&](std::span<const Vertex> s) {
    std::vector<Vertex> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
    return true;
  });
  return out;
}

namespace {

std::size_t allowed_size(std::size_t n, const Rational& c) {
  Rational bound = c * static_cast<unsigned long>(n);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  const std::size_t m = fl.get_ui();
  return std::max<std::size_t>(1, std::min(m, n));
}

// ratio a/b < c/d with positive denominators
bool less_ratio(std::size_t a, std::size_t b, std::size_t c, std::size_t d) { return a * d < c * b; }

}  // namespace

Rational vertex_expansion_audit(const Multigraph& g, const Rational& c,
                                const ExpansionAuditOptions& options) {
  if (c <= 0 || c >= 1) fail(ErrorKind::domain, "vertex_expansion_audit: c must lie in (0,1)");
  const std::size_t n = g.vertex_count();
  if (n == 0) fail(ErrorKind::precondition, "vertex_expansion_audit: empty graph");
  const std::size_t m = allowed_size(n, c);
  const auto adj = g.simple_adjacency();

  std::size_t best_num = 0, best_den = 0;
  auto consider = [&](std::size_t num, std::size_t den) {
    if (best_den == 0 || less_ratio(num, den, best_num, best_den)) {
      best_num = num;
      best_den = den;
    }
  };

  if (options.mode == AuditMode::exact) {
    if (n > options.exact_cap || n > 30) {
      fail(ErrorKind::size, "vertex_expansion_audit: exact mode limited to " +
                                std::to_string(options.exact_cap) + " vertices, got " +
                                std::to_string(n));
    }
    std::vector<std::uint32_t> nb_mask(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex w : adj[v]) nb_mask[v] |= 1u << w;
    }
    const std::uint32_t full = static_cast<std::uint32_t>((1ull << n) - 1);
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const std::uint32_t low = mask & (~mask + 1);
      reach[mask] = reach[mask ^ low] | nb_mask[std::countr_zero(low)];
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size > m) continue;
      const auto boundary = static_cast<std::size_t>(std::popcount(reach[mask] & ~mask));
      consider(boundary, size);
    }
  } else {
    Rng rng(options.seed);
    for (std::size_t s = 0; s < options.sample_budget; ++s) {
      const std::size_t target = 1 + rng.below(m);
      std::vector<char> in(n, 0);
      std::vector<Vertex> members{static_cast<Vertex>(rng.below(n))};
      in[members[0]] = 1;
      std::vector<Vertex> frontier;
      auto grow_frontier = [&](Vertex v) {
        for (Vertex w : adj[v]) {
          if (!in[w] && std::find(frontier.begin(), frontier.end(), w) == frontier.end()) {
            frontier.push_back(w);
          }
        }
      };
      grow_frontier(members[0]);
      while (members.size() < target && !frontier.empty()) {
        const std::size_t pick = rng.below(frontier.size());
        const Vertex v = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        in[v] = 1;
        members.push_back(v);
        grow_frontier(v);
      }
      std::vector<char> nb(n, 0);
      std::size_t boundary = 0;
      for (Vertex v : members) {
        for (Vertex w : adj[v]) {
          if (!in[w] && !nb[w]) {
            nb[w] = 1;
            ++boundary;
          }
        }
      }
      consider(boundary, members.size());
    }
  }
  Rational alpha(static_cast<unsigned long>(best_num), static_cast<unsigned long>(best_den));
  alpha.canonicalize();
  return alpha;
}

bool is_vertex_expander(const Multigraph& g, const ExpansionSpec& spec,
                        const ExpansionAuditOptions& options) {
  if (spec.alpha < 0) fail(ErrorKind::domain, "is_vertex_expander: alpha must be >= 0");
  return vertex_expansion_audit(g, spec.c, options) >= spec.alpha;
}

SpectralReport second_adjacency_eigenvalue(const Multigraph& g, SpectralOptions options) {
  const std::size_t n = g.vertex_count();
  if (n == 0) fail(ErrorKind::precondition, "second_adjacency_eigenvalue: empty graph");
  const std::size_t d = g.degree(0);
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != d) {
      fail(ErrorKind::precondition, "second_adjacency_eigenvalue: graph is not regular");
    }
  }
  if (!is_connected(g)) fail(ErrorKind::precondition, "second_adjacency_eigenvalue: graph is disconnected");

  SpectralReport report;
  report.degree = d;
  report.top_eigenvalue = static_cast<double>(d);
  if (n == 1) return report;

  // Weighted adjacency: (neighbour, multiplicity); a loop adds 2 on the diagonal.
  std::vector<std::vector<std::pair<Vertex, double>>> adj(n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      adj[e.u].push_back({e.u, 2.0});
    } else {
      adj[e.u].push_back({e.v, 1.0});
      adj[e.v].push_back({e.u, 1.0});
    }
  }
  auto multiply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (Vertex v = 0; v < n; ++v) {
      double s = 0.0;
      for (const auto& [w, weight] : adj[v]) s += weight * x[w];
      y[v] = s;
    }
  };
  auto project = [&](std::vector<double>& x) {
    double mean = 0.0;
    for (double xi : x) mean += xi;
    mean /= static_cast<double>(n);
    for (double& xi : x) xi -= mean;
  };
  auto norm = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
  };

  Rng rng(0x5EED5EEDULL);
  std::vector<double> x(n), y(n), z(n);
  for (double& xi : x) xi = rng.uniform01() - 0.5;
  project(x);
  double nx = norm(x);
  for (double& xi : x) xi /= nx;

  for (std::size_t it = 1; it <= options.iteration_cap; ++it) {
    multiply(x, y);
    project(y);
    multiply(y, z);
    project(z);
    double theta = 0.0;
    for (Vertex v = 0; v < n; ++v) theta += y[v] * y[v];
    double residual = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      const double r = z[v] - theta * x[v];
      residual += r * r;
    }
    residual = std::sqrt(residual);
    const double lambda = std::sqrt(std::max(theta, 0.0));
    const double err = lambda > 0.0 ? std::min(std::sqrt(residual), residual / lambda)
                                    : std::sqrt(residual);
    if (err <= options.tolerance) {
      report.second_magnitude = lambda;
      report.iterations = it;
      report.tolerance_achieved = err;
      return report;
    }
    const double nz = norm(z);
    if (nz == 0.0) {
      report.second_magnitude = 0.0;
      report.iterations = it;
      report.tolerance_achieved = 0.0;
      return report;
    }
    for (Vertex v = 0; v < n; ++v) x[v] = z[v] / nz;
  }
  fail(ErrorKind::convergence, "second_adjacency_eigenvalue: no convergence within " +
                                   std::to_string(options.iteration_cap) + " iterations");
}

}  // namespace rigidity
