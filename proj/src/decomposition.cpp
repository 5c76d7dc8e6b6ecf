#include "rigidity/decomposition.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "rigidity/error.hpp"

namespace rigidity {

std::vector<std::size_t> KernelDecomposition::core_to_kernel() const {
  std::vector<std::size_t> map(core.vertex_count(), npos);
  for (std::size_t k = 0; k < kernel_vertices.size(); ++k) map[kernel_vertices[k]] = k;
  return map;
}

KernelDecomposition kernel_decompose(const Multigraph& component, DecomposeOptions options) {
  const std::size_t n = component.vertex_count();
  if (n == 0) fail(ErrorKind::precondition, "kernel_decompose: empty graph");
  if (component.min_degree() < 2) {
    fail(ErrorKind::precondition, "kernel_decompose: minimum degree is " +
                                      std::to_string(component.min_degree()) + " < 2");
  }
  if (options.require_connected && !is_connected(component)) {
    fail(ErrorKind::precondition, "kernel_decompose: input is disconnected");
  }

  KernelDecomposition out;
  out.core = component;
  std::vector<std::size_t> kernel_id(n, KernelDecomposition::npos);
  for (Vertex v = 0; v < n; ++v) {
    if (component.degree(v) >= 3) {
      kernel_id[v] = out.kernel_vertices.size();
      out.kernel_vertices.push_back(v);
    }
  }
  if (out.kernel_vertices.empty()) {
    if (!options.require_connected && n > 0 && !is_connected(component)) {
      fail(ErrorKind::precondition, "kernel_decompose: component without a degree->=3 vertex");
    }
    out.pure_cycle = true;
    return out;
  }

  std::vector<char> used(component.edge_count(), 0);
  std::vector<char> visited(n, 0);
  std::vector<Edge> kernel_edges;
  for (Vertex start : out.kernel_vertices) {
    visited[start] = 1;
    for (EdgeId first : component.incident(start)) {
      if (used[first]) continue;
      std::vector<Vertex> path{start};
      std::vector<EdgeId> path_edges;
      Vertex cur = start;
      EdgeId via = first;
      while (true) {
        used[via] = 1;
        const Vertex next = component.edge(via).other(cur);
        path.push_back(next);
        path_edges.push_back(via);
        visited[next] = 1;
        if (kernel_id[next] != KernelDecomposition::npos) break;
        const auto& inc = component.incident(next);
        const EdgeId onward = inc[0] == via ? inc[1] : inc[0];
        cur = next;
        via = onward;
      }
      kernel_edges.push_back({kernel_id[path.front()], kernel_id[path.back()]});
      out.twopaths.push_back(std::move(path));
      out.twopath_edges.push_back(std::move(path_edges));
    }
  }
  if (std::find(visited.begin(), visited.end(), 0) != visited.end()) {
    fail(ErrorKind::precondition, "kernel_decompose: component without a degree->=3 vertex");
  }
  out.kernel = Multigraph(out.kernel_vertices.size(), std::move(kernel_edges));
  return out;
}

KernelDecomposition assemble_core(const Multigraph& kernel,
                                  const std::vector<std::size_t>& path_lengths) {
  if (path_lengths.size() != kernel.edge_count()) {
    fail(ErrorKind::validation, "assemble_core: one path length per kernel edge required");
  }
  KernelDecomposition out;
  const std::size_t k = kernel.vertex_count();
  std::size_t next = k;
  std::vector<Edge> core_edges;
  for (EdgeId e = 0; e < kernel.edge_count(); ++e) {
    const std::size_t len = path_lengths[e];
    if (len == 0) fail(ErrorKind::validation, "assemble_core: path length must be >= 1");
    std::vector<Vertex> path{kernel.edge(e).u};
    for (std::size_t i = 1; i < len; ++i) path.push_back(next++);
    path.push_back(kernel.edge(e).v);
    std::vector<EdgeId> ids;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      ids.push_back(core_edges.size());
      core_edges.push_back({path[i], path[i + 1]});
    }
    out.twopaths.push_back(std::move(path));
    out.twopath_edges.push_back(std::move(ids));
  }
  out.core = Multigraph(next, std::move(core_edges));
  out.kernel = kernel;
  out.kernel_vertices.resize(k);
  for (Vertex v = 0; v < k; ++v) out.kernel_vertices[v] = v;
  out.pure_cycle = k == 0;
  return out;
}

namespace {

struct WorkEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<Vertex> path;  // core vertices from a to b
  bool alive = true;
};

class PruneState {
 public:
  explicit PruneState(const KernelDecomposition& d) : k_(d.kernel.vertex_count()) {
    alive_.assign(k_, 1);
    incident_.assign(k_, {});
    for (EdgeId e = 0; e < d.kernel.edge_count(); ++e) {
      add_edge(d.kernel.edge(e).u, d.kernel.edge(e).v, d.twopaths[e]);
    }
  }

  std::size_t degree(std::size_t v) const {
    std::size_t deg = 0;
    for (std::size_t e : incident_[v]) {
      if (!edges_[e].alive) continue;
      deg += edges_[e].a == edges_[e].b ? 2 : 1;
    }
    return deg;
  }

  void kill_vertex(std::size_t v) {
    alive_[v] = 0;
    for (std::size_t e : incident_[v]) edges_[e].alive = false;
  }

  // P1
  void delete_high_degree() {
    std::vector<std::size_t> doomed;
    for (std::size_t v = 0; v < k_; ++v) {
      if (degree(v) >= 4) doomed.push_back(v);
    }
    for (std::size_t v : doomed) kill_vertex(v);
  }

  // P2
  void peel() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < k_; ++v) {
        if (alive_[v] && degree(v) <= 1) {
          kill_vertex(v);
          changed = true;
        }
      }
    }
  }

  // P3
  void suppress() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t w = 0; w < k_; ++w) {
        if (!alive_[w] || degree(w) != 2) continue;
        std::vector<std::size_t> ends;
        for (std::size_t e : incident_[w]) {
          if (edges_[e].alive) ends.push_back(e);
        }
        if (ends.size() != 2) continue;  // a lone loop: isolated cycle
        std::vector<Vertex> left = oriented_to(ends[0], w);   // ... -> w
        std::vector<Vertex> right = oriented_to(ends[1], w);  // ... -> w
        std::reverse(right.begin(), right.end());             // w -> ...
        const std::size_t u = other_end(ends[0], w);
        const std::size_t v = other_end(ends[1], w);
        left.insert(left.end(), right.begin() + 1, right.end());
        edges_[ends[0]].alive = false;
        edges_[ends[1]].alive = false;
        alive_[w] = 0;
        add_edge(u, v, std::move(left));
        changed = true;
      }
    }
  }

  // P4: components ranked by (kernel vertices, core vertices, -min core id).
  std::vector<Vertex> largest_component_core_vertices() const {
    std::vector<std::size_t> comp(k_, npos);
    std::vector<Vertex> best_vertices;
    std::tuple<std::size_t, std::size_t, long long> best_key{0, 0, 0};
    bool have_best = false;
    for (std::size_t s = 0; s < k_; ++s) {
      if (!alive_[s] || comp[s] != npos) continue;
      std::vector<std::size_t> members{s};
      comp[s] = s;
      std::vector<Vertex> core_vertices;
      for (std::size_t head = 0; head < members.size(); ++head) {
        const std::size_t v = members[head];
        for (std::size_t e : incident_[v]) {
          if (!edges_[e].alive) continue;
          const WorkEdge& we = edges_[e];
          if (we.a == v) core_vertices.insert(core_vertices.end(), we.path.begin(), we.path.end());
          const std::size_t w = we.a == v ? we.b : we.a;
          if (comp[w] == npos) {
            comp[w] = s;
            members.push_back(w);
          }
        }
      }
      std::sort(core_vertices.begin(), core_vertices.end());
      core_vertices.erase(std::unique(core_vertices.begin(), core_vertices.end()),
                          core_vertices.end());
      std::size_t kernel_count = 0;
      for (std::size_t v : members) kernel_count += degree(v) >= 3 ? 1 : 0;
      if (kernel_count == 0 || core_vertices.empty()) continue;
      const std::tuple<std::size_t, std::size_t, long long> key{
          kernel_count, core_vertices.size(), -static_cast<long long>(core_vertices.front())};
      if (!have_best || key > best_key) {
        have_best = true;
        best_key = key;
        best_vertices = std::move(core_vertices);
      }
    }
    return best_vertices;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void add_edge(std::size_t a, std::size_t b, std::vector<Vertex> path) {
    const std::size_t id = edges_.size();
    edges_.push_back({a, b, std::move(path), true});
    incident_[a].push_back(id);
    if (a != b) incident_[b].push_back(id);
  }

  std::size_t other_end(std::size_t e, std::size_t w) const {
    return edges_[e].a == w ? edges_[e].b : edges_[e].a;
  }

  std::vector<Vertex> oriented_to(std::size_t e, std::size_t w) const {
    std::vector<Vertex> p = edges_[e].path;
    if (edges_[e].b != w) std::reverse(p.begin(), p.end());
    return p;
  }

  std::size_t k_;
  std::vector<char> alive_;
  std::vector<WorkEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

}  // namespace

PruneResult prune_to_subcubic(const KernelDecomposition& decomposition) {
  if (decomposition.pure_cycle || decomposition.kernel.vertex_count() == 0) {
    fail(ErrorKind::precondition, "prune_to_subcubic: empty kernel");
  }
  PruneState state(decomposition);
  state.delete_high_degree();
  state.peel();
  state.suppress();
  const std::vector<Vertex> keep = state.largest_component_core_vertices();

  PruneResult out;
  if (keep.empty()) return out;
  Subgraph sub = induced_subgraph(decomposition.core, keep);
  out.decomposition = kernel_decompose(sub.graph);
  out.core_origin = std::move(sub.original);
  out.empty = false;
  return out;
}

}  // namespace rigidity
