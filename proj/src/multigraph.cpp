#include "rigidity/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "rigidity/error.hpp"

namespace rigidity {

Multigraph::Multigraph(std::size_t vertex_count, std::vector<Edge> edges,
                       std::map<Vertex, std::string> labels)
    : n_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  incidence_.assign(n_, {});
  degree_.assign(n_, 0);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u >= n_ || ed.v >= n_) {
      fail(ErrorKind::validation, "edge " + std::to_string(e) + " = (" + std::to_string(ed.u) +
                                      "," + std::to_string(ed.v) + ") has an endpoint outside [0," +
                                      std::to_string(n_) + ")");
    }
    incidence_[ed.u].push_back(e);
    degree_[ed.u] += 1;
    if (!ed.is_loop()) incidence_[ed.v].push_back(e);
    degree_[ed.v] += 1;
  }
  for (const auto& [id, _] : labels_) {
    if (id >= n_) fail(ErrorKind::validation, "label for unknown vertex " + std::to_string(id));
  }
}

std::size_t Multigraph::max_degree() const noexcept {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

std::size_t Multigraph::min_degree() const noexcept {
  return degree_.empty() ? 0 : *std::min_element(degree_.begin(), degree_.end());
}

std::vector<Vertex> Multigraph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (EdgeId e : incidence_.at(v)) {
    const Vertex w = edges_[e].other(v);
    if (w != v) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<Vertex>> Multigraph::simple_adjacency() const {
  std::vector<std::vector<Vertex>> adj(n_);
  for (Vertex v = 0; v < n_; ++v) adj[v] = neighbors(v);
  return adj;
}

Multigraph build_multigraph(std::size_t n,
                            const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v] : edges) list.push_back({u, v});
  return Multigraph(n, std::move(list));
}

Subgraph induced_subgraph(const Multigraph& g, std::span<const Vertex> keep) {
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorKind::validation, "induced_subgraph: duplicate vertex");
  }
  constexpr Vertex absent = static_cast<Vertex>(-1);
  std::vector<Vertex> local(g.vertex_count(), absent);
  for (Vertex i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= g.vertex_count()) fail(ErrorKind::validation, "induced_subgraph: bad vertex");
    local[sorted[i]] = i;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != absent && local[e.v] != absent) edges.push_back({local[e.u], local[e.v]});
  }
  std::map<Vertex, std::string> labels;
  for (const auto& [id, text] : g.labels()) {
    if (local[id] != absent) labels.emplace(local[id], text);
  }
  return {Multigraph(sorted.size(), std::move(edges), std::move(labels)), std::move(sorted)};
}

namespace {

std::vector<std::vector<Vertex>> component_vertex_sets(const Multigraph& g) {
  constexpr Vertex unseen = static_cast<Vertex>(-1);
  std::vector<Vertex> comp(g.vertex_count(), unseen);
  std::vector<std::vector<Vertex>> sets;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != unseen) continue;
    std::vector<Vertex> members{s};
    comp[s] = sets.size();
    for (std::size_t head = 0; head < members.size(); ++head) {
      const Vertex v = members[head];
      for (EdgeId e : g.incident(v)) {
        const Vertex w = g.edge(e).other(v);
        if (comp[w] == unseen) {
          comp[w] = sets.size();
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    sets.push_back(std::move(members));
  }
  return sets;
}

}  // namespace

std::vector<Subgraph> connected_components(const Multigraph& g) {
  std::vector<Subgraph> out;
  for (const auto& members : component_vertex_sets(g)) out.push_back(induced_subgraph(g, members));
  return out;
}

bool is_connected(const Multigraph& g) {
  return g.vertex_count() <= 1 || component_vertex_sets(g).size() == 1;
}

Subgraph largest_component(const Multigraph& g) {
  const auto sets = component_vertex_sets(g);
  if (sets.empty()) return {};
  std::size_t best = 0;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].size() > sets[best].size()) best = i;
  }
  return induced_subgraph(g, sets[best]);
}

Subgraph two_core(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < 2) {
      removed[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      const Vertex w = g.edge(e).other(v);
      if (w == v || removed[w]) continue;
      if (--deg[w] < 2) {
        removed[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

std::size_t edge_boundary_count(const Multigraph& g, std::span<const Vertex> subset) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : subset) {
    if (v >= g.vertex_count()) fail(ErrorKind::validation, "edge_boundary_count: bad vertex");
    in[v] = 1;
  }
  std::size_t count = 0;
  for (const Edge& e : g.edges()) {
    if (in[e.u] != in[e.v]) ++count;
  }
  return count;
}

}  // namespace rigidity
