#pragma once

// Brute force over full sign vectors: place vertices along a BFS tree from
// vertex 0 using the tree-edge signs, then demand every edge agrees.

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "rigidity/embedding.hpp"
#include "rigidity/multigraph.hpp"
#include "rigidity/rigid_maps.hpp"

namespace oracle {

using rigidity::EdgeId;
using rigidity::Multigraph;
using rigidity::Rational;
using rigidity::Vertex;

struct BruteClass {
  std::vector<int> sigma;
  std::vector<Rational> images;
  bool injective;
};

inline std::vector<BruteClass> brute_force_classes(const Multigraph& g, const rigidity::LineEmbedding& emb,
                                                   bool injective_only) {
  const std::size_t n = g.vertex_count();
  std::vector<EdgeId> real;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!g.edge(e).is_loop()) real.push_back(e);
  // BFS tree
  std::vector<EdgeId> via(n, static_cast<EdgeId>(-1));
  std::vector<Vertex> order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (EdgeId e : g.incident(order[i])) {
      const Vertex w = g.edge(e).other(order[i]);
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = e;
      order.push_back(w);
    }
  }
  EdgeId first = static_cast<EdgeId>(-1);
  for (EdgeId e : g.incident(0))
    if (!g.edge(e).is_loop()) {
      first = e;
      break;
    }
  std::vector<BruteClass> out;
  const std::size_t m = real.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> sigma(g.edge_count(), 1);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) sigma[real[i]] = -1;
    if (first != static_cast<EdgeId>(-1) && sigma[first] < 0) continue;
    std::vector<Rational> img(n);
    img[0] = emb.position(0);
    for (std::size_t i = 1; i < order.size(); ++i) {
      const Vertex w = order[i];
      const auto& e = g.edge(via[w]);
      const Vertex p = e.other(w);
      // sigma(e) = (img(u) - img(v)) / (pos(u) - pos(v))
      img[w] = img[p] + sigma[via[w]] * (emb.position(w) - emb.position(p));
    }
    bool ok = true;
    for (EdgeId e : real) {
      const auto& ed = g.edge(e);
      if (img[ed.u] - img[ed.v] != sigma[e] * (emb.position(ed.u) - emb.position(ed.v))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<Rational> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    const bool inj = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (injective_only && !inj) continue;
    out.push_back({sigma, img, inj});
  }
  return out;
}

/// True when the enumerated classes coincide with the brute-force list.
inline bool same_classes(const rigidity::ReconstructionReport& report, const std::vector<BruteClass>& brute) {
  if (!report.class_count_exact || report.classes.size() != brute.size()) return false;
  std::set<std::pair<std::vector<int>, std::vector<Rational>>> a, b;
  for (const auto& c : report.classes) a.insert({c.sigma, c.representative});
  for (const auto& c : brute) b.insert({c.sigma, c.images});
  return a == b;
}

/// Exhaustive reconstructibility: largest U contained in one isometric family
/// of every class, by trying all subsets (n <= 12).
inline std::size_t brute_force_R(const Multigraph& g, const rigidity::LineEmbedding& emb, bool injective_only) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> comps;
  for (const auto& c : rigidity::connected_components(g)) comps.push_back(c.original);
  std::size_t best = n == 0 ? 0 : 1;
  for (const auto& comp : comps) {
    auto sub = rigidity::induced_subgraph(g, comp);
    auto local = emb.restrict_to(comp);
    auto classes = brute_force_classes(sub.graph, local, injective_only);
    const std::size_t k = comp.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size <= best) continue;
      bool good = true;
      for (const auto& c : classes) {
        bool tr = true, rf = true;
        int first = -1;
        for (std::size_t i = 0; i < k; ++i) {
          if (!(mask >> i & 1)) continue;
          if (first < 0) {
            first = static_cast<int>(i);
            continue;
          }
          if (c.images[i] - local.position(i) != c.images[first] - local.position(first)) tr = false;
          if (c.images[i] + local.position(i) != c.images[first] + local.position(first)) rf = false;
        }
        if (!tr && !rf) {
          good = false;
          break;
        }
      }
      if (good) best = size;
    }
  }
  return best;
}

}  // namespace oracle
