#include "rigidity/rigid_maps.hpp"

#include <algorithm>
#include <numeric>

#include "line_engine.hpp"

namespace rigidity {

namespace {

using detail::ComponentEngine;
using detail::Int128;
using detail::none;

/// Calls f with the scaled positions converted to the widest-needed type.
template <class F>
auto with_positions(const std::vector<BigInt>& scaled, std::size_t edge_count, F&& f) {
  if (detail::fits_int128(scaled, edge_count)) {
    std::vector<Int128> p;
    p.reserve(scaled.size());
    for (const BigInt& z : scaled) p.push_back(detail::to_int128(z));
    return f(std::move(p));
  }
  return f(std::vector<BigInt>(scaled));
}

template <class T>
RigidMapClass make_class(const Multigraph& g, const std::vector<T>& img, const std::vector<T>& pos,
                         const BigInt& scale) {
  RigidMapClass c;
  c.representative.reserve(img.size());
  for (const T& x : img) {
    Rational q(detail::to_big(x), scale);
    q.canonicalize();
    c.representative.push_back(std::move(q));
  }
  c.sigma.reserve(g.edge_count());
  c.trivial = true;
  for (const Edge& e : g.edges()) {
    int s = 1;
    if (!e.is_loop() && img[e.u] - img[e.v] != pos[e.u] - pos[e.v]) s = -1;
    if (s < 0) c.trivial = false;
    c.sigma.push_back(s);
  }
  c.injective = detail::injective(img);
  return c;
}

bool sigma_less(const RigidMapClass& a, const RigidMapClass& b) {
  return std::lexicographical_compare(a.sigma.begin(), a.sigma.end(), b.sigma.begin(), b.sigma.end(),
                                      [](int x, int y) { return x > y; });
}

ScaledPositions checked_scale(const Multigraph& g, const LineEmbedding& emb) {
  if (emb.size() != g.vertex_count()) {
    fail(ErrorKind::validation, "embedding has " + std::to_string(emb.size()) +
                                    " positions for " + std::to_string(g.vertex_count()) + " vertices");
  }
  return scale_to_integers(emb.positions());
}

/// Every block class extends (other blocks held rigid) to an injective map and
/// every reflection of one side of a cut vertex is injective. Under this
/// certificate injective and unrestricted semantics agree block by block.
template <class T>
bool structural_certificate(const ComponentEngine<T>& engine) {
  const auto& tree = engine.tree;
  const std::size_t n = engine.vertex_count();
  const Multigraph& g = *engine.graph;
  for (std::size_t b = 0; b < tree.blocks.size(); ++b) {
    const auto& blk = tree.blocks[b];
    // hang[y]: the block vertex through which y is reached without block edges
    std::vector<Vertex> dsu(n);
    std::iota(dsu.begin(), dsu.end(), Vertex{0});
    auto find = [&](Vertex x) {
      while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
      return x;
    };
    std::vector<char> in_block(g.edge_count(), 0);
    for (EdgeId e : blk.edges) in_block[e] = 1;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (in_block[e]) continue;
      dsu[find(g.edge(e).u)] = find(g.edge(e).v);
    }
    std::vector<std::size_t> local_of_root(n, none);
    for (std::size_t i = 0; i < blk.vertices.size(); ++i) local_of_root[find(blk.vertices[i])] = i;
    for (const auto& local : engine.block_classes[b]) {
      std::vector<T> ext(n);
      for (Vertex y = 0; y < n; ++y) {
        const std::size_t i = local_of_root[find(y)];
        const Vertex h = blk.vertices[i];
        ext[y] = engine.positions[y] + (local[i] - engine.positions[h]);
      }
      if (!detail::injective(ext)) return false;
    }
    if (b == 0) continue;
    const auto side = engine.side_of(b);
    const T& pivot = engine.positions[blk.vertices[0]];
    std::vector<T> refl(n);
    for (Vertex y = 0; y < n; ++y) refl[y] = side[y] ? T(pivot + pivot - engine.positions[y]) : engine.positions[y];
    if (!detail::injective(refl)) return false;
  }
  return true;
}

template <class T>
std::vector<Vertex> largest_in_component(const Multigraph& h, std::vector<T> pos,
                                         const std::vector<Vertex>& original,
                                         const RigidMapOptions& options) {
  ComponentEngine<T> engine(h, std::move(pos), options);
  const std::size_t n = engine.vertex_count();
  if (engine.tree.blocks.empty()) return {original[0]};
  if (!options.injective_only || structural_certificate(engine)) {
    std::vector<Vertex> best;
    for (std::size_t b = 0; b < engine.tree.blocks.size(); ++b) {
      const auto& blk = engine.tree.blocks[b];
      std::vector<T> pl;
      std::vector<Vertex> ids;
      for (Vertex v : blk.vertices) {
        pl.push_back(engine.positions[v]);
        ids.push_back(original[v]);
      }
      auto cand = detail::best_common_family(engine.block_classes[b], pl, ids, options.family_node_budget);
      if (cand.size() > best.size() || (cand.size() == best.size() && cand < best)) best = std::move(cand);
    }
    return best;
  }
  auto mat = detail::materialize(engine, options);
  if (!mat.exact) {
    fail(ErrorKind::indeterminate, "largest_reconstructible_set: rigid-map enumeration truncated");
  }
  std::vector<Vertex> ids(original.begin(), original.begin() + static_cast<std::ptrdiff_t>(n));
  return detail::best_common_family(mat.images, engine.positions, ids, options.family_node_budget);
}

}  // namespace

ReconstructionReport enumerate_rigid_map_classes(const Multigraph& g, const LineEmbedding& emb,
                                                 const RigidMapOptions& options) {
  if (options.class_cap < 1) fail(ErrorKind::validation, "class_cap must be >= 1");
  if (g.vertex_count() == 0) fail(ErrorKind::precondition, "enumerate_rigid_map_classes: empty graph");
  if (!is_connected(g)) fail(ErrorKind::precondition, "enumerate_rigid_map_classes: graph is disconnected");
  const auto scaled = checked_scale(g, emb);
  return with_positions(scaled.scaled, g.edge_count(), [&](auto pos) {
    using T = typename decltype(pos)::value_type;
    ComponentEngine<T> engine(g, std::move(pos), options);
    auto mat = detail::materialize(engine, options);
    ReconstructionReport report;
    report.class_count_exact = mat.exact;
    for (const auto& img : mat.images) report.classes.push_back(make_class(g, img, engine.positions, scaled.scale));
    std::vector<std::size_t> order(report.classes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma_less(report.classes[a], report.classes[b]); });
    std::vector<RigidMapClass> sorted;
    for (std::size_t i : order) {
      sorted.push_back(std::move(report.classes[i]));
      report.per_class_max_isometric_family.push_back(detail::max_family(mat.images[i], engine.positions));
    }
    report.classes = std::move(sorted);
    if (mat.exact) {
      std::vector<Vertex> ids(g.vertex_count());
      std::iota(ids.begin(), ids.end(), Vertex{0});
      try {
        report.largest_set = detail::best_common_family(mat.images, engine.positions, ids,
                                                        options.family_node_budget);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::resource) throw;
      }
    }
    return report;
  });
}

std::vector<Vertex> largest_reconstructible_set(const Multigraph& g, const LineEmbedding& emb,
                                                const RigidMapOptions& options) {
  const auto scaled = checked_scale(g, emb);
  std::vector<Vertex> best;
  for (const Subgraph& comp : connected_components(g)) {
    if (comp.graph.vertex_count() <= best.size() && !best.empty()) {
      // a component no larger than the current best can only tie with a
      // lexicographically larger set unless its smallest id is smaller
      if (comp.graph.vertex_count() < best.size() || comp.original[0] > best[0]) continue;
    }
    std::vector<BigInt> local;
    for (Vertex v : comp.original) local.push_back(scaled.scaled[v]);
    auto cand = with_positions(local, comp.graph.edge_count(), [&](auto pos) {
      using T = typename decltype(pos)::value_type;
      return largest_in_component<T>(comp.graph, std::move(pos), comp.original, options);
    });
    if (cand.size() > best.size() || (cand.size() == best.size() && cand < best)) best = std::move(cand);
  }
  return best;
}

ReconstructibilityResult is_reconstructible(const Multigraph& g, const LineEmbedding& emb,
                                            const std::vector<Vertex>& subset,
                                            const RigidMapOptions& options) {
  const auto scaled = checked_scale(g, emb);
  std::vector<Vertex> u = subset;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  for (Vertex v : u) {
    if (v >= g.vertex_count()) fail(ErrorKind::validation, "is_reconstructible: vertex outside the graph");
  }
  ReconstructibilityResult result;
  if (u.size() <= 1) return result;

  const auto comps = connected_components(g);
  const Subgraph* home = nullptr;
  std::vector<std::size_t> local_u;
  for (const Subgraph& comp : comps) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < comp.original.size(); ++i) {
      if (std::binary_search(u.begin(), u.end(), comp.original[i])) hits.push_back(i);
    }
    if (hits.empty()) continue;
    if (hits.size() != u.size()) {
      result.holds = false;
      return result;
    }
    home = &comp;
    local_u = std::move(hits);
  }

  std::vector<BigInt> local;
  for (Vertex v : home->original) local.push_back(scaled.scaled[v]);
  return with_positions(local, home->graph.edge_count(), [&](auto pos) {
    using T = typename decltype(pos)::value_type;
    const Multigraph& h = home->graph;
    ComponentEngine<T> engine(h, std::move(pos), options);
    ReconstructibilityResult res;
    if (!options.injective_only || structural_certificate(engine)) {
      for (std::size_t b = 0; b < engine.tree.blocks.size(); ++b) {
        const auto& blk = engine.tree.blocks[b];
        std::vector<std::size_t> where(h.vertex_count(), none);
        for (std::size_t i = 0; i < blk.vertices.size(); ++i) where[blk.vertices[i]] = i;
        std::vector<std::size_t> inside;
        for (std::size_t x : local_u)
          if (where[x] != none) inside.push_back(where[x]);
        if (inside.size() != local_u.size()) continue;
        std::vector<T> pl;
        for (Vertex v : blk.vertices) pl.push_back(engine.positions[v]);
        for (std::size_t k = 0; k < engine.block_classes[b].size(); ++k) {
          if (detail::isometric_on(engine.block_classes[b][k], pl, inside)) continue;
          auto choice = engine.trivial_choice();
          choice[b] = k;
          res.holds = false;
          res.witness = make_class(h, engine.compose(choice, engine.plus_signs()), engine.positions, scaled.scale);
          return res;
        }
        return res;
      }
      // U meets two sides of some cut vertex: reflect one side
      for (std::size_t b = 1; b < engine.tree.blocks.size(); ++b) {
        const auto side = engine.side_of(b);
        bool in = false, out = false;
        for (std::size_t x : local_u) (side[x] ? in : out) = true;
        if (!(in && out)) continue;
        const auto below = engine.subtree_blocks(b);
        auto eps = engine.plus_signs();
        for (std::size_t c = 0; c < eps.size(); ++c)
          if (below[c]) eps[c] = -1;
        res.holds = false;
        res.witness = make_class(h, engine.compose(engine.trivial_choice(), eps), engine.positions, scaled.scale);
        return res;
      }
    }
    auto mat = detail::materialize(engine, options);
    for (const auto& img : mat.images) {
      if (detail::isometric_on(img, engine.positions, local_u)) continue;
      res.holds = false;
      res.witness = make_class(h, img, engine.positions, scaled.scale);
      return res;
    }
    if (!mat.exact) fail(ErrorKind::indeterminate, "is_reconstructible: rigid-map enumeration truncated");
    return res;
  });
}

EventAResult event_A_check(const KernelDecomposition& decomp, const LineEmbedding& emb,
                           const Rational& c, const RigidMapOptions& options) {
  if (decomp.kernel.vertex_count() == 0) fail(ErrorKind::precondition, "event_A_check: empty kernel");
  if (c <= 0 || c > 1) fail(ErrorKind::domain, "event_A_check: c must lie in (0,1]");
  const Multigraph& core = decomp.core;
  const auto scaled = checked_scale(core, emb);
  const std::size_t k = decomp.kernel_vertices.size();
  Rational need = c * static_cast<unsigned long>(k);
  BigInt ceil_need;
  mpz_cdiv_q(ceil_need.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
  EventAResult result;
  result.required = ceil_need.get_ui();

  return with_positions(scaled.scaled, core.edge_count(), [&](auto pos) {
    using T = typename decltype(pos)::value_type;
    ComponentEngine<T> engine(core, std::move(pos), options);
    auto mat = detail::materialize(engine, options);
    if (!mat.exact) fail(ErrorKind::indeterminate, "event_A_check: rigid-map enumeration truncated");
    std::vector<char> is_kernel(core.vertex_count(), 0);
    for (Vertex v : decomp.kernel_vertices) is_kernel[v] = 1;
    std::size_t worst = none;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < mat.images.size(); ++i) {
      std::size_t best = 0;
      for (const auto& fam : detail::isometric_families(mat.images[i], engine.positions)) {
        std::size_t count = 0;
        for (std::size_t v : fam) count += is_kernel[v];
        best = std::max(best, count);
      }
      if (worst == none || best < worst) {
        worst = best;
        worst_index = i;
      }
    }
    result.worst_preserved = worst;
    result.holds = worst >= result.required;
    result.worst_class = make_class(core, mat.images[worst_index], engine.positions, scaled.scale);
    return result;
  });
}

}  // namespace rigidity
