#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "rigidity/audits.hpp"
#include "rigidity/counting.hpp"
#include "rigidity/decomposition.hpp"
#include "rigidity/error.hpp"
#include "support.hpp"

using namespace rigidity;
using namespace testsupport;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::usage;
}

std::multiset<std::pair<Vertex, Vertex>> edge_multiset(const Multigraph& g,
                                                       const std::vector<Vertex>& relabel) {
  std::multiset<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : g.edges()) {
    Vertex a = relabel[e.u], b = relabel[e.v];
    out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

std::vector<Vertex> identity(std::size_t n) {
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), Vertex{0});
  return id;
}

// Brute-force two-core: keep deleting one low-degree vertex at a time.
std::vector<Vertex> slow_two_core_vertices(const Multigraph& g) {
  std::vector<char> alive(g.vertex_count(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!alive[v]) continue;
      std::size_t deg = 0;
      for (const Edge& e : g.edges()) {
        if (!alive[e.u] || !alive[e.v]) continue;
        deg += (e.u == v) + (e.v == v);
      }
      if (deg < 2) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (alive[v]) out.push_back(v);
  return out;
}

Eigen::MatrixXd adjacency_matrix(const Multigraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.vertex_count(), g.vertex_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      a(e.u, e.u) += 2;
    } else {
      a(e.u, e.v) += 1;
      a(e.v, e.u) += 1;
    }
  }
  return a;
}

double dense_second_magnitude(const Multigraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(g));
  std::vector<double> mags;
  for (int i = 0; i < es.eigenvalues().size(); ++i) mags.push_back(es.eigenvalues()[i]);
  // drop the eigenvalue d belonging to the all-ones vector (largest), keep magnitudes
  std::sort(mags.begin(), mags.end());
  mags.pop_back();
  double best = 0;
  for (double x : mags) best = std::max(best, std::abs(x));
  return best;
}

Multigraph random_regular_multigraph(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 0; i < d; ++i) stubs.push_back(v);
  for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) e.push_back({stubs[i], stubs[i + 1]});
  return graph(n, e);
}

// Exact expansion by plain subset iteration (no incremental masks).
Rational slow_expansion(const Multigraph& g, const Rational& c) {
  const std::size_t n = g.vertex_count();
  Rational limit = c * static_cast<unsigned long>(n);
  std::size_t m = static_cast<std::size_t>(std::floor(to_double(limit) + 1e-12));
  m = std::max<std::size_t>(1, m);
  Rational best = -1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > m) continue;
    std::set<Vertex> nb;
    for (Vertex v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      for (Vertex w : g.neighbors(v))
        if (!(mask >> w & 1)) nb.insert(w);
    }
    Rational r(static_cast<unsigned long>(nb.size()), static_cast<unsigned long>(size));
    r.canonicalize();
    if (best < 0 || r < best) best = r;
  }
  return best;
}

}  // namespace

TEST_CASE("build_multigraph examples") {
  auto tri = build_multigraph(3, {{0, 1}, {1, 2}, {2, 0}});
  for (Vertex v = 0; v < 3; ++v) CHECK(tri.degree(v) == 2);
  auto loop = build_multigraph(1, {{0, 0}});
  CHECK(loop.degree(0) == 2);
  CHECK(kind_of([] { build_multigraph(2, {{0, 5}}); }) == ErrorKind::validation);
}

TEST_CASE("two_core examples") {
  auto tri = cycle(3);
  CHECK(two_core(tri).graph == tri);
  CHECK(two_core(path(3)).graph.vertex_count() == 0);
  auto tri_pendant = graph(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
  auto core = two_core(tri_pendant);
  CHECK(core.original == std::vector<Vertex>{0, 1, 2});
  CHECK(core.graph.edge_count() == 3);
}

TEST_CASE("kernel_decompose examples") {
  auto d = kernel_decompose(theta());
  CHECK(d.kernel.vertex_count() == 2);
  CHECK(d.kernel.edge_count() == 3);
  std::multiset<std::size_t> lengths;
  for (EdgeId e = 0; e < d.kernel.edge_count(); ++e) lengths.insert(d.path_length(e));
  CHECK(lengths == std::multiset<std::size_t>{2, 2, 3});

  auto k4 = kernel_decompose(complete(4));
  CHECK(k4.kernel.vertex_count() == 4);
  CHECK(k4.kernel.edge_count() == 6);
  for (EdgeId e = 0; e < 6; ++e) CHECK(k4.path_length(e) == 1);

  auto c5 = kernel_decompose(cycle(5));
  CHECK(c5.pure_cycle);
  CHECK(c5.kernel.vertex_count() == 0);

  CHECK(kind_of([] { kernel_decompose(path(3)); }) == ErrorKind::precondition);
  CHECK(kind_of([] { kernel_decompose(graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})); }) ==
        ErrorKind::precondition);
}

TEST_CASE("prune_to_subcubic examples") {
  auto k4 = kernel_decompose(complete(4));
  auto r = prune_to_subcubic(k4);
  CHECK_FALSE(r.empty);
  CHECK(r.decomposition.core == k4.core);
  CHECK(r.decomposition.kernel.edge_count() == 6);

  CHECK(prune_to_subcubic(kernel_decompose(complete(5))).empty);

  // Petersen plus chord {0,2}. By hand: P1 deletes 0 and 2; P2 peels 1;
  // P3 leaves kernel {8,9} joined by 8-3-4-9, 8-5-7-9, 8-6-9; P4 keeps it.
  auto e = petersen_edges();
  e.push_back({0, 2});
  auto pr = prune_to_subcubic(kernel_decompose(graph(10, e)));
  REQUIRE_FALSE(pr.empty);
  const auto& d = pr.decomposition;
  std::vector<Vertex> kept = pr.core_origin;
  CHECK(kept == std::vector<Vertex>{3, 4, 5, 6, 7, 8, 9});
  std::vector<Vertex> kv;
  for (Vertex v : d.kernel_vertices) kv.push_back(kept[v]);
  CHECK(kv == std::vector<Vertex>{8, 9});
  CHECK(d.kernel.edge_count() == 3);
  std::multiset<std::size_t> lengths;
  for (EdgeId k = 0; k < 3; ++k) lengths.insert(d.path_length(k));
  CHECK(lengths == std::multiset<std::size_t>{2, 3, 3});
  CHECK(edge_multiset(d.core, kept) ==
        std::multiset<std::pair<Vertex, Vertex>>{{3, 4}, {3, 8}, {4, 9}, {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}});
}

TEST_CASE("enumerate_connected_subsets examples") {
  auto star = graph(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(collect_connected_subsets(star, 0, 2).size() == 4);
  CHECK(collect_connected_subsets(cycle(3), 0, 3).size() == 4);
  const auto k4 = collect_connected_subsets(complete(4), 0, 3);
  CHECK(k4.size() == 7);
  const double e = std::exp(1.0);
  CHECK(7.0 <= 1 + 2 * e + 4 * e * e);
}

TEST_CASE("vertex_expansion_audit examples") {
  CHECK(vertex_expansion_audit(complete(4), Rational(1, 2)) == 1);
  CHECK(vertex_expansion_audit(path(4), Rational(1, 2)) == Rational(1, 2));
  CHECK(vertex_expansion_audit(graph(1, {}), Rational(1, 3)) == 0);
  CHECK(kind_of([] { vertex_expansion_audit(cycle(21), Rational(1, 2)); }) == ErrorKind::size);
  ExpansionAuditOptions big;
  big.exact_cap = 21;
  CHECK(vertex_expansion_audit(cycle(21), Rational(1, 2), big) == Rational(1, 5));
}

TEST_CASE("second_adjacency_eigenvalue examples") {
  auto k18 = second_adjacency_eigenvalue(complete(18));
  CHECK(k18.degree == 17);
  CHECK(k18.top_eigenvalue == 17.0);
  CHECK(k18.second_magnitude == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(second_adjacency_eigenvalue(cycle(4)).second_magnitude == doctest::Approx(2.0).epsilon(1e-8));
  const auto p = petersen();
  auto rep = second_adjacency_eigenvalue(p);
  CHECK(std::abs(rep.second_magnitude - dense_second_magnitude(p)) <= 1e-8);
  CHECK(std::abs(rep.second_magnitude - 2.0) <= 1e-8);
  CHECK(rep.tolerance_achieved <= 1e-9);
  CHECK(kind_of([] { second_adjacency_eigenvalue(path(3)); }) == ErrorKind::precondition);
  SpectralOptions tiny;
  tiny.iteration_cap = 1;
  tiny.tolerance = 1e-15;
  CHECK(kind_of([&] { second_adjacency_eigenvalue(petersen(), tiny); }) == ErrorKind::convergence);
}

TEST_CASE("edge_boundary_count examples") {
  auto k4 = complete(4);
  std::vector<Vertex> one{0}, all{0, 1, 2, 3};
  CHECK(edge_boundary_count(k4, one) == 3);
  CHECK(edge_boundary_count(k4, all) == 0);
  auto k18 = complete(18);
  for (Vertex v = 0; v < 18; ++v) {
    std::vector<Vertex> u{v};
    CHECK(2 * edge_boundary_count(k18, u) > 17 * u.size());
  }
  auto looped = graph(2, {{0, 0}, {0, 1}});
  CHECK(edge_boundary_count(looped, one) == 1);
}

TEST_CASE("combinatorial_bounds examples") {
  BoundQuery trees;
  trees.kind = BoundKind::spanning_trees;
  trees.graph = complete(4);
  trees.want_exact = true;
  auto r = combinatorial_bounds(trees);
  REQUIRE(r.exact);
  CHECK(*r.exact == 16);
  const double e = std::exp(1.0);
  CHECK(r.bound == doctest::Approx(e * std::pow(1.5 * e, 3)));
  CHECK(16 <= r.bound);

  CHECK(count_connected_partitions(cycle(3)) == 5);

  BoundQuery parts;
  parts.kind = BoundKind::partitions;
  parts.size = 10;
  parts.c = Rational(1, 2);
  parts.max_degree = 3;
  try {
    combinatorial_bounds(parts);
    FAIL("expected precondition error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::precondition);
    CHECK(std::string(err.what()).find("|V|^c/10") != std::string::npos);
  }

  BoundQuery sub;
  sub.kind = BoundKind::subgraphs;
  sub.graph = complete(4);
  sub.size = 3;
  sub.cumulative = true;
  sub.want_exact = true;
  auto s = combinatorial_bounds(sub);
  CHECK(*s.exact == 7);
  CHECK(s.bound == doctest::Approx(1 + 2 * e + 4 * e * e));

  BoundQuery too_big = trees;
  too_big.graph = complete(11);
  CHECK(kind_of([&] { combinatorial_bounds(too_big); }) == ErrorKind::size);
}

TEST_CASE("partition hypothesis is exact") {
  // 10^(1/2)/10 < 1 so even degree 1 fails; 10^4 vertices at c=1/2 allow D <= 10.
  CHECK_FALSE(partition_hypothesis_holds(1, 10, Rational(1, 2)));
  CHECK(partition_hypothesis_holds(10, 10000, Rational(1, 2)));
  CHECK_FALSE(partition_hypothesis_holds(11, 10000, Rational(1, 2)));
}

TEST_CASE("spanning trees agree with Cayley and with subset brute force") {
  for (std::size_t n = 1; n <= 7; ++n) {
    BigInt cayley;
    mpz_ui_pow_ui(cayley.get_mpz_t(), n, n >= 2 ? n - 2 : 0);
    CHECK(count_spanning_trees(complete(n)) == cayley);
  }
  // brute force: subsets of n-1 edges forming a spanning tree (multigraph, parallel edges distinct)
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    auto g = random_multigraph(n, 2 + rng.below(6), rng);
    const std::size_t m = g.edge_count();
    std::size_t brute = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != n - 1) continue;
      std::vector<Vertex> parent(n);
      std::iota(parent.begin(), parent.end(), Vertex{0});
      auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x];
        return x;
      };
      bool ok = true;
      for (EdgeId i = 0; i < m && ok; ++i) {
        if (!(mask >> i & 1)) continue;
        Vertex a = find(g.edge(i).u), b = find(g.edge(i).v);
        if (a == b) ok = false;
        else parent[a] = b;
      }
      brute += ok;
    }
    CHECK(count_spanning_trees(g) == static_cast<unsigned long>(brute));
  }
}

TEST_CASE("connected partitions agree with Bell numbers and a set-partition oracle") {
  const unsigned long bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
  for (std::size_t n = 1; n <= 7; ++n) CHECK(count_connected_partitions(complete(n)) == bell[n]);
  // paths: 2^(n-1)
  for (std::size_t n = 1; n <= 8; ++n) CHECK(count_connected_partitions(path(n)) == (1ul << (n - 1)));
  // restricted-growth-string oracle on random graphs
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    auto g = random_graph(n, 0.45, rng);
    std::vector<std::size_t> block(n, 0);
    std::size_t count = 0;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
      if (i == n) {
        for (std::size_t b = 0; b < used; ++b) {
          std::vector<Vertex> part;
          for (Vertex v = 0; v < n; ++v)
            if (block[v] == b) part.push_back(v);
          if (!is_connected(induced_subgraph(g, part).graph)) return;
        }
        ++count;
        return;
      }
      for (std::size_t b = 0; b <= used; ++b) {
        block[i] = b;
        rec(i + 1, std::max(used, b + 1));
      }
    };
    rec(0, 0);
    CHECK(count_connected_partitions(g) == static_cast<unsigned long>(count));
  }
}

TEST_CASE("property: two_core is idempotent, monotone and maximal") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    auto g = random_multigraph(n, rng.below(2 * n + 1), rng);
    auto core = two_core(g);
    CHECK(core.original == slow_two_core_vertices(g));
    CHECK(two_core(core.graph).graph == core.graph);
    if (core.graph.vertex_count() > 0) CHECK(core.graph.min_degree() >= 2);
    // core edges are exactly the parent edges with both ends kept
    std::vector<char> keep(n, 0);
    for (Vertex v : core.original) keep[v] = 1;
    std::size_t expected = 0;
    for (const Edge& e : g.edges()) expected += keep[e.u] && keep[e.v];
    CHECK(core.graph.edge_count() == expected);
  }
}

TEST_CASE("property: degree sum is twice the edge count") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_multigraph(1 + rng.below(10), rng.below(25), rng);
    std::size_t sum = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) sum += g.degree(v);
    CHECK(sum == 2 * g.edge_count());
    CHECK(sum == g.degree_sum());
  }
}

TEST_CASE("property: kernel round trip reconstructs the core") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 600 && checked < 200; ++trial) {
    const std::size_t n = 3 + rng.below(14);
    auto g = random_multigraph(n, n + rng.below(2 * n), rng);
    auto core = two_core(g);
    if (core.graph.vertex_count() == 0) continue;
    auto comp = largest_component(core.graph).graph;
    KernelDecomposition d;
    try {
      d = kernel_decompose(comp);
    } catch (const Error&) {
      FAIL("decomposition of a connected min-degree-2 graph failed");
    }
    ++checked;
    if (d.pure_cycle) {
      CHECK(comp.max_degree() == 2);
      continue;
    }
    std::vector<char> is_kernel(comp.vertex_count(), 0);
    for (Vertex v : d.kernel_vertices) {
      is_kernel[v] = 1;
      CHECK(comp.degree(v) >= 3);
    }
    for (Vertex v = 0; v < comp.vertex_count(); ++v) CHECK((comp.degree(v) >= 3) == bool(is_kernel[v]));
    std::multiset<std::pair<Vertex, Vertex>> rebuilt;
    std::size_t total = 0;
    std::vector<std::size_t> used(comp.edge_count(), 0);
    for (EdgeId k = 0; k < d.kernel.edge_count(); ++k) {
      const auto& p = d.twopaths[k];
      CHECK(p.front() == d.kernel_vertices[d.kernel.edge(k).u]);
      CHECK(p.back() == d.kernel_vertices[d.kernel.edge(k).v]);
      for (std::size_t i = 1; i + 1 < p.size(); ++i) CHECK(comp.degree(p[i]) == 2);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) rebuilt.insert({std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])});
      for (EdgeId ce : d.twopath_edges[k]) ++used[ce];
      total += p.size() - 1;
    }
    CHECK(total == comp.edge_count());
    CHECK(std::all_of(used.begin(), used.end(), [](std::size_t u) { return u == 1; }));
    CHECK(rebuilt == edge_multiset(comp, identity(comp.vertex_count())));
  }
  CHECK(checked >= 100);
}

TEST_CASE("property: pruned kernels are 3-regular") {
  Rng rng(31337);
  int nonempty = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 4 + rng.below(16);
    auto g = random_multigraph(n, n + rng.below(n + 2), rng);
    auto core = two_core(g);
    if (core.graph.vertex_count() == 0) continue;
    auto comp = largest_component(core.graph).graph;
    auto d = kernel_decompose(comp);
    if (d.pure_cycle) continue;
    auto r = prune_to_subcubic(d);
    if (r.empty) continue;
    ++nonempty;
    const auto& k = r.decomposition.kernel;
    for (Vertex v = 0; v < k.vertex_count(); ++v) CHECK(k.degree(v) == 3);
    CHECK(is_connected(r.decomposition.core));
  }
  CHECK(nonempty > 20);
}

TEST_CASE("property: connected subsets are exactly the connected sets, without repeats") {
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.below(9);
    auto g = random_graph(n, 0.35, rng);
    const Vertex root = rng.below(n);
    const std::size_t cap = 1 + rng.below(n);
    auto sets = collect_connected_subsets(g, root, cap);
    std::set<std::vector<Vertex>> unique(sets.begin(), sets.end());
    CHECK(unique.size() == sets.size());
    std::size_t expected = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (!(mask >> root & 1) || static_cast<std::size_t>(std::popcount(mask)) > cap) continue;
      std::vector<Vertex> part;
      for (Vertex v = 0; v < n; ++v)
        if (mask >> v & 1) part.push_back(v);
      if (is_connected(induced_subgraph(g, part).graph)) {
        ++expected;
        CHECK(unique.count(part) == 1);
      }
    }
    CHECK(sets.size() == expected);
  }
}

TEST_CASE("property: connected subset counts obey the Bollobas bound on all graphs up to 7 vertices") {
  // Every isomorphism class has a labelling with non-increasing degrees, so
  // scanning those labellings covers all graphs on <= 7 vertices.
  const double e = std::exp(1.0);
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<std::pair<Vertex, Vertex>> pair_list;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pair_list.push_back({u, v});
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
      std::vector<std::size_t> deg(n, 0);
      for (std::size_t b = 0; b < pairs; ++b)
        if (mask >> b & 1) ++deg[pair_list[b].first], ++deg[pair_list[b].second];
      if (!std::is_sorted(deg.rbegin(), deg.rend())) continue;
      const std::size_t delta = deg.empty() ? 0 : deg[0];
      if (delta < 3) continue;
      ++graphs;
      auto g = from_mask(n, mask);
      const auto adj = g.simple_adjacency();
      for (Vertex root = 0; root < n; ++root) {
        std::vector<std::size_t> by_size(n + 1, 0);
        enumerate_connected_subsets(adj, root, n, [&](std::span<const Vertex> s) {
          ++by_size[s.size()];
          return true;
        });
        for (std::size_t s = 1; s <= n; ++s) {
          const double bound = std::pow(e * static_cast<double>(delta - 1), static_cast<double>(s - 1));
          if (static_cast<double>(by_size[s]) > bound) FAIL("bound violated");
        }
      }
    }
  }
  CHECK(graphs > 1000);
}

TEST_CASE("property: exact expansion matches plain subset iteration and sampling never undercuts it") {
  Rng rng(123);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng.below(11);
    auto g = random_multigraph(n, rng.below(3 * n), rng);
    const Rational c(1 + rng.below(9), 10);
    const Rational exact = vertex_expansion_audit(g, c);
    CHECK(exact == slow_expansion(g, c));
    ExpansionAuditOptions sampled;
    sampled.mode = AuditMode::sampled;
    sampled.sample_budget = 200;
    sampled.seed = trial;
    CHECK(vertex_expansion_audit(g, c, sampled) >= exact);
  }
}

TEST_CASE("property: spectral audit matches a dense eigensolver within 10 tolerance") {
  Rng rng(77);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    const std::size_t n = 2 + rng.below(11);
    const std::size_t d = 1 + rng.below(std::min<std::size_t>(n, 6));
    if ((n * d) % 2) continue;
    auto g = random_regular_multigraph(n, d, rng);
    if (!is_connected(g)) continue;
    SpectralOptions opt;
    opt.tolerance = 1e-7;
    SpectralReport rep;
    try {
      rep = second_adjacency_eigenvalue(g, opt);
    } catch (const Error& e) {
      // near-degenerate top pair can stall; must be reported, never silent
      CHECK(e.kind() == ErrorKind::convergence);
      continue;
    }
    ++checked;
    CHECK(rep.second_magnitude <= rep.top_eigenvalue + 1e-9);
    CHECK(std::abs(rep.second_magnitude - dense_second_magnitude(g)) <= 10 * opt.tolerance);
  }
  CHECK(checked >= 40);
}
