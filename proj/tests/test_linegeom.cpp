#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "rigidity/error.hpp"
#include "rigidity/rigid_maps.hpp"
#include "rigidity_oracle.hpp"
#include "support.hpp"

using namespace rigidity;
using namespace testsupport;

namespace {

LineEmbedding emb(std::vector<long> v) { return make_embedding(v); }

RigidMapOptions all_maps() {
  RigidMapOptions o;
  o.injective_only = false;
  return o;
}

// Small integers make coincidences (and non-injective maps) common.
LineEmbedding small_embedding(std::size_t n, std::uint64_t range, Rng& rng) {
  std::vector<long> pos;
  std::set<long> used;
  while (pos.size() < n) {
    long x = static_cast<long>(rng.below(range));
    if (used.insert(x).second) pos.push_back(x);
  }
  return make_embedding(pos);
}

Multigraph random_connected(std::size_t n, std::size_t extra, Rng& rng, bool multi) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({rng.below(v), v});
  for (std::size_t i = 0; i < extra; ++i) {
    Vertex a = rng.below(n), b = rng.below(n);
    if (!multi && a == b) continue;
    e.push_back({a, b});
  }
  // shuffle edge order and relabel so the tree is not aligned with ids
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (auto& [a, b] : e) a = perm[a], b = perm[b];
  for (std::size_t i = e.size(); i > 1; --i) std::swap(e[i - 1], e[rng.below(i)]);
  return graph(n, e);
}

}  // namespace

TEST_CASE("embedding validation and scaling") {
  CHECK_THROWS_AS(make_embedding({0, 1, 0}), Error);
  LineEmbedding q({Rational(7, 3), Rational(1, 2), Rational(-2)});
  auto s = scale_to_integers(q.positions());
  CHECK(s.scale == 6);
  CHECK(s.scaled == std::vector<BigInt>{14, 3, -12});
  Rng rng(1);
  auto r = random_integer_embedding(100, rng);
  CHECK(r.size() == 100);
  for (const auto& x : r.positions()) CHECK((x >= 0 && x < Rational(BigInt(1) << 62)));
}

TEST_CASE("enumerate_rigid_map_classes examples") {
  auto tri = cycle(3);
  auto r = enumerate_rigid_map_classes(tri, emb({0, 1, 3}));
  CHECK(r.classes.size() == 1);
  CHECK(r.classes[0].trivial);

  auto p3 = path(3);
  auto pr = enumerate_rigid_map_classes(p3, emb({0, 1, 5}));
  REQUIRE(pr.classes.size() == 2);
  CHECK(pr.classes[0].trivial);
  CHECK(pr.classes[1].sigma == std::vector<int>{1, -1});
  CHECK(pr.classes[1].representative == std::vector<Rational>{0, 1, -3});

  CHECK(enumerate_rigid_map_classes(p3, emb({0, 1, 2})).classes.size() == 1);
  auto nonin = enumerate_rigid_map_classes(p3, emb({0, 1, 2}), all_maps());
  REQUIRE(nonin.classes.size() == 2);
  CHECK_FALSE(nonin.classes[1].injective);
  CHECK(nonin.classes[1].representative[0] == nonin.classes[1].representative[2]);

  CHECK(enumerate_rigid_map_classes(cycle(4), emb({0, 1, 3, 7})).classes.size() == 1);

  CHECK_THROWS_AS(enumerate_rigid_map_classes(graph(2, {}), emb({0, 1})), Error);
  auto single = enumerate_rigid_map_classes(graph(1, {{0, 0}, {0, 0}}), emb({5}));
  REQUIRE(single.classes.size() == 1);
  CHECK(single.classes[0].trivial);
}

TEST_CASE("class cap truncates and clears the exact flag") {
  // a path on 8 vertices with generic positions has 2^6 classes
  Rng rng(3);
  auto g = path(8);
  auto e = random_integer_embedding(8, rng);
  CHECK(enumerate_rigid_map_classes(g, e).classes.size() == 64);
  RigidMapOptions o;
  o.class_cap = 10;
  auto r = enumerate_rigid_map_classes(g, e, o);
  CHECK(r.classes.size() == 10);
  CHECK_FALSE(r.class_count_exact);
}

TEST_CASE("is_reconstructible examples") {
  Rng rng(8);
  auto g = complete(4);
  auto e = random_integer_embedding(4, rng);
  CHECK(is_reconstructible(g, e, {0, 1}).holds);
  auto p = is_reconstructible(path(3), emb({0, 1, 5}), {0, 1, 2});
  CHECK_FALSE(p.holds);
  REQUIRE(p.witness);
  CHECK(p.witness->sigma == std::vector<int>{1, -1});
  CHECK(is_reconstructible(cycle(3), emb({0, 1, 3}), {0, 1, 2}).holds);
  CHECK(is_reconstructible(path(3), emb({0, 1, 5}), {}).holds);
  CHECK(is_reconstructible(path(3), emb({0, 1, 5}), {2}).holds);
  // spans two components
  auto two = graph(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(is_reconstructible(two, emb({0, 1, 3, 7}), {0, 2}).holds);
}

TEST_CASE("largest_reconstructible_set examples") {
  CHECK(largest_reconstructible_set(path(3), emb({0, 1, 5})) == std::vector<Vertex>{0, 1});
  CHECK(largest_reconstructible_set(cycle(3), emb({0, 1, 3})).size() == 3);
  Rng rng(12);
  auto two = graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK(largest_reconstructible_set(two, random_integer_embedding(6, rng)) == std::vector<Vertex>{0, 1, 2});
  // injective semantics: the only non-trivial map of (0,1,2) collapses the ends
  CHECK(largest_reconstructible_set(path(3), emb({0, 1, 2})).size() == 3);
  CHECK(largest_reconstructible_set(path(3), emb({0, 1, 2}), all_maps()).size() == 2);
  CHECK(largest_reconstructible_set(graph(0, {}), LineEmbedding{}).empty());
  CHECK(largest_reconstructible_set(graph(3, {}), emb({4, 1, 2})) == std::vector<Vertex>{0});
}

TEST_CASE("path_extension_solutions examples") {
  auto a = path_extension_solutions(0, 10, 0, 10, {3});
  CHECK(a.total == 1);
  CHECK(a.nontrivial == 0);
  auto b = path_extension_solutions(0, 10, 0, 4, {3});
  CHECK(b.total == 1);
  CHECK(b.nontrivial == 1);
  auto c = path_extension_solutions(0, 10, 0, 5, {3});
  CHECK(c.total == 0);
  CHECK_THROWS_AS(path_extension_solutions(0, 10, 0, 5, {10}), Error);
}

TEST_CASE("event_A_check examples") {
  Rng rng(21);
  auto th = kernel_decompose(theta());
  CHECK(event_A_check(th, random_integer_embedding(6, rng), Rational(1, 2)).holds);

  auto k4 = kernel_decompose(complete(4));
  auto e4 = random_integer_embedding(4, rng);
  REQUIRE(enumerate_rigid_map_classes(k4.core, e4).classes.size() == 1);
  CHECK(event_A_check(k4, e4, 1).holds);

  // triangles {0,1,2} and {3,4,5} joined by the 2-path 0-6-3
  auto g = graph(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 6}, {6, 3}});
  auto d = kernel_decompose(g);
  REQUIRE(d.kernel.vertex_count() == 2);
  auto res = event_A_check(d, random_integer_embedding(7, rng), 1);
  CHECK_FALSE(res.holds);
  CHECK(res.worst_preserved == 1);
  CHECK(res.required == 2);
  REQUIRE(res.worst_class);
  CHECK_FALSE(res.worst_class->trivial);

  CHECK_THROWS_AS(event_A_check(kernel_decompose(cycle(4)), emb({0, 1, 2, 3}), Rational(1, 2)), Error);
}

TEST_CASE("property: enumeration matches the full sign-vector oracle") {
  Rng rng(2718);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    auto g = random_connected(n, rng.below(5), rng, trial % 3 == 0);
    if (g.edge_count() > 10) continue;
    const bool small = trial % 2 == 0;
    auto e = small ? small_embedding(n, 10, rng) : random_integer_embedding(n, rng);
    for (bool inj : {true, false}) {
      RigidMapOptions o;
      o.injective_only = inj;
      auto report = enumerate_rigid_map_classes(g, e, o);
      auto brute = oracle::brute_force_classes(g, e, inj);
      CHECK(oracle::same_classes(report, brute));
      // sigma consistency and the class-count bound
      for (const auto& c : report.classes) {
        for (EdgeId k = 0; k < g.edge_count(); ++k) {
          const auto& ed = g.edge(k);
          CHECK(c.sigma[k] * (e.position(ed.u) - e.position(ed.v)) ==
                c.representative[ed.u] - c.representative[ed.v]);
        }
      }
      CHECK(report.classes.size() <= (std::size_t{1} << (n - 1)));
      if (!inj) CHECK(std::count_if(report.classes.begin(), report.classes.end(),
                                    [](const RigidMapClass& c) { return c.trivial; }) == 1);
    }
  }
}

TEST_CASE("property: largest set matches subset brute force and is isometry invariant") {
  Rng rng(1618);
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    Multigraph g = trial % 4 == 0 ? random_graph(n, 0.4, rng) : random_connected(n, rng.below(5), rng, false);
    if (g.edge_count() > 11) continue;
    auto e = trial % 2 ? small_embedding(n, 12, rng) : random_integer_embedding(n, rng);
    for (bool inj : {true, false}) {
      RigidMapOptions o;
      o.injective_only = inj;
      auto best = largest_reconstructible_set(g, e, o);
      CHECK(best.size() == oracle::brute_force_R(g, e, inj));
      CHECK(is_reconstructible(g, e, best, o).holds);
      // reflected and translated embeddings
      std::vector<Rational> refl, shift;
      for (const auto& x : e.positions()) {
        refl.push_back(-x);
        shift.push_back(x + Rational(17, 3));
      }
      CHECK(largest_reconstructible_set(g, LineEmbedding(refl), o).size() == best.size());
      CHECK(largest_reconstructible_set(g, LineEmbedding(shift), o).size() == best.size());
      const Vertex v = rng.below(n), w = rng.below(n);
      const bool h1 = is_reconstructible(g, e, {v, w}, o).holds;
      CHECK(is_reconstructible(g, LineEmbedding(refl), {v, w}, o).holds == h1);
    }
  }
}

TEST_CASE("property: path extension counts match exhaustive enumeration") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 1 + rng.below(12);
    std::set<long> used;
    std::vector<long> pts;
    while (pts.size() < s + 1) {
      long x = static_cast<long>(rng.below(trial % 2 ? 30 : 1000000));
      if (used.insert(x).second) pts.push_back(x);
    }
    std::vector<Rational> interior;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) interior.push_back(pts[i]);
    const long img_u = 0;
    const long img_v = trial % 3 == 0 ? pts.back() - pts.front() : static_cast<long>(rng.below(60)) - 30;
    auto got = path_extension_solutions(pts.front(), pts.back(), img_u, img_v, interior);
    std::uint64_t total = 0;
    for (std::uint64_t mask = 0; mask < (1ull << s); ++mask) {
      long sum = 0;
      for (std::size_t i = 0; i < s; ++i) sum += (mask >> i & 1 ? -1 : 1) * (pts[i + 1] - pts[i]);
      total += sum == img_v - img_u;
    }
    CHECK(got.total == total);
    if (img_v == pts.back() - pts.front()) CHECK(got.total >= 1);
  }
  // meet in the middle beyond 24 edges agrees with a DP over small gaps
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t s = 26 + rng.below(6);
    std::vector<long> pts{0};
    std::set<long> used{0};
    while (pts.size() < s + 1) {
      long x = static_cast<long>(rng.below(40)) - 20;
      if (used.insert(x).second) pts.push_back(x);
    }
    std::vector<Rational> interior;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) interior.push_back(pts[i]);
    const long target = static_cast<long>(rng.below(20));
    std::map<long, std::uint64_t> dp{{0, 1}};
    for (std::size_t i = 0; i < s; ++i) {
      std::map<long, std::uint64_t> next;
      const long d = pts[i + 1] - pts[i];
      for (auto [k, c] : dp) next[k + d] += c, next[k - d] += c;
      dp = std::move(next);
    }
    CHECK(path_extension_solutions(pts.front(), pts.back(), 0, target, interior).total == dp[target]);
  }
}

TEST_CASE("generic random graphs stay fast and exact") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_connected(40, 30, rng, true);
    auto e = random_integer_embedding(40, rng);
    auto best = largest_reconstructible_set(g, e);
    CHECK(best.size() >= 2);
    CHECK(is_reconstructible(g, e, best).holds);
  }
}
