// Internal machinery for rigid-map enumeration over integer-scaled positions.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rigidity/error.hpp"
#include "rigidity/multigraph.hpp"
#include "rigidity/rational.hpp"
#include "rigidity/rigid_maps.hpp"

namespace rigidity::detail {

constexpr std::size_t none = static_cast<std::size_t>(-1);

using Int128 = __int128;

Int128 to_int128(const BigInt& z);
BigInt to_big(Int128 x);
inline const BigInt& to_big(const BigInt& x) { return x; }

template <class T>
T from_big(const BigInt& z) {
  if constexpr (std::is_same_v<T, Int128>) {
    return to_int128(z);
  } else {
    return z;
  }
}

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

/// True when every intermediate sum of +-gaps fits in 128 bits.
bool fits_int128(const std::vector<BigInt>& scaled, std::size_t edge_count);

struct BlockInfo {
  /// Component vertex ids; vertices[0] is where the block hangs (the root
  /// for the first block), the rest ascending.
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  std::size_t parent = none;
};

struct EarStep {
  /// Local ids; front and back already placed, interior new.
  std::vector<std::size_t> path;
  /// Edges to verify once the interior is placed (local endpoints).
  std::vector<std::pair<std::size_t, std::size_t>> chords;
};

struct BlockPlan {
  std::size_t first_other = none;
  std::vector<EarStep> steps;
};

/// Blocks of a connected multigraph rooted at its smallest vertex, parents
/// before children, with an ear plan per block.
struct BlockTree {
  Vertex root = 0;
  EdgeId root_edge = none;
  std::vector<BlockInfo> blocks;
  std::vector<BlockPlan> plans;
};

BlockTree build_block_tree(const Multigraph& g);

/// Classes of one block as local image vectors, fixing vertices[0] and the
/// sign of the first edge.
template <class T>
std::vector<std::vector<T>> enumerate_block(const BlockInfo& block, const BlockPlan& plan,
                                            const std::vector<T>& positions,
                                            const RigidMapOptions& options) {
  const std::size_t m = block.vertices.size();
  std::vector<T> pl(m);
  for (std::size_t i = 0; i < m; ++i) pl[i] = positions[block.vertices[i]];

  std::vector<T> start(m, T(0));
  start[0] = pl[0];
  start[plan.first_other] = pl[plan.first_other];
  std::vector<std::vector<T>> maps{std::move(start)};

  for (const EarStep& step : plan.steps) {
    const std::size_t s = step.path.size() - 1;
    if (s > options.ear_cap) {
      fail(ErrorKind::resource, "rigid-map enumeration: ear of length " + std::to_string(s) +
                                    " exceeds the cap " + std::to_string(options.ear_cap));
    }
    std::vector<T> gaps(s);
    for (std::size_t i = 0; i < s; ++i) gaps[i] = pl[step.path[i + 1]] - pl[step.path[i]];
    const std::size_t h = s / 2;
    const std::size_t r = s - h;

    std::vector<std::pair<T, std::uint32_t>> left(std::size_t{1} << h);
    for (std::uint32_t mask = 0; mask < left.size(); ++mask) {
      T sum(0);
      for (std::size_t i = 0; i < h; ++i) {
        if (mask >> i & 1) sum -= gaps[i];
        else sum += gaps[i];
      }
      left[mask] = {std::move(sum), mask};
    }
    std::sort(left.begin(), left.end());
    std::vector<T> right(std::size_t{1} << r);
    for (std::uint32_t mask = 0; mask < right.size(); ++mask) {
      T sum(0);
      for (std::size_t i = 0; i < r; ++i) {
        if (mask >> i & 1) sum -= gaps[h + i];
        else sum += gaps[h + i];
      }
      right[mask] = std::move(sum);
    }

    const std::size_t a = step.path.front();
    const std::size_t b = step.path.back();
    std::vector<std::vector<T>> next;
    for (const auto& map : maps) {
      const T target = map[b] - map[a];
      for (std::uint32_t rmask = 0; rmask < right.size(); ++rmask) {
        const T need = target - right[rmask];
        auto lo = std::lower_bound(left.begin(), left.end(), need,
                                   [](const auto& entry, const T& key) { return entry.first < key; });
        for (; lo != left.end() && lo->first == need; ++lo) {
          std::vector<T> cand = map;
          T cur = map[a];
          for (std::size_t i = 0; i + 1 < s; ++i) {
            const bool minus = i < h ? (lo->second >> i & 1) : (rmask >> (i - h) & 1);
            if (minus) cur -= gaps[i];
            else cur += gaps[i];
            cand[step.path[i + 1]] = cur;
          }
          bool ok = true;
          for (const auto& [x, y] : step.chords) {
            if (abs_value(T(cand[x] - cand[y])) != abs_value(T(pl[x] - pl[y]))) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          next.push_back(std::move(cand));
          if (next.size() > options.work_cap) {
            fail(ErrorKind::resource, "rigid-map enumeration: more than " +
                                          std::to_string(options.work_cap) +
                                          " partial maps alive in one block");
          }
        }
      }
    }
    maps = std::move(next);
  }
  return maps;
}

/// Block classes of one connected component plus the composition rule
///   phi(x) = phi(a) + eps_B (phi_B(x) - pos(a))
/// for a block B hanging at a.
template <class T>
struct ComponentEngine {
  const Multigraph* graph = nullptr;
  std::vector<T> positions;
  BlockTree tree;
  std::vector<std::vector<std::vector<T>>> block_classes;
  std::vector<std::size_t> trivial_index;  // per block

  ComponentEngine(const Multigraph& g, std::vector<T> pos, const RigidMapOptions& options)
      : graph(&g), positions(std::move(pos)), tree(build_block_tree(g)) {
    block_classes.reserve(tree.blocks.size());
    for (std::size_t b = 0; b < tree.blocks.size(); ++b) {
      block_classes.push_back(enumerate_block(tree.blocks[b], tree.plans[b], positions, options));
      const auto& blk = tree.blocks[b];
      std::size_t t = none;
      for (std::size_t k = 0; k < block_classes[b].size() && t == none; ++k) {
        bool same = true;
        for (std::size_t i = 0; i < blk.vertices.size() && same; ++i) {
          same = block_classes[b][k][i] == positions[blk.vertices[i]];
        }
        if (same) t = k;
      }
      trivial_index.push_back(t);
    }
  }

  std::size_t vertex_count() const { return positions.size(); }

  std::vector<T> compose(const std::vector<std::size_t>& choice, const std::vector<int>& eps) const {
    std::vector<T> img(positions.size(), T(0));
    if (img.empty()) return img;
    img[tree.root] = positions[tree.root];
    for (std::size_t b = 0; b < tree.blocks.size(); ++b) {
      const auto& blk = tree.blocks[b];
      const Vertex a = blk.vertices[0];
      const auto& local = block_classes[b][choice[b]];
      const T base = img[a];
      for (std::size_t i = 1; i < blk.vertices.size(); ++i) {
        T delta = local[i] - positions[a];
        if (eps[b] < 0) delta = -delta;
        img[blk.vertices[i]] = base + delta;
      }
    }
    return img;
  }

  std::vector<std::size_t> trivial_choice() const { return trivial_index; }
  std::vector<int> plus_signs() const { return std::vector<int>(tree.blocks.size(), 1); }

  /// Blocks in the subtree of b (b included).
  std::vector<char> subtree_blocks(std::size_t b) const {
    std::vector<char> in(tree.blocks.size(), 0);
    in[b] = 1;
    for (std::size_t c = b + 1; c < tree.blocks.size(); ++c) {
      if (tree.blocks[c].parent != none && in[tree.blocks[c].parent]) in[c] = 1;
    }
    return in;
  }

  /// Vertices strictly below the hanging vertex of block b.
  std::vector<char> side_of(std::size_t b) const {
    const auto in = subtree_blocks(b);
    std::vector<char> side(positions.size(), 0);
    for (std::size_t c = 0; c < tree.blocks.size(); ++c) {
      if (!in[c]) continue;
      for (Vertex v : tree.blocks[c].vertices) side[v] = 1;
    }
    side[tree.blocks[b].vertices[0]] = 0;
    return side;
  }
};

template <class T>
bool injective(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

template <class T>
bool is_trivial_image(const std::vector<T>& img, const std::vector<T>& pos) {
  for (std::size_t i = 1; i < img.size(); ++i) {
    if (img[i] - pos[i] != img[0] - pos[0]) return false;
  }
  return true;
}

/// Walks the product of block classes and orientations in a fixed order.
template <class T>
struct Materialized {
  std::vector<std::vector<T>> images;
  bool exact = true;
};

template <class T>
Materialized<T> materialize(const ComponentEngine<T>& engine, const RigidMapOptions& options) {
  Materialized<T> out;
  const std::size_t nb = engine.tree.blocks.size();
  if (nb == 0) {
    out.images.push_back(engine.positions);
    return out;
  }
  std::vector<std::size_t> choice(nb, 0);
  std::vector<int> eps(nb, 1);
  std::size_t walked = 0;
  while (true) {
    if (++walked > options.product_walk_cap) {
      out.exact = false;
      break;
    }
    auto img = engine.compose(choice, eps);
    if (!options.injective_only || injective(img)) {
      if (out.images.size() == options.class_cap) {
        out.exact = false;
        break;
      }
      out.images.push_back(std::move(img));
    }
    // odometer: orientations first (block 0 has none), then class choices
    std::size_t digit = 0;
    bool carry = true;
    while (carry && digit < 2 * nb) {
      if (digit < nb) {
        const std::size_t b = nb - 1 - digit;
        if (b == 0) {
          ++digit;
          continue;
        }
        if (eps[b] == 1) {
          eps[b] = -1;
          carry = false;
        } else {
          eps[b] = 1;
          ++digit;
        }
      } else {
        const std::size_t b = 2 * nb - 1 - digit;
        if (choice[b] + 1 < engine.block_classes[b].size()) {
          ++choice[b];
          carry = false;
        } else {
          choice[b] = 0;
          ++digit;
        }
      }
    }
    if (carry) break;
  }
  return out;
}

/// Fixed-size bitset over local vertex indices.
struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return w[i / 64] >> (i % 64) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  friend bool operator==(const Bits&, const Bits&) = default;
};

/// Groups of equal phi - pos (translations) and phi + pos (reflections).
template <class T>
std::vector<std::vector<std::size_t>> isometric_families(const std::vector<T>& img,
                                                         const std::vector<T>& pos) {
  std::vector<std::vector<std::size_t>> out;
  for (int sign : {1, -1}) {
    std::vector<std::pair<T, std::size_t>> keyed;
    keyed.reserve(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      keyed.push_back({sign > 0 ? T(img[i] - pos[i]) : T(img[i] + pos[i]), i});
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size();) {
      std::size_t j = i;
      std::vector<std::size_t> group;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) group.push_back(keyed[j++].second);
      out.push_back(std::move(group));
      i = j;
    }
  }
  return out;
}

template <class T>
std::size_t max_family(const std::vector<T>& img, const std::vector<T>& pos) {
  std::size_t best = 0;
  for (const auto& f : isometric_families(img, pos)) best = std::max(best, f.size());
  return best;
}

/// Largest set contained in one isometric family of every class; ties go to
/// the lexicographically smallest set of `ids`. Returns ids, ascending.
template <class T>
std::vector<Vertex> best_common_family(const std::vector<std::vector<T>>& images,
                                       const std::vector<T>& pos, const std::vector<Vertex>& ids,
                                       std::size_t node_budget) {
  const std::size_t m = pos.size();
  if (m == 0) return {};
  std::vector<std::vector<Bits>> families;
  for (const auto& img : images) {
    if (is_trivial_image(img, pos)) continue;
    std::vector<Bits> fams;
    for (const auto& group : isometric_families(img, pos)) {
      if (group.size() < 2) continue;
      Bits b(m);
      for (std::size_t i : group) b.set(i);
      fams.push_back(std::move(b));
    }
    std::sort(fams.begin(), fams.end(), [](const Bits& x, const Bits& y) { return x.count() > y.count(); });
    families.push_back(std::move(fams));
  }
  std::stable_sort(families.begin(), families.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });

  auto to_ids = [&](const Bits& b) {
    std::vector<Vertex> v;
    for (std::size_t i = 0; i < m; ++i)
      if (b.test(i)) v.push_back(ids[i]);
    std::sort(v.begin(), v.end());
    return v;
  };

  std::vector<Vertex> best{*std::min_element(ids.begin(), ids.end())};
  Bits all(m);
  for (std::size_t i = 0; i < m; ++i) all.set(i);
  std::unordered_set<std::string> seen;
  std::size_t nodes = 0;

  auto consider = [&](const Bits& s) {
    auto v = to_ids(s);
    if (v.size() > best.size() || (v.size() == best.size() && v < best)) best = std::move(v);
  };

  auto rec = [&](auto&& self, std::size_t k, const Bits& s) -> void {
    if (k == families.size()) {
      consider(s);
      return;
    }
    for (const Bits& f : families[k]) {
      Bits x = s & f;
      const std::size_t c = x.count();
      if (c < 2 || c < best.size()) continue;
      if (++nodes > node_budget) {
        fail(ErrorKind::resource, "reconstructible-set search exceeded " +
                                      std::to_string(node_budget) + " nodes");
      }
      std::string key(reinterpret_cast<const char*>(x.w.data()), x.w.size() * 8);
      key += std::to_string(k);
      if (!seen.insert(std::move(key)).second) continue;
      self(self, k + 1, x);
    }
  };
  rec(rec, 0, all);
  return best;
}

/// phi restricted to the listed indices is x -> +-x + c.
template <class T>
bool isometric_on(const std::vector<T>& img, const std::vector<T>& pos,
                  const std::vector<std::size_t>& subset) {
  if (subset.size() <= 1) return true;
  const std::size_t u0 = subset[0];
  bool translation = true, reflection = true;
  for (std::size_t u : subset) {
    if (img[u] - pos[u] != img[u0] - pos[u0]) translation = false;
    if (img[u] + pos[u] != img[u0] + pos[u0]) reflection = false;
  }
  return translation || reflection;
}

}  // namespace rigidity::detail
