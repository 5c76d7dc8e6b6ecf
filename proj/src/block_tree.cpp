#include <algorithm>
#include <deque>

#include "line_engine.hpp"

namespace rigidity::detail {

Int128 to_int128(const BigInt& z) {
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  if (bits > 126) fail(ErrorKind::resource, "integer too large for 128-bit arithmetic");
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
  Int128 magnitude = (static_cast<Int128>(limbs[1]) << 64) | limbs[0];
  return sgn(z) < 0 ? -magnitude : magnitude;
}

BigInt to_big(Int128 x) {
  const bool negative = x < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  std::uint64_t limbs[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  BigInt z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  return negative ? BigInt(-z) : z;
}

bool fits_int128(const std::vector<BigInt>& scaled, std::size_t edge_count) {
  std::size_t bits = 0;
  for (const BigInt& z : scaled) bits = std::max(bits, mpz_sizeinbase(z.get_mpz_t(), 2));
  std::size_t factor_bits = std::bit_width(4 * (edge_count + 2));
  // |phi| <= (2|E|+1) max|pos|; differences and sums double that.
  return bits + factor_bits + 2 <= 124;
}

namespace {

std::vector<std::vector<EdgeId>> edge_blocks(const Multigraph& g, Vertex root) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> disc(n, none), low(n, 0);
  std::vector<std::vector<EdgeId>> blocks;
  std::vector<EdgeId> stack;
  struct Frame {
    Vertex v;
    EdgeId parent_edge;
    std::size_t next;
  };
  std::vector<Frame> frames;
  std::size_t timer = 0;
  disc[root] = low[root] = timer++;
  frames.push_back({root, none, 0});
  while (!frames.empty()) {
    Frame& f = frames.back();
    const auto& inc = g.incident(f.v);
    if (f.next < inc.size()) {
      const EdgeId e = inc[f.next++];
      const Edge& ed = g.edge(e);
      if (ed.is_loop() || e == f.parent_edge) continue;
      const Vertex w = ed.other(f.v);
      if (disc[w] == none) {
        stack.push_back(e);
        disc[w] = low[w] = timer++;
        frames.push_back({w, e, 0});
      } else if (disc[w] < disc[f.v]) {
        stack.push_back(e);
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const Vertex w = f.v;
    const EdgeId pe = f.parent_edge;
    frames.pop_back();
    if (frames.empty()) break;
    const Vertex v = frames.back().v;
    low[v] = std::min(low[v], low[w]);
    if (low[w] >= disc[v]) {
      std::vector<EdgeId> block;
      while (true) {
        const EdgeId top = stack.back();
        stack.pop_back();
        block.push_back(top);
        if (top == pe) break;
      }
      std::sort(block.begin(), block.end());
      blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

BlockPlan make_plan(const Multigraph& g, const BlockInfo& block) {
  const std::size_t m = block.vertices.size();
  std::vector<std::size_t> local(g.vertex_count(), none);
  for (std::size_t i = 0; i < m; ++i) local[block.vertices[i]] = i;
  // local adjacency: (edge position in block.edges, neighbour)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(m);
  for (std::size_t k = 0; k < block.edges.size(); ++k) {
    const Edge& e = g.edge(block.edges[k]);
    adj[local[e.u]].push_back({k, local[e.v]});
    adj[local[e.v]].push_back({k, local[e.u]});
  }
  std::vector<char> placed(m, 0), done(block.edges.size(), 0);
  BlockPlan plan;
  // lowest-index edge at the hanging vertex (block.edges is ascending)
  std::size_t first = none;
  for (const auto& [k, w] : adj[0]) first = std::min(first, k);
  const Edge& fe = g.edge(block.edges[first]);
  plan.first_other = local[fe.other(block.vertices[0])];
  placed[0] = placed[plan.first_other] = 1;
  for (const auto& [k, w] : adj[0]) {
    if (w == plan.first_other) done[k] = 1;
  }
  std::size_t placed_count = 2;

  std::vector<std::size_t> depth(m), parent(m), parent_edge(m);
  while (placed_count < m) {
    std::vector<std::size_t> best_path;
    std::vector<std::size_t> best_edges;
    for (std::size_t a = 0; a < m; ++a) {
      if (!placed[a]) continue;
      std::fill(depth.begin(), depth.end(), none);
      std::deque<std::size_t> queue;
      depth[a] = 0;
      queue.push_back(a);
      bool found = false;
      while (!queue.empty() && !found) {
        const std::size_t x = queue.front();
        queue.pop_front();
        if (!best_path.empty() && depth[x] + 2 >= best_path.size()) break;
        for (const auto& [k, w] : adj[x]) {
          if (done[k]) continue;
          if (placed[w]) {
            if (x == a || w == a) continue;
            std::vector<std::size_t> path{w}, edges{k};
            for (std::size_t y = x; y != a; y = parent[y]) {
              path.push_back(y);
              edges.push_back(parent_edge[y]);
            }
            path.push_back(a);
            std::reverse(path.begin(), path.end());
            std::reverse(edges.begin(), edges.end());
            if (best_path.empty() || path.size() < best_path.size()) {
              best_path = std::move(path);
              best_edges = std::move(edges);
            }
            found = true;
            break;
          }
          if (depth[w] == none) {
            depth[w] = depth[x] + 1;
            parent[w] = x;
            parent_edge[w] = k;
            queue.push_back(w);
          }
        }
      }
    }
    if (best_path.empty()) fail(ErrorKind::precondition, "block without an ear (not biconnected)");
    EarStep step;
    step.path = best_path;
    for (std::size_t k : best_edges) done[k] = 1;
    for (std::size_t i = 1; i + 1 < best_path.size(); ++i) {
      placed[best_path[i]] = 1;
      ++placed_count;
    }
    for (std::size_t i = 1; i + 1 < best_path.size(); ++i) {
      const std::size_t x = best_path[i];
      for (const auto& [k, w] : adj[x]) {
        if (done[k] || !placed[w]) continue;
        done[k] = 1;
        step.chords.push_back({x, w});
      }
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace

BlockTree build_block_tree(const Multigraph& g) {
  BlockTree tree;
  const std::size_t n = g.vertex_count();
  if (n == 0) return tree;
  tree.root = 0;
  for (EdgeId e : g.incident(0)) {
    if (!g.edge(e).is_loop()) {
      tree.root_edge = e;
      break;
    }
  }
  if (tree.root_edge == none) return tree;  // single vertex (connected input)

  const auto raw = edge_blocks(g, tree.root);
  std::vector<std::vector<std::size_t>> blocks_at(n);
  std::size_t root_block = none;
  for (std::size_t b = 0; b < raw.size(); ++b) {
    std::vector<Vertex> vs;
    for (EdgeId e : raw[b]) {
      vs.push_back(g.edge(e).u);
      vs.push_back(g.edge(e).v);
      if (e == tree.root_edge) root_block = b;
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (Vertex v : vs) blocks_at[v].push_back(b);
  }

  std::vector<std::size_t> order_of(raw.size(), none);
  std::deque<std::pair<std::size_t, Vertex>> queue{{root_block, tree.root}};
  order_of[root_block] = 0;
  std::vector<std::size_t> parent_raw(raw.size(), none);
  while (!queue.empty()) {
    const auto [b, attach] = queue.front();
    queue.pop_front();
    BlockInfo info;
    info.edges = raw[b];
    std::vector<Vertex> vs;
    for (EdgeId e : raw[b]) {
      vs.push_back(g.edge(e).u);
      vs.push_back(g.edge(e).v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    info.vertices.push_back(attach);
    for (Vertex v : vs)
      if (v != attach) info.vertices.push_back(v);
    info.parent = parent_raw[b] == none ? none : order_of[parent_raw[b]];
    const std::size_t my_index = tree.blocks.size();
    order_of[b] = my_index;
    for (Vertex x : info.vertices) {
      for (std::size_t c : blocks_at[x]) {
        if (c == b || parent_raw[c] != none || c == root_block) continue;
        parent_raw[c] = b;
        queue.push_back({c, x});
      }
    }
    tree.blocks.push_back(std::move(info));
  }
  if (tree.blocks.size() != raw.size()) fail(ErrorKind::precondition, "graph is disconnected");
  for (const auto& blk : tree.blocks) tree.plans.push_back(make_plan(g, blk));
  return tree;
}

}  // namespace rigidity::detail
