#include "rigidity/counting.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "rigidity/audits.hpp"
#include "rigidity/error.hpp"

namespace rigidity {

BigInt count_spanning_trees(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) fail(ErrorKind::precondition, "count_spanning_trees: empty graph");
  if (n == 1) return 1;
  // Reduced Laplacian (drop vertex 0), determinant by fraction-free elimination.
  const std::size_t m = n - 1;
  std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m, 0));
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    if (e.u > 0) a[e.u - 1][e.u - 1] += 1;
    if (e.v > 0) a[e.v - 1][e.v - 1] += 1;
    if (e.u > 0 && e.v > 0) {
      a[e.u - 1][e.v - 1] -= 1;
      a[e.v - 1][e.u - 1] -= 1;
    }
  }
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < m && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == m) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  BigInt det = a[m - 1][m - 1];
  return sign < 0 ? BigInt(-det) : det;
}

namespace {

class PartitionCounter {
 public:
  explicit PartitionCounter(const Multigraph& g) : n_(g.vertex_count()), nb_(n_, 0) {
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(v)) nb_[v] |= 1u << w;
    }
  }

  BigInt count(std::uint32_t remaining) {
    if (remaining == 0) return 1;
    if (auto it = memo_.find(remaining); it != memo_.end()) return it->second;
    const std::uint32_t low = remaining & (~remaining + 1);
    const std::uint32_t rest = remaining ^ low;
    BigInt total = 0;
    // every part containing the lowest remaining vertex
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t part = sub | low;
      if (connected(part)) total += count(remaining ^ part);
      if (sub == 0) break;
    }
    memo_.emplace(remaining, total);
    return total;
  }

 private:
  bool connected(std::uint32_t part) const {
    std::uint32_t seen = part & (~part + 1);
    std::uint32_t frontier = seen;
    while (frontier != 0) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
        next |= nb_[static_cast<std::size_t>(std::countr_zero(f))];
      }
      next &= part & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == part;
  }

  std::size_t n_;
  std::vector<std::uint32_t> nb_;
  std::unordered_map<std::uint32_t, BigInt> memo_;
};

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string describe(const Rational& q) { return format_rational(q); }

}  // namespace

BigInt count_connected_partitions(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 24) fail(ErrorKind::size, "count_connected_partitions: at most 24 vertices");
  if (n == 0) return 1;
  PartitionCounter counter(g);
  return counter.count(static_cast<std::uint32_t>((1ull << n) - 1));
}

bool partition_hypothesis_holds(std::size_t max_degree, std::size_t k, const Rational& c) {
  // (10 D)^q <= k^p where c = p/q
  const unsigned long p = c.get_num().get_ui();
  const unsigned long q = c.get_den().get_ui();
  return ipow(BigInt(static_cast<unsigned long>(10 * max_degree)), q) <=
         ipow(BigInt(static_cast<unsigned long>(k)), p);
}

BoundResult combinatorial_bounds(const BoundQuery& query) {
  const Multigraph* g = query.graph ? &*query.graph : nullptr;
  std::size_t delta = query.max_degree;
  if (delta == 0 && g != nullptr) delta = g->max_degree();
  std::size_t size = query.size;
  if (size == 0 && g != nullptr && query.kind != BoundKind::subgraphs) size = g->vertex_count();
  if (query.want_exact && g == nullptr) {
    fail(ErrorKind::validation, "combinatorial_bounds: exact count needs a graph");
  }
  if (query.want_exact && g->vertex_count() > query.exact_cap) {
    fail(ErrorKind::size, "combinatorial_bounds: exact count limited to " +
                              std::to_string(query.exact_cap) + " vertices");
  }

  BoundResult out;
  const double e = std::exp(1.0);
  switch (query.kind) {
    case BoundKind::subgraphs: {
      if (size == 0) fail(ErrorKind::validation, "combinatorial_bounds: subgraph size must be >= 1");
      if (delta < 3) {
        fail(ErrorKind::precondition,
             "combinatorial_bounds: hypothesis max degree >= 3 violated (max degree " +
                 std::to_string(delta) + ")");
      }
      const double base = e * static_cast<double>(delta - 1);
      if (query.cumulative) {
        double sum = 0.0;
        for (std::size_t j = 0; j < size; ++j) sum += std::pow(base, static_cast<double>(j));
        out.bound = sum;
        out.log_bound = std::log(sum);
      } else {
        out.log_bound = static_cast<double>(size - 1) * std::log(base);
        out.bound = std::exp(out.log_bound);
      }
      if (query.want_exact) {
        if (query.root >= g->vertex_count()) fail(ErrorKind::validation, "combinatorial_bounds: bad root");
        std::size_t count = 0;
        enumerate_connected_subsets(*g, query.root, size, [&](std::span<const Vertex> s) {
          if (query.cumulative || s.size() == size) ++count;
          return true;
        });
        out.exact = BigInt(static_cast<unsigned long>(count));
      }
      break;
    }
    case BoundKind::partitions: {
      if (size == 0) fail(ErrorKind::validation, "combinatorial_bounds: partitions need |V| >= 1");
      if (query.c <= 0 || query.c >= 1) fail(ErrorKind::domain, "combinatorial_bounds: c must lie in (0,1)");
      if (!partition_hypothesis_holds(delta, size, query.c)) {
        fail(ErrorKind::precondition,
             "combinatorial_bounds: hypothesis max degree <= |V|^c/10 violated (" +
                 std::to_string(delta) + " > " + std::to_string(size) + "^(" + describe(query.c) +
                 ")/10)");
      }
      const double k = static_cast<double>(size);
      out.log_bound = to_double(query.c) * k * std::log(k);
      out.bound = std::exp(out.log_bound);
      if (query.want_exact) out.exact = count_connected_partitions(*g);
      break;
    }
    case BoundKind::spanning_trees: {
      if (size == 0) fail(ErrorKind::validation, "combinatorial_bounds: spanning trees need |V| >= 1");
      if (delta == 0) fail(ErrorKind::precondition, "combinatorial_bounds: hypothesis max degree > 0 violated");
      out.log_bound = 1.0 + static_cast<double>(size - 1) * std::log(e * static_cast<double>(delta) / 2.0);
      out.bound = std::exp(out.log_bound);
      if (query.want_exact) out.exact = count_spanning_trees(*g);
      break;
    }
  }
  if (out.exact) {
    const double ex = out.exact->get_d();
    if (ex > 0 && std::log(ex) > out.log_bound + 1e-9) {
      fail(ErrorKind::indeterminate, "combinatorial_bounds: exact count exceeds the bound");
    }
  }
  return out;
}

}  // namespace rigidity
