#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "rigidity/error.hpp"
#include "rigidity/randmodels.hpp"

namespace rigidity {

namespace {

std::size_t degree_total(const std::vector<std::size_t>& degrees) {
  std::size_t s = 0;
  for (std::size_t d : degrees) s += d;
  return s;
}

void require_even(const std::vector<std::size_t>& degrees, const char* who) {
  if (degree_total(degrees) % 2 != 0) fail(ErrorKind::parity, std::string(who) + ": degree sum is odd");
}

class MultigraphCounter {
 public:
  BigInt count(std::vector<std::size_t> d) {
    d.erase(std::remove(d.begin(), d.end(), std::size_t{0}), d.end());
    std::sort(d.begin(), d.end(), std::greater<>());
    if (d.empty()) return 1;
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    const std::size_t first = d[0];
    std::vector<std::size_t> rest(d.begin() + 1, d.end());
    BigInt total = 0;
    for (std::size_t loops = 0; 2 * loops <= first; ++loops) {
      distribute(rest, 0, first - 2 * loops, total);
    }
    memo_.emplace(std::move(d), total);
    return total;
  }

 private:
  // spread `left` edges from the removed vertex over rest[i..]
  void distribute(std::vector<std::size_t>& rest, std::size_t i, std::size_t left, BigInt& total) {
    if (left == 0) {
      total += count(rest);
      return;
    }
    if (i == rest.size()) return;
    const std::size_t cap = std::min(left, rest[i]);
    for (std::size_t m = 0; m <= cap; ++m) {
      rest[i] -= m;
      distribute(rest, i + 1, left - m, total);
      rest[i] += m;
    }
  }

  std::map<std::vector<std::size_t>, BigInt> memo_;
};

BigInt factorial(std::size_t k) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

}  // namespace

BigInt count_multigraphs(const std::vector<std::size_t>& degrees) {
  require_even(degrees, "count_multigraphs");
  MultigraphCounter counter;
  return counter.count(degrees);
}

BigInt count_multigraphs_by_matchings(const std::vector<std::size_t>& degrees) {
  require_even(degrees, "count_multigraphs_by_matchings");
  if (degree_total(degrees) > 14) fail(ErrorKind::size, "matching enumeration limited to degree sum 14");
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < degrees.size(); ++v)
    for (std::size_t k = 0; k < degrees[v]; ++k) stubs.push_back(v);
  std::vector<char> used(stubs.size(), 0);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::set<std::vector<std::pair<Vertex, Vertex>>> seen;
  std::function<void()> rec = [&] {
    std::size_t i = 0;
    while (i < stubs.size() && used[i]) ++i;
    if (i == stubs.size()) {
      auto key = pairs;
      std::sort(key.begin(), key.end());
      seen.insert(std::move(key));
      return;
    }
    used[i] = 1;
    for (std::size_t j = i + 1; j < stubs.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      pairs.push_back({std::min(stubs[i], stubs[j]), std::max(stubs[i], stubs[j])});
      rec();
      pairs.pop_back();
      used[j] = 0;
    }
    used[i] = 0;
  };
  rec();
  return static_cast<unsigned long>(seen.size());
}

std::vector<std::pair<Vertex, Vertex>> multigraph_key(const Multigraph& g) {
  std::vector<std::pair<Vertex, Vertex>> key;
  key.reserve(g.edge_count());
  for (const Edge& e : g.edges()) key.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::sort(key.begin(), key.end());
  return key;
}

BigInt matchings_producing(const Multigraph& g) {
  BigInt num = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) num *= factorial(g.degree(v));
  const auto key = multigraph_key(g);
  BigInt den = 1;
  for (std::size_t i = 0; i < key.size();) {
    std::size_t j = i;
    while (j < key.size() && key[j] == key[i]) ++j;
    const std::size_t mult = j - i;
    den *= factorial(mult);
    if (key[i].first == key[i].second) {
      BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, mult);
      den *= p;
    }
    i = j;
  }
  return num / den;
}

std::vector<Multigraph> enumerate_multigraphs(const std::vector<std::size_t>& degrees, std::size_t cap) {
  require_even(degrees, "enumerate_multigraphs");
  const std::size_t n = degrees.size();
  std::vector<std::size_t> rem = degrees;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Multigraph> out;
  // vertex v: loops first, then edges to later vertices
  std::function<void(Vertex)> at_vertex;
  std::function<void(Vertex, Vertex)> spread = [&](Vertex v, Vertex w) {
    if (rem[v] == 0) {
      at_vertex(v + 1);
      return;
    }
    if (w >= n) return;
    const std::size_t top = std::min(rem[v], rem[w]);
    for (std::size_t m = 0; m <= top; ++m) {
      for (std::size_t k = 0; k < m; ++k) edges.push_back({v, w});
      rem[v] -= m;
      rem[w] -= m;
      spread(v, w + 1);
      rem[v] += m;
      rem[w] += m;
      edges.resize(edges.size() - m);
    }
  };
  at_vertex = [&](Vertex v) {
    if (v == n) {
      if (out.size() >= cap) fail(ErrorKind::size, "enumerate_multigraphs: more than " + std::to_string(cap));
      auto sorted = edges;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(build_multigraph(n, sorted));
      return;
    }
    const std::size_t d = rem[v];
    for (std::size_t loops = 0; 2 * loops <= d; ++loops) {
      for (std::size_t k = 0; k < loops; ++k) edges.push_back({v, v});
      rem[v] -= 2 * loops;
      spread(v, v + 1);
      rem[v] += 2 * loops;
      edges.resize(edges.size() - loops);
    }
  };
  at_vertex(0);
  return out;
}

GmCount gm_estimate_and_exact_count(const std::vector<std::size_t>& degrees, bool want_exact,
                                    std::size_t exact_cap) {
  require_even(degrees, "gm_estimate_and_exact_count");
  const std::size_t m1 = degree_total(degrees);
  GmCount out;
  if (m1 == 0) {
    out.estimate = 1.0;
  } else {
    double m2 = 0.0;
    double log_fact_sum = 0.0;
    for (std::size_t d : degrees) {
      m2 += static_cast<double>(d) * (static_cast<double>(d) - 1.0);
      log_fact_sum += std::lgamma(static_cast<double>(d) + 1.0);
    }
    const double half = static_cast<double>(m1) / 2.0;
    const double x = m2 / (2.0 * static_cast<double>(m1));
    out.log_estimate = std::lgamma(static_cast<double>(m1) + 1.0) - std::lgamma(half + 1.0) -
                       half * std::log(2.0) - log_fact_sum + x + x * x;
    out.estimate = std::exp(out.log_estimate);
  }
  if (want_exact) {
    if (m1 > exact_cap) {
      fail(ErrorKind::size, "gm_estimate_and_exact_count: exact count limited to degree sum " +
                                std::to_string(exact_cap));
    }
    out.exact = count_multigraphs(degrees);
  }
  return out;
}

}  // namespace rigidity
