#include <algorithm>
#include <cmath>
#include <set>

#include "rigidity/distributions.hpp"
#include "rigidity/error.hpp"
#include "rigidity/randmodels.hpp"

namespace rigidity {

const char* to_string(KernelLaw law) noexcept {
  return law == KernelLaw::pairing ? "pairing" : "uniform";
}

const char* to_string(RegularMethod method) noexcept {
  switch (method) {
    case RegularMethod::automatic: return "automatic";
    case RegularMethod::rejection: return "rejection";
    case RegularMethod::switch_chain: return "switch_chain";
  }
  return "?";
}

Multigraph sample_gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::domain, "sample_gnp: p must lie in [0,1]");
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (p == 0.0 || n < 2) return build_multigraph(n, edges);
  if (p == 1.0) {
    for (Vertex v = 1; v < n; ++v)
      for (Vertex w = 0; w < v; ++w) edges.push_back({w, v});
    return build_multigraph(n, edges);
  }
  // skip over absent pairs (v,w), w < v, with geometric gaps
  const double lp = std::log1p(-p);
  std::size_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.uniform01();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / lp));
    while (w >= static_cast<std::int64_t>(v) && v < n) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) edges.push_back({static_cast<Vertex>(w), v});
  }
  return build_multigraph(n, edges);
}

Multigraph sample_gnp(std::size_t n, const Rational& p, Rng& rng) {
  if (p < 0 || p > 1) fail(ErrorKind::domain, "sample_gnp: p must lie in [0,1]");
  return sample_gnp(n, to_double(p), rng);
}

std::vector<std::size_t> DegreeSequenceSample::kernel_degrees() const {
  std::vector<std::size_t> out;
  for (std::size_t d : degrees)
    if (d > 0) out.push_back(d);
  return out;
}

DegreeSequenceSample sample_degree_sequence(const ModelParams& params, Rng& rng) {
  if (params.lambda <= 1) fail(ErrorKind::domain, "sample_degree_sequence: lambda must exceed 1");
  if (params.n == 0) fail(ErrorKind::domain, "sample_degree_sequence: n must be >= 1");
  const double mean = to_double(params.lambda) - params.mu;
  const double sd = 1.0 / std::sqrt(static_cast<double>(params.n));
  DegreeSequenceSample s;
  s.raw.resize(params.n);
  while (true) {
    ++s.attempts;
    double cap_lambda;
    do {
      cap_lambda = mean + sd * sample_standard_normal(rng);
    } while (!(cap_lambda > 0.0));
    std::size_t kernel_sum = 0;
    for (std::size_t u = 0; u < params.n; ++u) {
      s.raw[u] = sample_poisson(cap_lambda, rng);
      if (s.raw[u] >= 3) kernel_sum += s.raw[u];
    }
    if (kernel_sum % 2 == 0) {
      s.capital_lambda = cap_lambda;
      break;
    }
  }
  s.degrees.resize(params.n);
  for (std::size_t u = 0; u < params.n; ++u) {
    s.degrees[u] = s.raw[u] >= 3 ? s.raw[u] : 0;
    if (s.degrees[u] > 0) {
      ++s.kernel_vertex_count;
      ++s.counts_by_degree[s.degrees[u]];
    }
  }
  return s;
}

Multigraph sample_pairing(const std::vector<std::size_t>& degrees, Rng& rng) {
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < degrees.size(); ++v)
    for (std::size_t k = 0; k < degrees[v]; ++k) stubs.push_back(v);
  if (stubs.size() % 2 != 0) fail(ErrorKind::parity, "sample_pairing: degree sum is odd");
  shuffle(stubs, rng);
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
  return build_multigraph(degrees.size(), edges);
}

ModelLSample sample_model_L(const ModelParams& params, Rng& rng, KernelLaw law, std::size_t uniform_cap) {
  ModelLSample s;
  s.kernel_law = law;
  s.degseq = sample_degree_sequence(params, rng);
  const auto kdeg = s.degseq.kernel_degrees();
  if (kdeg.empty()) {
    s.empty = true;
    return s;
  }
  if (law == KernelLaw::pairing) {
    s.kernel = sample_pairing(kdeg, rng);
  } else {
    const auto all = enumerate_multigraphs(kdeg, uniform_cap);
    s.kernel = all[rng.below(all.size())];
  }
  s.path_lengths.reserve(s.kernel.edge_count());
  for (std::size_t e = 0; e < s.kernel.edge_count(); ++e) {
    s.path_lengths.push_back(static_cast<std::size_t>(sample_geometric(params.mu, rng)));
  }
  s.decomposition = assemble_core(s.kernel, s.path_lengths);
  s.core = s.decomposition.core;
  return s;
}

ModelUSample sample_model_U(const ModelParams& params, const LineEmbedding& ambient, Rng& rng, KernelLaw law) {
  if (ambient.size() != params.n) {
    fail(ErrorKind::validation, "sample_model_U: ambient set must have n positions");
  }
  ModelUSample out;
  out.model = sample_model_L(params, rng, law);
  const std::size_t k = out.model.core.vertex_count();
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (k > params.n) {
    out.fallback = true;
    for (Vertex v = 1; v < params.n; ++v)
      for (Vertex w = 0; w < v; ++w) edges.push_back({w, v});
    out.graph = build_multigraph(params.n, edges);
    return out;
  }
  out.injection = random_injection(k, params.n, rng);
  for (const Edge& e : out.model.core.edges()) edges.push_back({out.injection[e.u], out.injection[e.v]});
  out.graph = build_multigraph(params.n, edges);
  return out;
}

namespace {

bool is_simple(const Multigraph& g) {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) return false;
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) return false;
  }
  return true;
}

Multigraph switch_chain(std::size_t n, std::size_t d, Rng& rng, std::size_t sweeps) {
  // circulant start: offsets 1..d/2, plus the antipodal matching when d is odd
  std::vector<Vertex> label(n);
  for (Vertex v = 0; v < n; ++v) label[v] = v;
  shuffle(label, rng);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t k = 1; k <= d / 2; ++k) edges.push_back({label[v], label[(v + k) % n]});
    if (d % 2 == 1 && v < n / 2) edges.push_back({label[v], label[v + n / 2]});
  }
  std::set<std::pair<Vertex, Vertex>> present;
  auto key = [](Vertex a, Vertex b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (const auto& [a, b] : edges) present.insert(key(a, b));
  const std::size_t m = edges.size();
  const std::size_t steps = sweeps * m;
  for (std::size_t step = 0; step < steps; ++step) {
    const std::size_t i = rng.below(m);
    const std::size_t j = rng.below(m);
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, e] = edges[j];
    if (rng.bernoulli(0.5)) std::swap(c, e);
    // (a,b),(c,e) -> (a,c),(b,e)
    if (a == c || b == e || a == e || b == c) continue;
    if (present.count(key(a, c)) || present.count(key(b, e))) continue;
    present.erase(key(a, b));
    present.erase(key(c, e));
    present.insert(key(a, c));
    present.insert(key(b, e));
    edges[i] = {a, c};
    edges[j] = {b, e};
  }
  return build_multigraph(n, edges);
}

}  // namespace

RegularSample sample_regular_simple(std::size_t n, std::size_t d, Rng& rng, std::size_t attempt_cap,
                                    RegularMethod method, std::size_t switch_sweeps) {
  if ((n * d) % 2 != 0) fail(ErrorKind::parity, "sample_regular_simple: n*d is odd");
  if (d >= n) fail(ErrorKind::domain, "sample_regular_simple: need d < n");
  if (method == RegularMethod::automatic) {
    // pairing model is simple with probability about exp((1 - d^2)/4)
    const double log_accept = (1.0 - static_cast<double>(d * d)) / 4.0;
    method = log_accept >= std::log(1e-4) ? RegularMethod::rejection : RegularMethod::switch_chain;
  }
  RegularSample out;
  out.method_used = method;
  if (method == RegularMethod::switch_chain) {
    out.graph = switch_chain(n, d, rng, switch_sweeps);
    out.attempts = 1;
    return out;
  }
  const std::vector<std::size_t> degrees(n, d);
  for (std::size_t attempt = 1; attempt <= attempt_cap; ++attempt) {
    auto g = sample_pairing(degrees, rng);
    if (is_simple(g)) {
      out.graph = std::move(g);
      out.attempts = attempt;
      return out;
    }
  }
  fail(ErrorKind::resource, "sample_regular_simple: no simple graph in " + std::to_string(attempt_cap) + " attempts");
}

}  // namespace rigidity
