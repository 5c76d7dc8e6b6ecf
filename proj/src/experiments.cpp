#include "rigidity/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <new>
#include <numeric>
#include <set>
#include <thread>

#include "rigidity/audits.hpp"
#include "rigidity/decomposition.hpp"
#include "rigidity/distributions.hpp"
#include "rigidity/embedding.hpp"
#include "rigidity/error.hpp"
#include "rigidity/events.hpp"
#include "rigidity/rigid_maps.hpp"
#include "rigidity/rng.hpp"
#include "rigidity_version.hpp"

namespace rigidity {

namespace {

enum Param : unsigned { P_N = 1, P_LAMBDA = 2, P_BETA = 4, P_C = 8, P_CA = 16, P_D = 32, P_S = 64, P_AMBIENT = 128 };

const std::vector<std::string> kRigidCaps{"class", "work", "ear", "product_walk", "family_nodes"};

struct Spec {
  unsigned params;
  std::vector<std::string> caps;
  std::vector<std::string> columns;
  std::function<void(ExperimentConfig&)> defaults;
  std::function<std::vector<Cell>(const ExperimentConfig&, Rng&, const void* shared)> trial;
  std::function<Json(const ExperimentResult&)> aggregate;
  std::function<std::shared_ptr<void>(const ExperimentConfig&)> prepare;
};

template <class T>
void set_default(std::optional<T>& field, T value) {
  if (!field) field = std::move(value);
}

void cap_default(ExperimentConfig& c, const std::string& name, std::uint64_t value) {
  c.caps.emplace(name, value);
}

void rigid_cap_defaults(ExperimentConfig& c) {
  const RigidMapOptions d;
  cap_default(c, "class", d.class_cap);
  cap_default(c, "work", d.work_cap);
  cap_default(c, "ear", d.ear_cap);
  cap_default(c, "product_walk", d.product_walk_cap);
  cap_default(c, "family_nodes", d.family_node_budget);
}

RigidMapOptions rigid_options(const ExperimentConfig& c) {
  RigidMapOptions o;
  o.class_cap = c.caps.at("class");
  o.work_cap = c.caps.at("work");
  o.ear_cap = c.caps.at("ear");
  o.product_walk_cap = c.caps.at("product_walk");
  o.family_node_budget = c.caps.at("family_nodes");
  return o;
}

std::size_t as_size(std::uint64_t v) { return static_cast<std::size_t>(v); }

ModelParams params_of(const ExperimentConfig& c, std::uint64_t seed) {
  return make_params(as_size(*c.n), *c.lambda, seed);
}

// Largest component of the 2-core of G(n, lambda/n).
Multigraph sampled_core(const ExperimentConfig& c, Rng& rng) {
  const Rational p = *c.lambda / Rational(static_cast<unsigned long>(*c.n));
  if (p > 1) fail(ErrorKind::domain, "lambda/n exceeds 1");
  const Multigraph g = sample_gnp(as_size(*c.n), p, rng);
  return largest_component(two_core(g).graph).graph;
}

std::vector<double> column_values(const ExperimentResult& r, const std::string& column) {
  std::vector<double> out;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const Cell& x = r.cell(i, column);
    if (const auto* d = std::get_if<double>(&x)) out.push_back(*d);
    else if (const auto* k = std::get_if<std::int64_t>(&x)) out.push_back(static_cast<double>(*k));
    else if (const auto* b = std::get_if<bool>(&x)) out.push_back(*b ? 1.0 : 0.0);
  }
  return out;
}

Json median_of(std::vector<double> v) {
  if (v.empty()) return nullptr;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

Json mean_of(const std::vector<double>& v) {
  if (v.empty()) return nullptr;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Json min_of(const std::vector<double>& v) {
  if (v.empty()) return nullptr;
  return *std::min_element(v.begin(), v.end());
}

Json summary_stats(const ExperimentResult& r, const std::string& column) {
  const auto v = column_values(r, column);
  Json j;
  j["count"] = v.size();
  j["mean"] = mean_of(v);
  j["median"] = median_of(v);
  j["min"] = min_of(v);
  return j;
}

// ---- theorem1-desk: reconstructible share of the 2-core

std::vector<Cell> coverage_trial(const ExperimentConfig& c, Rng& rng, const void*) {
  const Multigraph core = sampled_core(c, rng);
  const std::size_t nv = core.vertex_count();
  if (nv == 0) return {std::int64_t{0}, std::int64_t{0}, std::int64_t{0}, std::monostate{}};
  const auto d = kernel_decompose(core);
  const auto emb = random_integer_embedding(nv, rng);
  const auto best = largest_reconstructible_set(core, emb, rigid_options(c));
  return {static_cast<std::int64_t>(nv), static_cast<std::int64_t>(d.kernel.vertex_count()),
          static_cast<std::int64_t>(best.size()), static_cast<double>(best.size()) / static_cast<double>(nv)};
}

Json coverage_aggregate(const ExperimentResult& r) {
  Json j;
  j["ratio"] = summary_stats(r, "ratio");
  j["R"] = summary_stats(r, "R");
  std::size_t empty = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    if (r.rows[i].status == "ok" && std::get<std::int64_t>(r.cell(i, "core_vertices")) == 0) ++empty;
  j["empty_cores"] = empty;
  return j;
}

// ---- toy17

double eigen_threshold(const ExperimentConfig& c) {
  return 2.0 * std::sqrt(static_cast<double>(*c.d) - 1.0) + 0.01;
}

std::vector<Cell> toy17_trial(const ExperimentConfig& c, Rng& rng, const void*) {
  const std::size_t n = as_size(*c.n);
  const auto sample = sample_regular_simple(n, as_size(*c.d), rng, as_size(c.caps.at("attempts")),
                                            RegularMethod::automatic, as_size(c.caps.at("sweeps")));
  const auto emb = random_integer_embedding(n, rng);
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  const bool rec = is_reconstructible(sample.graph, emb, all, rigid_options(c)).holds;
  const auto spec = second_adjacency_eigenvalue(sample.graph);
  const double thr = eigen_threshold(c);
  return {std::string(to_string(sample.method_used)), rec, spec.second_magnitude, thr,
          spec.second_magnitude <= thr};
}

Json fraction_true(const ExperimentResult& r, const std::string& column) {
  const auto v = column_values(r, column);
  return mean_of(v);
}

Json toy17_aggregate(const ExperimentResult& r) {
  Json j;
  j["fraction_reconstructible"] = fraction_true(r, "reconstructible");
  j["fraction_below_threshold"] = fraction_true(r, "below_threshold");
  j["second_eigenvalue"] = summary_stats(r, "second_eigenvalue");
  return j;
}

// ---- eventd-census

std::vector<Cell> eventd_trial(const ExperimentConfig& c, Rng& rng, const void*) {
  const auto s = sample_model_L(params_of(c, 0), rng);
  if (s.empty) return {std::int64_t{0}, std::int64_t{0}, std::monostate{}, false};
  std::optional<std::size_t> cap;
  if (const auto it = c.caps.find("eventd"); it != c.caps.end()) cap = as_size(it->second);
  const auto census = event_D_census(s.decomposition, *c.beta, as_size(*c.n), cap);
  return {static_cast<std::int64_t>(s.kernel.vertex_count()), static_cast<std::int64_t>(census.holding.size()),
          to_double(census.fraction), census.any_truncated};
}

Json eventd_aggregate(const ExperimentResult& r) {
  Json j;
  j["fraction"] = summary_stats(r, "fraction");
  j["any_truncated"] = fraction_true(r, "any_truncated");
  return j;
}

// ---- claim34: random path extensions with a mismatched endpoint

struct Ambient {
  std::vector<Rational> positions;
};

std::shared_ptr<void> extension_prepare(const ExperimentConfig& c) {
  auto a = std::make_shared<Ambient>();
  const std::size_t n = as_size(*c.n);
  if (*c.ambient == "grid") {
    for (std::size_t i = 0; i < n; ++i) a->positions.emplace_back(static_cast<unsigned long>(i));
  } else {
    // fixed for the whole run, from a stream no trial uses
    Rng rng(derive_seed(c.master_seed, ~std::uint64_t{0}));
    a->positions = random_integer_embedding(n, rng).positions();
  }
  return a;
}

std::vector<Cell> extension_trial(const ExperimentConfig& c, Rng& rng, const void* shared) {
  const auto& amb = static_cast<const Ambient*>(shared)->positions;
  const std::size_t n = amb.size();
  const std::size_t s = as_size(*c.s);
  // endpoints and s-1 interior vertices, all distinct
  const auto pick = random_injection(s + 1, n, rng);
  const Rational& pu = amb[pick[0]];
  const Rational& pv = amb[pick[s]];
  std::vector<Rational> interior;
  for (std::size_t i = 1; i < s; ++i) interior.push_back(amb[pick[i]]);
  const Rational dist = abs(pv - pu);
  // image of v: a uniform ambient point at a different distance from u
  Rational img_v;
  do {
    img_v = amb[rng.below(n)];
  } while (abs(img_v - pu) == dist);
  const auto count = path_extension_solutions(pu, pv, pu, img_v, interior);
  return {static_cast<std::int64_t>(s), count.total > 0, static_cast<std::int64_t>(count.total)};
}

Json extension_aggregate(const ExperimentResult& r) {
  const auto v = column_values(r, "extended");
  const double n = static_cast<double>(*r.config.n);
  Json j;
  j["extensions"] = std::accumulate(v.begin(), v.end(), 0.0);
  j["frequency"] = mean_of(v);
  j["bound"] = 1.0 / std::sqrt(n);
  j["hypothesis_s_max"] = std::log(n) / 50.0;
  return j;
}

// ---- validate-models

std::vector<Cell> validate_trial(const ExperimentConfig& c, Rng& rng, const void*) {
  const auto params = params_of(c, 0);
  const auto seq = sample_degree_sequence(params, rng);
  const auto report = validate_degree_sequence(seq.kernel_degrees(), as_size(*c.n), *c.c_a);
  // pairing on (3,3): three parallel edges with probability 6/15
  const std::size_t draws = as_size(c.caps.at("draws"));
  std::size_t triple = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto g = sample_pairing({3, 3}, rng);
    triple += !g.edge(0).is_loop() && !g.edge(1).is_loop() && !g.edge(2).is_loop();
  }
  const double e1 = static_cast<double>(draws) * 6.0 / 15.0;
  const double e2 = static_cast<double>(draws) - e1;
  const double o1 = static_cast<double>(triple);
  const double o2 = static_cast<double>(draws - triple);
  const double chi2 = (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
  const auto s = sample_model_L(params, rng);
  double total = 0;
  for (auto l : s.path_lengths) total += static_cast<double>(l);
  const double mu = params.mu;
  const double expected = 1.0 / (1.0 - mu);
  Cell mean, z;
  if (!s.path_lengths.empty()) {
    const double k = static_cast<double>(s.path_lengths.size());
    mean = total / k;
    z = (total / k - expected) / (std::sqrt(mu) / (1.0 - mu) / std::sqrt(k));
  }
  Cell first;
  if (report.s4_first_violation) first = static_cast<std::int64_t>(*report.s4_first_violation);
  return {static_cast<std::int64_t>(seq.kernel_vertex_count), report.structure_ok,
          static_cast<std::int64_t>(report.d_max), report.s4_ok, first, chi2, mean, expected, z};
}

Json validate_aggregate(const ExperimentResult& r) {
  Json j;
  j["structure_ok"] = fraction_true(r, "structure_ok");
  j["s4_ok"] = fraction_true(r, "s4_ok");
  j["pairing_chi2"] = summary_stats(r, "pairing_chi2");
  j["path_z"] = summary_stats(r, "path_z");
  return j;
}

// ---- expansion-audit and prune-stats (pruning keeps only degree-3 kernel
// vertices, so these default to lambda close to 1)

struct Pruned {
  std::size_t core = 0, kernel = 0, pruned_kernel = 0, pruned_core = 0;
  std::optional<Multigraph> kernel_graph;
};

Pruned prune_pipeline(const ExperimentConfig& c, Rng& rng) {
  Pruned p;
  const Multigraph core = sampled_core(c, rng);
  p.core = core.vertex_count();
  if (p.core == 0) return p;
  const auto d = kernel_decompose(core);
  p.kernel = d.kernel.vertex_count();
  if (d.pure_cycle) return p;
  const auto pr = prune_to_subcubic(d);
  if (pr.empty) return p;
  p.pruned_kernel = pr.decomposition.kernel.vertex_count();
  p.pruned_core = pr.decomposition.core.vertex_count();
  p.kernel_graph = pr.decomposition.kernel;
  return p;
}

std::vector<Cell> expansion_trial(const ExperimentConfig& c, Rng& rng, const void*) {
  const auto p = prune_pipeline(c, rng);
  const auto k = static_cast<std::int64_t>(p.kernel);
  const auto pk = static_cast<std::int64_t>(p.pruned_kernel);
  if (!p.kernel_graph) return {k, pk, std::monostate{}, std::monostate{}};
  ExpansionAuditOptions o;
  o.exact_cap = as_size(c.caps.at("exact"));
  o.sample_budget = as_size(c.caps.at("samples"));
  o.mode = p.pruned_kernel <= o.exact_cap ? AuditMode::exact : AuditMode::sampled;
  o.seed = rng.next_u64();
  const Rational alpha = vertex_expansion_audit(*p.kernel_graph, *c.c, o);
  return {k, pk, std::string(o.mode == AuditMode::exact ? "exact" : "sampled"), to_double(alpha)};
}

Json expansion_aggregate(const ExperimentResult& r) {
  Json j;
  j["alpha"] = summary_stats(r, "alpha");
  return j;
}

std::vector<Cell> prune_trial(const ExperimentConfig& c, Rng& rng, const void*) {
  const auto p = prune_pipeline(c, rng);
  Cell ratio;
  if (p.kernel > 0) ratio = static_cast<double>(p.pruned_kernel) / static_cast<double>(p.kernel);
  return {static_cast<std::int64_t>(p.core), static_cast<std::int64_t>(p.kernel),
          static_cast<std::int64_t>(p.pruned_kernel), static_cast<std::int64_t>(p.pruned_core), ratio};
}

Json prune_aggregate(const ExperimentResult& r) {
  Json j;
  j["kernel_ratio"] = summary_stats(r, "kernel_ratio");
  return j;
}

const std::map<std::string, Spec>& registry() {
  static const std::map<std::string, Spec> specs = [] {
    std::map<std::string, Spec> m;
    auto rigid = kRigidCaps;
    m["theorem1-desk"] = {P_N | P_LAMBDA, rigid,
                          {"core_vertices", "kernel_vertices", "R", "ratio"},
                          [](ExperimentConfig& c) {
                            set_default(c.n, std::uint64_t{120});
                            set_default(c.lambda, Rational(3));
                            if (c.trials == 0) c.trials = 20;
                            rigid_cap_defaults(c);
                          },
                          coverage_trial, coverage_aggregate, nullptr};
    auto toy_caps = rigid;
    toy_caps.insert(toy_caps.end(), {"attempts", "sweeps"});
    m["toy17"] = {P_N | P_D, toy_caps,
                  {"method", "reconstructible", "second_eigenvalue", "threshold", "below_threshold"},
                  [](ExperimentConfig& c) {
                    set_default(c.n, std::uint64_t{30});
                    set_default(c.d, std::uint64_t{17});
                    if (c.trials == 0) c.trials = 20;
                    rigid_cap_defaults(c);
                    cap_default(c, "attempts", 100000);
                    cap_default(c, "sweeps", 100);
                  },
                  toy17_trial, toy17_aggregate, nullptr};
    m["eventd-census"] = {P_N | P_LAMBDA | P_BETA, {"eventd"},
                          {"kernel_vertices", "holding", "fraction", "any_truncated"},
                          [](ExperimentConfig& c) {
                            set_default(c.n, std::uint64_t{10000});
                            set_default(c.lambda, Rational(3));
                            set_default(c.beta, Rational(1, 2));
                            if (c.trials == 0) c.trials = 10;
                            cap_default(c, "eventd", 6);
                          },
                          eventd_trial, eventd_aggregate, nullptr};
    m["claim34"] = {P_N | P_S | P_AMBIENT, {},
                    {"s", "extended", "solutions"},
                    [](ExperimentConfig& c) {
                      set_default(c.n, std::uint64_t{10000});
                      set_default(c.s, std::uint64_t{10});
                      set_default(c.ambient, std::string("generic"));
                      if (c.trials == 0) c.trials = 10000;
                    },
                    extension_trial, extension_aggregate, extension_prepare};
    m["validate-models"] = {P_N | P_LAMBDA | P_CA, {"draws"},
                            {"kernel_vertices", "structure_ok", "d_max", "s4_ok", "s4_first_violation",
                             "pairing_chi2", "path_mean", "path_mean_expected", "path_z"},
                            [](ExperimentConfig& c) {
                              set_default(c.n, std::uint64_t{10000});
                              set_default(c.lambda, Rational(3));
                              set_default(c.c_a, Rational(10));
                              if (c.trials == 0) c.trials = 20;
                              cap_default(c, "draws", 1000);
                            },
                            validate_trial, validate_aggregate, nullptr};
    m["expansion-audit"] = {P_N | P_LAMBDA | P_C, {"exact", "samples"},
                            {"kernel_vertices", "pruned_kernel_vertices", "mode", "alpha"},
                            [](ExperimentConfig& c) {
                              set_default(c.n, std::uint64_t{10000});
                              set_default(c.lambda, Rational(11, 10));
                              set_default(c.c, Rational(1, 2));
                              if (c.trials == 0) c.trials = 10;
                              cap_default(c, "exact", 20);
                              cap_default(c, "samples", 1000);
                            },
                            expansion_trial, expansion_aggregate, nullptr};
    m["prune-stats"] = {P_N | P_LAMBDA, {},
                        {"core_vertices", "kernel_vertices", "pruned_kernel_vertices", "pruned_core_vertices",
                         "kernel_ratio"},
                        [](ExperimentConfig& c) {
                          set_default(c.n, std::uint64_t{10000});
                          set_default(c.lambda, Rational(11, 10));
                          if (c.trials == 0) c.trials = 20;
                        },
                        prune_trial, prune_aggregate, nullptr};
    return m;
  }();
  return specs;
}

const Spec& spec_for(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorKind::usage, "unknown experiment \"" + name + "\"");
  return it->second;
}

void check_param(bool present, unsigned allowed, unsigned bit, const char* name, const std::string& exp) {
  if (present && !(allowed & bit)) fail(ErrorKind::usage, std::string("--") + name + " does not apply to " + exp);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

ExperimentConfig resolve_config(ExperimentConfig c) {
  const Spec& spec = spec_for(c.experiment);
  check_param(c.n.has_value(), spec.params, P_N, "n", c.experiment);
  check_param(c.lambda.has_value(), spec.params, P_LAMBDA, "lambda", c.experiment);
  check_param(c.beta.has_value(), spec.params, P_BETA, "beta", c.experiment);
  check_param(c.c.has_value(), spec.params, P_C, "c", c.experiment);
  check_param(c.c_a.has_value(), spec.params, P_CA, "ca", c.experiment);
  check_param(c.d.has_value(), spec.params, P_D, "d", c.experiment);
  check_param(c.s.has_value(), spec.params, P_S, "s", c.experiment);
  check_param(c.ambient.has_value(), spec.params, P_AMBIENT, "ambient", c.experiment);
  for (const auto& [name, value] : c.caps) {
    if (std::find(spec.caps.begin(), spec.caps.end(), name) == spec.caps.end())
      fail(ErrorKind::usage, "--cap." + name + " does not apply to " + c.experiment);
    if (value == 0) fail(ErrorKind::validation, "cap." + name + " must be positive");
  }
  spec.defaults(c);
  if (c.trials == 0) fail(ErrorKind::validation, "trials must be >= 1");
  if (c.n && *c.n == 0) fail(ErrorKind::validation, "n must be >= 1");
  if (c.lambda) {
    // G(n, lambda/n) experiments accept any 0 <= lambda <= n; the contiguity
    // model needs a supercritical lambda
    const bool gnp = c.experiment == "theorem1-desk" || c.experiment == "expansion-audit" ||
                     c.experiment == "prune-stats";
    if (gnp && (*c.lambda < 0 || *c.lambda > Rational(static_cast<unsigned long>(*c.n))))
      fail(ErrorKind::domain, "lambda must lie in [0, n]");
    if (!gnp && *c.lambda <= 1) fail(ErrorKind::domain, "lambda must exceed 1");
  }
  if (c.beta && (*c.beta <= 0 || *c.beta >= 1)) fail(ErrorKind::domain, "beta must lie in (0,1)");
  if (c.c && (*c.c <= 0 || *c.c >= 1)) fail(ErrorKind::domain, "c must lie in (0,1)");
  if (c.c_a && *c.c_a <= 0) fail(ErrorKind::domain, "ca must be positive");
  if (c.experiment == "eventd-census" && *c.n < 2) fail(ErrorKind::domain, "n must be >= 2");
  if (c.experiment == "claim34") {
    if (*c.s == 0) fail(ErrorKind::validation, "s must be >= 1");
    if (*c.n < *c.s + 2) fail(ErrorKind::validation, "claim34 needs n >= s + 2");
    if (*c.ambient != "generic" && *c.ambient != "grid")
      fail(ErrorKind::usage, "ambient must be \"generic\" or \"grid\"");
  }
  if (c.experiment == "toy17" && (*c.d == 0 || *c.d >= *c.n))
    fail(ErrorKind::domain, "toy17 needs 1 <= d < n");
  if (c.output_path.empty()) c.output_path = c.experiment + ".csv";
  return c;
}

const Cell& ExperimentResult::cell(std::size_t row, const std::string& column) const {
  static const Cell none;
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) fail(ErrorKind::usage, "no column \"" + column + "\"");
  const std::size_t col = static_cast<std::size_t>(it - header.begin());
  if (col < 3) fail(ErrorKind::usage, "column \"" + column + "\" is not a data column");
  const auto& cells = rows.at(row).cells;
  return col - 3 < cells.size() ? cells[col - 3] : none;
}

ExperimentResult run_experiment(const ExperimentConfig& input) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = resolve_config(input);
  const ExperimentConfig& c = result.config;
  const Spec& spec = spec_for(c.experiment);
  result.header = {"trial", "seed", "status"};
  result.header.insert(result.header.end(), spec.columns.begin(), spec.columns.end());
  const std::shared_ptr<void> shared = spec.prepare ? spec.prepare(c) : nullptr;

  const std::size_t trials = as_size(c.trials);
  result.rows.resize(trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      TrialRow& row = result.rows[t];
      row.trial = t;
      row.seed = derive_seed(c.master_seed, t);
      Rng rng(row.seed);
      try {
        row.cells = spec.trial(c, rng, shared.get());
        row.status = "ok";
      } catch (const Error& e) {
        row.status = std::string("failed:") + to_string(e.kind());
      } catch (const std::bad_alloc&) {
        row.status = "failed:resource";
      }
      if (row.status != "ok") row.cells.clear();
    }
  };
  std::size_t threads = as_size(c.threads);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, trials);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (const auto& row : result.rows) result.failed += row.status != "ok";
  result.aggregates = spec.aggregate(result);
  result.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_cell(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, cell);
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  for (std::size_t i = 0; i < result.header.size(); ++i) out << (i ? "," : "") << result.header[i];
  out << '\n';
  const std::size_t data = result.header.size() - 3;
  for (const auto& row : result.rows) {
    out << row.trial << ',' << row.seed << ',' << row.status;
    for (std::size_t i = 0; i < data; ++i) out << ',' << (i < row.cells.size() ? format_cell(row.cells[i]) : "");
    out << '\n';
  }
}

namespace {

Json opt_rational(const std::optional<Rational>& r) {
  return r ? Json(format_rational(*r)) : Json(nullptr);
}

}  // namespace

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  j["lambda"] = opt_rational(c.lambda);
  j["beta"] = opt_rational(c.beta);
  j["c"] = opt_rational(c.c);
  j["ca"] = opt_rational(c.c_a);
  j["d"] = c.d ? Json(*c.d) : Json(nullptr);
  j["s"] = c.s ? Json(*c.s) : Json(nullptr);
  j["ambient"] = c.ambient ? Json(*c.ambient) : Json(nullptr);
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  Json caps = Json::object();
  for (const auto& [k, v] : c.caps) caps[k] = v;
  j["caps"] = std::move(caps);
  j["output_path"] = c.output_path;
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig config_from_json(const Json& input) {
  const Json& doc = input.is_object() && input.contains("config") ? input["config"] : input;
  const std::string base = &doc == &input ? "" : "/config";
  if (!doc.is_object()) fail(ErrorKind::parse, (base.empty() ? "/" : base) + ": expected an object");
  static const std::set<std::string> known{"experiment", "n",  "lambda",  "beta",        "c",
                                           "ca",         "d",  "s",       "ambient",     "trials",
                                           "master_seed", "caps", "output_path", "threads"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) fail(ErrorKind::parse, base + "/" + key + ": unknown field");
  ExperimentConfig c;
  const Json& e = require_field(doc, "experiment", base);
  if (!e.is_string()) fail(ErrorKind::parse, base + "/experiment: expected a string");
  c.experiment = e.get<std::string>();
  auto uint_opt = [&](const char* key, std::optional<std::uint64_t>& out) {
    if (doc.contains(key) && !doc[key].is_null()) out = json_uint(doc[key], base + "/" + key);
  };
  auto rat_opt = [&](const char* key, std::optional<Rational>& out) {
    if (doc.contains(key) && !doc[key].is_null()) out = json_rational(doc[key], base + "/" + key);
  };
  uint_opt("n", c.n);
  uint_opt("d", c.d);
  uint_opt("s", c.s);
  rat_opt("lambda", c.lambda);
  rat_opt("beta", c.beta);
  rat_opt("c", c.c);
  rat_opt("ca", c.c_a);
  if (doc.contains("ambient") && !doc["ambient"].is_null()) {
    if (!doc["ambient"].is_string()) fail(ErrorKind::parse, base + "/ambient: expected a string");
    c.ambient = doc["ambient"].get<std::string>();
  }
  if (doc.contains("trials")) c.trials = json_uint(doc["trials"], base + "/trials");
  if (doc.contains("master_seed")) c.master_seed = json_uint(doc["master_seed"], base + "/master_seed");
  if (doc.contains("threads")) c.threads = json_uint(doc["threads"], base + "/threads");
  if (doc.contains("caps")) {
    const Json& caps = doc["caps"];
    if (!caps.is_object()) fail(ErrorKind::parse, base + "/caps: expected an object");
    for (const auto& [k, v] : caps.items()) c.caps[k] = json_uint(v, base + "/caps/" + k);
  }
  if (doc.contains("output_path")) {
    if (!doc["output_path"].is_string()) fail(ErrorKind::parse, base + "/output_path: expected a string");
    c.output_path = doc["output_path"].get<std::string>();
  }
  return c;
}

Json summary_json(const ExperimentResult& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["version"] = version_string();
  j["wall_clock_seconds"] = r.wall_clock_seconds;
  j["trials"] = r.rows.size();
  j["failed"] = r.failed;
  j["columns"] = r.header;
  j["aggregates"] = r.aggregates;
  return j;
}

std::string summary_path_for(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() > ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".summary.json";
  return csv_path + ".summary.json";
}

void write_outputs(const ExperimentResult& result) {
  const std::string& path = result.config.output_path;
  std::ofstream out(path);
  if (!out) fail(ErrorKind::resource, path + ": cannot write");
  write_csv(out, result);
  out.close();
  write_json_file(summary_path_for(path), summary_json(result));
}

const char* version_string() noexcept { return RIGIDITY_VERSION; }

}  // namespace rigidity
