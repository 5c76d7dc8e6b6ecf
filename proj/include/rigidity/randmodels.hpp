#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/decomposition.hpp"
#include "rigidity/embedding.hpp"
#include "rigidity/multigraph.hpp"
#include "rigidity/rational.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

/// The unique mu in (0,1] with mu e^-mu = lambda e^-lambda (bisection to
/// 1e-12; lambda = 1 gives exactly 1). Domain error for lambda < 1.
double conjugate_mu(double lambda);
double conjugate_mu(const Rational& lambda);

struct ModelParams {
  std::size_t n = 0;
  Rational lambda;
  double mu = 1.0;
  std::uint64_t seed = 0;
};

/// Fills mu from lambda.
ModelParams make_params(std::size_t n, const Rational& lambda, std::uint64_t seed = 0);

/// Simple graph with each pair present independently (geometric skipping).
Multigraph sample_gnp(std::size_t n, double p, Rng& rng);
Multigraph sample_gnp(std::size_t n, const Rational& p, Rng& rng);

struct DegreeSequenceSample {
  double capital_lambda = 0.0;
  /// Raw Poisson draws, one per ambient vertex.
  std::vector<std::size_t> raw;
  /// raw with entries below 3 zeroed.
  std::vector<std::size_t> degrees;
  std::size_t kernel_vertex_count = 0;
  std::map<std::size_t, std::size_t> counts_by_degree;
  std::size_t attempts = 0;

  /// Nonzero entries of `degrees`, in vertex order.
  std::vector<std::size_t> kernel_degrees() const;
};

/// Lambda ~ N(lambda - mu, 1/n) redrawn until positive, then n Poisson(Lambda)
/// draws; Lambda and the vector are redrawn together until the kernel degree
/// sum is even.
DegreeSequenceSample sample_degree_sequence(const ModelParams& params, Rng& rng);

/// Configuration model: uniform perfect matching of half-edges. Edges are
/// listed in matching order. Parity error on an odd sum.
Multigraph sample_pairing(const std::vector<std::size_t>& degrees, Rng& rng);

enum class KernelLaw { pairing, uniform };
const char* to_string(KernelLaw law) noexcept;

struct ModelLSample {
  DegreeSequenceSample degseq;
  Multigraph kernel;
  std::vector<std::size_t> path_lengths;
  Multigraph core;
  KernelDecomposition decomposition;
  KernelLaw kernel_law = KernelLaw::pairing;
  /// N = 0: nothing was drawn beyond the degree sequence.
  bool empty = false;
};

/// Three-step contiguity model. KernelLaw::uniform samples the kernel exactly
/// uniformly among multigraphs with its degree sequence (small kernels only;
/// size error when there are more than `uniform_cap` of them).
ModelLSample sample_model_L(const ModelParams& params, Rng& rng, KernelLaw law = KernelLaw::pairing,
                            std::size_t uniform_cap = 200000);

struct ModelUSample {
  ModelLSample model;
  /// Graph on the ambient vertices 0..n-1.
  Multigraph graph;
  /// core vertex -> ambient vertex (empty on fallback).
  std::vector<Vertex> injection;
  /// |V(C)| > n: graph is the complete graph on the ambient set.
  bool fallback = false;
};

ModelUSample sample_model_U(const ModelParams& params, const LineEmbedding& ambient, Rng& rng,
                            KernelLaw law = KernelLaw::pairing);

enum class RegularMethod { automatic, rejection, switch_chain };
const char* to_string(RegularMethod method) noexcept;

struct RegularSample {
  Multigraph graph;
  RegularMethod method_used = RegularMethod::rejection;
  std::size_t attempts = 0;
};

/// Simple d-regular graph on n vertices. Rejection draws from the pairing
/// model until simple (exactly uniform; resource error after attempt_cap).
/// The switch chain runs double-edge swaps from a relabelled circulant graph
/// (approximately uniform). Automatic picks rejection when the pairing model
/// is simple with probability at least 1e-4, else the switch chain.
RegularSample sample_regular_simple(std::size_t n, std::size_t d, Rng& rng, std::size_t attempt_cap = 100000,
                                    RegularMethod method = RegularMethod::automatic,
                                    std::size_t switch_sweeps = 100);

struct GmCount {
  double estimate = 0.0;
  double log_estimate = 0.0;
  std::optional<BigInt> exact;
};

/// Multigraph-count estimate with the exp(M2/(2M1) + (M2/(2M1))^2) factor,
/// error term dropped; exact count by direct enumeration when requested
/// (degree sum <= exact_cap, size error beyond).
GmCount gm_estimate_and_exact_count(const std::vector<std::size_t>& degrees, bool want_exact,
                                    std::size_t exact_cap = 40);

/// Labelled multigraphs (loops and parallel edges allowed) with the given
/// degrees, counted by recursive distribution of the first vertex's edges.
BigInt count_multigraphs(const std::vector<std::size_t>& degrees);

/// Same count obtained by enumerating all perfect matchings of half-edges and
/// collapsing equal multigraphs. Degree sum at most 14.
BigInt count_multigraphs_by_matchings(const std::vector<std::size_t>& degrees);

/// Number of half-edge matchings producing g: prod d! / prod(m_uv!) / prod(2^l l!).
BigInt matchings_producing(const Multigraph& g);

/// Sorted (min,max) endpoint list; equal keys mean equal labelled multigraphs.
std::vector<std::pair<Vertex, Vertex>> multigraph_key(const Multigraph& g);

/// All labelled multigraphs with the given degrees (edges sorted), in a fixed order.
std::vector<Multigraph> enumerate_multigraphs(const std::vector<std::size_t>& degrees,
                                              std::size_t cap = 200000);

enum class TailKind { poisson, negbinom, edgeprob };

struct TailQuery {
  TailKind kind = TailKind::poisson;
  double mu = 0.0;           // poisson mean
  std::uint64_t t = 0;       // poisson threshold
  double r = 0.0;            // negbinom
  double nu = 0.0;           // negbinom
  double gamma = 0.0;        // negbinom
  std::vector<std::size_t> degrees;  // edgeprob
  std::size_t i = 0, j = 0;          // edgeprob
};

/// poisson: exp(t + t ln mu - mu - t ln t); negbinom: exp(-gamma r (1-1/gamma)^2 / 2);
/// edgeprob: d_i d_j / M1. Domain errors name the offending parameter.
double tail_bounds(const TailQuery& query);

struct DegreeSequenceReport {
  bool structure_ok = true;
  std::string structure_detail;
  bool s3_ok = true;
  std::size_t d_max = 0;
  bool s4_ok = true;
  std::optional<std::size_t> s4_first_violation;
};

/// Structural check (entries 0 or >= 3, even sum), S3 (d_max <= threshold when
/// given) and S4 (prefix i >= 2 of the non-increasing order is at most
/// c_a i ln n / ln i).
DegreeSequenceReport validate_degree_sequence(const std::vector<std::size_t>& degrees, std::size_t n_ambient,
                                              const Rational& c_a,
                                              std::optional<std::size_t> d_max_threshold = std::nullopt);

}  // namespace rigidity
