#pragma once

#include <cstdint>
#include <vector>

#include "rigidity/rng.hpp"

namespace rigidity {

// Hand-written so streams are reproducible across standard libraries.

/// Standard normal by Box-Muller (one draw per call, two uniforms consumed).
double sample_standard_normal(Rng& rng);

/// Poisson(mean): inversion below mean 30, Hormann's PTRS above.
std::uint64_t sample_poisson(double mean, Rng& rng);

/// Support {1,2,...} with P(L > k) = mu^k, by inversion ceil(ln U / ln mu),
/// U uniform on (0,1). mu must lie in (0,1).
std::uint64_t sample_geometric(double mu, Rng& rng);

/// Uniform random permutation in place (Fisher-Yates from the back).
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(v[i - 1], v[j]);
  }
}

/// First k entries of a uniformly random permutation of 0..n-1.
std::vector<std::size_t> random_injection(std::size_t k, std::size_t n, Rng& rng);

}  // namespace rigidity
