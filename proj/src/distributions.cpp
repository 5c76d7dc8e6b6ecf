#include "rigidity/distributions.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "rigidity/error.hpp"

namespace rigidity {

double sample_standard_normal(Rng& rng) {
  const double u1 = rng.uniform_open01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::uint64_t poisson_inversion(double mean, Rng& rng) {
  const double u = rng.uniform01();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) break;  // tail below double resolution
    cdf = next;
  }
  return k;
}

std::uint64_t poisson_ptrs(double mean, Rng& rng) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  while (true) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * log_mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t sample_poisson(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) fail(ErrorKind::domain, "sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  return mean < 30.0 ? poisson_inversion(mean, rng) : poisson_ptrs(mean, rng);
}

std::uint64_t sample_geometric(double mu, Rng& rng) {
  if (!(mu > 0.0 && mu < 1.0)) fail(ErrorKind::domain, "sample_geometric: mu must lie in (0,1)");
  const double u = rng.uniform_open01();
  const double k = std::ceil(std::log(u) / std::log(mu));
  return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

std::vector<std::size_t> random_injection(std::size_t k, std::size_t n, Rng& rng) {
  if (k > n) fail(ErrorKind::domain, "random_injection: k exceeds n");
  // partial Fisher-Yates over 0..n-1; only displaced slots are stored
  std::unordered_map<std::size_t, std::size_t> moved;
  auto at = [&](std::size_t i) {
    const auto it = moved.find(i);
    return it == moved.end() ? i : it->second;
  };
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    const std::size_t vj = at(j);
    moved[j] = at(i);
    out[i] = vj;
  }
  return out;
}

}  // namespace rigidity
