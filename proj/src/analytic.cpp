#include <algorithm>
#include <cmath>
#include <functional>

#include "rigidity/error.hpp"
#include "rigidity/randmodels.hpp"

namespace rigidity {

double conjugate_mu(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) fail(ErrorKind::domain, "conjugate_mu: lambda must be >= 1");
  if (lambda == 1.0) return 1.0;
  const double target = lambda * std::exp(-lambda);
  double lo = 0.0, hi = 1.0;  // x e^-x increases on [0,1]
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(-mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double conjugate_mu(const Rational& lambda) {
  if (lambda < 1) fail(ErrorKind::domain, "conjugate_mu: lambda must be >= 1");
  if (lambda == 1) return 1.0;
  return conjugate_mu(to_double(lambda));
}

ModelParams make_params(std::size_t n, const Rational& lambda, std::uint64_t seed) {
  ModelParams p;
  p.n = n;
  p.lambda = lambda;
  p.mu = conjugate_mu(lambda);
  p.seed = seed;
  return p;
}

double tail_bounds(const TailQuery& q) {
  switch (q.kind) {
    case TailKind::poisson: {
      if (!(q.mu > 0.0)) fail(ErrorKind::domain, "tail_bounds(poisson): mu must be > 0");
      const double t = static_cast<double>(q.t);
      if (!(t > q.mu)) fail(ErrorKind::domain, "tail_bounds(poisson): t must exceed mu");
      return std::exp(t + t * std::log(q.mu) - q.mu - t * std::log(t));
    }
    case TailKind::negbinom: {
      if (!(q.gamma > 1.0)) fail(ErrorKind::domain, "tail_bounds(negbinom): gamma must be > 1");
      if (!(q.r >= 1.0)) fail(ErrorKind::domain, "tail_bounds(negbinom): r must be >= 1");
      if (!(q.nu > 0.0 && q.nu < 1.0)) fail(ErrorKind::domain, "tail_bounds(negbinom): nu must lie in (0,1)");
      const double s = 1.0 - 1.0 / q.gamma;
      return std::exp(-q.gamma * q.r * s * s / 2.0);
    }
    case TailKind::edgeprob: {
      if (q.i >= q.degrees.size()) fail(ErrorKind::domain, "tail_bounds(edgeprob): index i out of range");
      if (q.j >= q.degrees.size()) fail(ErrorKind::domain, "tail_bounds(edgeprob): index j out of range");
      if (q.i == q.j) fail(ErrorKind::domain, "tail_bounds(edgeprob): indices i and j must differ");
      double m1 = 0.0;
      for (std::size_t d : q.degrees) m1 += static_cast<double>(d);
      if (m1 == 0.0) fail(ErrorKind::domain, "tail_bounds(edgeprob): degrees sum to zero");
      return static_cast<double>(q.degrees[q.i]) * static_cast<double>(q.degrees[q.j]) / m1;
    }
  }
  fail(ErrorKind::domain, "tail_bounds: unknown kind");
}

DegreeSequenceReport validate_degree_sequence(const std::vector<std::size_t>& degrees, std::size_t n_ambient,
                                              const Rational& c_a, std::optional<std::size_t> d_max_threshold) {
  DegreeSequenceReport r;
  std::vector<std::size_t> d = degrees;
  std::sort(d.begin(), d.end(), std::greater<>());
  std::size_t sum = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    sum += degrees[i];
    if (degrees[i] == 1 || degrees[i] == 2) {
      if (r.structure_ok) {
        r.structure_ok = false;
        r.structure_detail = "entry " + std::to_string(i) + " has forbidden degree " + std::to_string(degrees[i]);
      }
    }
  }
  if (r.structure_ok && sum % 2 != 0) {
    r.structure_ok = false;
    r.structure_detail = "degree sum " + std::to_string(sum) + " is odd";
  }
  r.d_max = d.empty() ? 0 : d[0];
  if (d_max_threshold) r.s3_ok = r.d_max <= *d_max_threshold;
  if (n_ambient >= 2) {
    const double ln_n = std::log(static_cast<double>(n_ambient));
    const double ca = to_double(c_a);
    std::size_t prefix = d.empty() ? 0 : d[0];
    for (std::size_t i = 2; i <= d.size(); ++i) {
      prefix += d[i - 1];
      const double bound = ca * static_cast<double>(i) * ln_n / std::log(static_cast<double>(i));
      if (static_cast<double>(prefix) > bound) {
        r.s4_ok = false;
        r.s4_first_violation = i;
        break;
      }
    }
  }
  return r;
}

}  // namespace rigidity
