#include "rigidity/embedding.hpp"

#include <algorithm>
#include <unordered_set>

#include "rigidity/error.hpp"

namespace rigidity {

LineEmbedding::LineEmbedding(std::vector<Rational> positions) : positions_(std::move(positions)) {
  for (Rational& q : positions_) q.canonicalize();
  std::vector<const Rational*> order;
  order.reserve(positions_.size());
  for (const Rational& q : positions_) order.push_back(&q);
  std::sort(order.begin(), order.end(), [](const Rational* a, const Rational* b) { return *a < *b; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (*order[i] == *order[i - 1]) {
      const auto v = static_cast<std::size_t>(order[i] - positions_.data());
      fail(ErrorKind::validation, "embedding is not injective: position " +
                                      format_rational(*order[i]) + " repeated (vertex " +
                                      std::to_string(v) + ")");
    }
  }
}

LineEmbedding LineEmbedding::restrict_to(const std::vector<Vertex>& vertices) const {
  std::vector<Rational> out;
  out.reserve(vertices.size());
  for (Vertex v : vertices) out.push_back(positions_.at(v));
  return LineEmbedding(std::move(out));
}

LineEmbedding make_embedding(const std::vector<long>& integers) {
  std::vector<Rational> q;
  q.reserve(integers.size());
  for (long x : integers) q.emplace_back(x);
  return LineEmbedding(std::move(q));
}

LineEmbedding random_integer_embedding(std::size_t n, Rng& rng, std::uint64_t upper) {
  if (upper < n) fail(ErrorKind::domain, "random_integer_embedding: range smaller than n");
  std::unordered_set<std::uint64_t> seen;
  std::vector<Rational> q;
  q.reserve(n);
  while (q.size() < n) {
    const std::uint64_t x = rng.below(upper);
    if (!seen.insert(x).second) continue;
    BigInt z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
    q.emplace_back(z);
  }
  return LineEmbedding(std::move(q));
}

ScaledPositions scale_to_integers(const std::vector<Rational>& positions) {
  ScaledPositions out;
  out.scale = 1;
  for (const Rational& q : positions) {
    mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), q.get_den_mpz_t());
  }
  out.scaled.reserve(positions.size());
  for (const Rational& q : positions) {
    out.scaled.push_back(q.get_num() * (out.scale / q.get_den()));
  }
  return out;
}

}  // namespace rigidity
