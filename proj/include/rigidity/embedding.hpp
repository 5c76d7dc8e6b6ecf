#pragma once

#include <cstdint>
#include <vector>

#include "rigidity/multigraph.hpp"
#include "rigidity/rational.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

/// Injective assignment of exact rational positions to vertices 0..n-1.
class LineEmbedding {
 public:
  LineEmbedding() = default;
  /// Validation error on a repeated position.
  explicit LineEmbedding(std::vector<Rational> positions);

  std::size_t size() const noexcept { return positions_.size(); }
  const Rational& position(Vertex v) const { return positions_.at(v); }
  const std::vector<Rational>& positions() const noexcept { return positions_; }

  /// Restriction to `vertices` (new vertex i gets position(vertices[i])).
  LineEmbedding restrict_to(const std::vector<Vertex>& vertices) const;

  friend bool operator==(const LineEmbedding&, const LineEmbedding&) = default;

 private:
  std::vector<Rational> positions_;
};

LineEmbedding make_embedding(const std::vector<long>& integers);

/// n distinct integers drawn uniformly from [0, upper) (default 2^62).
LineEmbedding random_integer_embedding(std::size_t n, Rng& rng,
                                       std::uint64_t upper = std::uint64_t{1} << 62);

/// Positions scaled to integers: scaled[v] = position(v) * scale.
struct ScaledPositions {
  std::vector<BigInt> scaled;
  BigInt scale;
};

ScaledPositions scale_to_integers(const std::vector<Rational>& positions);

}  // namespace rigidity
