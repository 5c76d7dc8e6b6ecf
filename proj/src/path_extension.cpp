#include <algorithm>

#include "line_engine.hpp"

namespace rigidity {

PathExtensionCount path_extension_solutions(const Rational& pos_u, const Rational& pos_v,
                                            const Rational& img_u, const Rational& img_v,
                                            const std::vector<Rational>& interior) {
  std::vector<Rational> points{pos_u};
  points.insert(points.end(), interior.begin(), interior.end());
  points.push_back(pos_v);
  LineEmbedding check(points);  // validation error on repeated positions
  points.push_back(img_u);
  points.push_back(img_v);
  const auto scaled = scale_to_integers(points);
  const std::size_t s = interior.size() + 1;
  if (s > 48) fail(ErrorKind::resource, "path_extension_solutions: at most 48 path edges");

  std::vector<BigInt> gaps(s);
  for (std::size_t i = 0; i < s; ++i) gaps[i] = scaled.scaled[i + 1] - scaled.scaled[i];
  const BigInt target = scaled.scaled[s + 2] - scaled.scaled[s + 1];

  PathExtensionCount out;
  BigInt all_plus = 0;
  for (const BigInt& d : gaps) all_plus += d;
  const bool trivial_solves = all_plus == target;

  auto sums = [&](std::size_t from, std::size_t count) {
    std::vector<BigInt> v(std::size_t{1} << count);
    for (std::uint64_t mask = 0; mask < v.size(); ++mask) {
      BigInt sum = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (mask >> i & 1) sum -= gaps[from + i];
        else sum += gaps[from + i];
      }
      v[mask] = std::move(sum);
    }
    return v;
  };

  if (s <= 24) {
    for (const BigInt& x : sums(0, s)) out.total += x == target;
  } else {
    const std::size_t h = s / 2;
    auto left = sums(0, h);
    std::sort(left.begin(), left.end());
    for (const BigInt& r : sums(h, s - h)) {
      const BigInt need = target - r;
      auto [lo, hi] = std::equal_range(left.begin(), left.end(), need);
      out.total += static_cast<std::uint64_t>(hi - lo);
    }
  }
  out.nontrivial = out.total - (trivial_solves ? 1 : 0);
  return out;
}

}  // namespace rigidity
