#ifndef VW_BALL_HPP
#define VW_BALL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vw/error.hpp"
#include "vw/word.hpp"

namespace vw {

/// Number of reduced words of length <= radius in F_rank:
/// 1 + sum_{l=1..radius} 2r (2r-1)^(l-1). Saturates at UINT64_MAX.
inline std::uint64_t ball_size(int rank, int radius) {
  check_rank(rank);
  if (radius < 0) return 0;
  const std::uint64_t two_r = 2u * static_cast<std::uint64_t>(rank);
  const std::uint64_t cap = UINT64_MAX;
  std::uint64_t total = 1;
  std::uint64_t sphere = 1;
  for (int l = 1; l <= radius; ++l) {
    const std::uint64_t factor = (l == 1) ? two_r : two_r - 1;
    if (factor != 0 && sphere > cap / factor) return cap;
    sphere *= factor;
    if (total > cap - sphere) return cap;
    total += sphere;
  }
  return total;
}

/// Every reduced word of length <= radius exactly once, in shortlex order.
inline std::vector<Word> enumerate_ball(int rank, int radius, std::uint64_t max_states) {
  if (radius < 0) throw PreconditionError("radius must be non-negative");
  const std::uint64_t count = ball_size(rank, radius);
  if (count > max_states) {
    throw GuardExceeded("ball of radius " + std::to_string(radius) + " in rank " +
                        std::to_string(rank) + " has " + std::to_string(count) +
                        " words, over the limit of " + std::to_string(max_states));
  }
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(count));
  out.emplace_back(rank);
  std::size_t layer_begin = 0;
  for (int l = 1; l <= radius; ++l) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int code = 0; code < 2 * rank; ++code) {
        const Letter next = Letter::from_code(code);
        if (!out[i].empty() && out[i].back().is_inverse_of(next)) continue;
        Word extended = multiply(out[i], generator(rank, next.generator, next.sign));
        out.push_back(std::move(extended));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace vw

#endif  // VW_BALL_HPP
