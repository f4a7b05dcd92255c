#ifndef VW_RANDOM_HPP
#define VW_RANDOM_HPP

// Seeded word generators for the property audits. Draws go through
// `below()`, not <random> distributions, so reports are identical across
// standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "vw/word.hpp"

namespace vw {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

private:
  std::mt19937_64 engine_;
};

/// Uniform reduced word of exactly `length` letters.
inline Word random_word_of_length(Rng& rng, int rank, std::size_t length) {
  std::vector<Letter> letters;
  letters.reserve(length);
  const auto alphabet = static_cast<std::uint64_t>(2 * rank);
  while (letters.size() < length) {
    if (letters.empty()) {
      letters.push_back(Letter::from_code(static_cast<int>(rng.below(alphabet))));
      continue;
    }
    // 2r - 1 choices that do not cancel the previous letter.
    int code = static_cast<int>(rng.below(alphabet - 1));
    if (code >= letters.back().inverse().code()) ++code;
    letters.push_back(Letter::from_code(code));
  }
  return reduce(rank, letters);
}

/// Reduced word whose length is uniform in [0, max_length].
inline Word random_word(Rng& rng, int rank, std::size_t max_length) {
  return random_word_of_length(rng, rank, rng.below(max_length + 1));
}

/// Rank-2 word built from blocks a^{+-1} b^{+-r} with r in [0, max_run], then
/// reduced and truncated to max_length. Uniform words almost never contain
/// a b^{2i} a b^{2i+1}; these hit the family patterns and their inverses
/// often, which is what the audits need.
inline Word random_block_word(Rng& rng, std::size_t max_length, int max_run) {
  const std::size_t target = rng.below(max_length + 1);
  std::vector<Letter> letters;
  while (letters.size() < target + 4) {
    const bool positive = rng.below(4) != 0;
    const auto sign = static_cast<std::int8_t>(positive ? 1 : -1);
    letters.push_back(Letter{0, sign});
    const auto run = static_cast<std::size_t>(rng.between(0, max_run));
    letters.insert(letters.end(), run, Letter{1, sign});
  }
  // Start at a random offset so words do not always begin with an a.
  const std::size_t offset = rng.below(4);
  const std::vector<Letter> slice(letters.begin() + static_cast<std::ptrdiff_t>(offset),
                                  letters.begin() + static_cast<std::ptrdiff_t>(offset + target));
  Word w = reduce(2, slice);
  return w;
}

/// Half uniform, half block-structured.
inline Word random_audit_word(Rng& rng, std::size_t max_length, int max_run) {
  return rng.coin() ? random_block_word(rng, max_length, max_run)
                    : random_word(rng, 2, max_length);
}

}  // namespace vw

#endif  // VW_RANDOM_HPP
