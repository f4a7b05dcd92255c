#ifndef VW_WORD_HPP
#define VW_WORD_HPP

// Freely reduced words in a free group of rank <= 26.
//
// Generators are written a..z, their inverses A..Z. A Word always holds a
// freely reduced letter sequence; every constructor that accepts raw letters
// reduces them first.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vw/error.hpp"

namespace vw {

inline constexpr int kMaxRank = 26;

/// Upper bound on the number of letters a parsed word may expand to.
inline constexpr std::size_t kMaxParsedLength = 1u << 24;

struct Letter {
  std::uint8_t generator = 0;
  std::int8_t sign = 1;

  [[nodiscard]] constexpr Letter inverse() const noexcept {
    return Letter{generator, static_cast<std::int8_t>(-sign)};
  }

  [[nodiscard]] constexpr bool is_inverse_of(Letter other) const noexcept {
    return generator == other.generator && sign == -other.sign;
  }

  /// Dense code: a=0, A=1, b=2, B=3, ...  Also the sort key.
  [[nodiscard]] constexpr int code() const noexcept {
    return 2 * generator + (sign < 0 ? 1 : 0);
  }

  [[nodiscard]] static constexpr Letter from_code(int code) noexcept {
    return Letter{static_cast<std::uint8_t>(code / 2),
                  static_cast<std::int8_t>(code % 2 == 0 ? 1 : -1)};
  }

  [[nodiscard]] constexpr char to_char() const noexcept {
    return static_cast<char>(sign > 0 ? 'a' + generator : 'A' + generator);
  }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter lhs, Letter rhs) noexcept {
    return lhs.code() <=> rhs.code();
  }
};

inline void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw RankError("rank must lie in [1, 26], got " + std::to_string(rank));
  }
}

class Word;
Word reduce(int rank, std::span<const Letter> letters);

class Word {
public:
  /// The identity of F_rank.
  explicit Word(int rank = 2) : rank_(rank) { check_rank(rank); }

  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
  [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
  [[nodiscard]] bool is_identity() const noexcept { return letters_.empty(); }

  [[nodiscard]] std::span<const Letter> letters() const noexcept { return letters_; }
  [[nodiscard]] Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  [[nodiscard]] Letter front() const noexcept { return letters_.front(); }
  [[nodiscard]] Letter back() const noexcept { return letters_.back(); }
  [[nodiscard]] auto begin() const noexcept { return letters_.begin(); }
  [[nodiscard]] auto end() const noexcept { return letters_.end(); }

  /// Subword [pos, pos + count). The result is reduced because the source is.
  [[nodiscard]] Word subword(std::size_t pos, std::size_t count) const {
    Word out(rank_);
    const auto first = letters_.begin() + static_cast<std::ptrdiff_t>(pos);
    out.letters_.assign(first, first + static_cast<std::ptrdiff_t>(count));
    return out;
  }

  /// True when every letter has positive sign.
  [[nodiscard]] bool is_positive() const noexcept {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](Letter l) { return l.sign > 0; });
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Shortlex order: shorter first, then lexicographic by letter code.
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
    if (auto c = lhs.rank_ <=> rhs.rank_; c != 0) return c;
    if (auto c = lhs.size() <=> rhs.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(lhs.begin(), lhs.end(), rhs.begin(),
                                                  rhs.end());
  }

private:
  friend Word reduce(int rank, std::span<const Letter> letters);
  friend Word multiply(const Word& x, const Word& y);
  friend Word invert(const Word& x);

  int rank_;
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
inline Word reduce(int rank, std::span<const Letter> letters) {
  Word out(rank);
  out.letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l.generator >= rank) {
      throw RankError("generator " + std::string(1, l.to_char()) + " outside rank " +
                      std::to_string(rank));
    }
    if (!out.letters_.empty() && out.letters_.back().is_inverse_of(l)) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

inline void check_same_rank(const Word& x, const Word& y) {
  if (x.rank() != y.rank()) {
    throw RankError("rank mismatch: " + std::to_string(x.rank()) + " vs " +
                    std::to_string(y.rank()));
  }
}

inline Word multiply(const Word& x, const Word& y) {
  check_same_rank(x, y);
  Word out = x;
  std::size_t j = 0;
  while (j < y.size() && !out.letters_.empty() && out.letters_.back().is_inverse_of(y[j])) {
    out.letters_.pop_back();
    ++j;
  }
  out.letters_.insert(out.letters_.end(), y.letters_.begin() + static_cast<std::ptrdiff_t>(j),
                      y.letters_.end());
  return out;
}

inline Word invert(const Word& x) {
  Word out(x.rank());
  out.letters_.reserve(x.size());
  for (auto it = x.letters_.rbegin(); it != x.letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

/// x^n for any integer n (negative powers invert first).
inline Word power(const Word& x, std::int64_t n) {
  const Word base = n < 0 ? invert(x) : x;
  const std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1u
                                : static_cast<std::uint64_t>(n);
  Word out(x.rank());
  Word sq = base;
  std::uint64_t e = m;
  while (e > 0) {
    if (e & 1u) out = multiply(out, sq);
    e >>= 1u;
    if (e > 0) sq = multiply(sq, sq);
  }
  return out;
}

/// Product of a list of words, left to right.
inline Word product(int rank, std::span<const Word> factors) {
  Word out(rank);
  for (const auto& f : factors) out = multiply(out, f);
  return out;
}

/// Commutator [x, y] = x y x^-1 y^-1.
inline Word commutator(const Word& x, const Word& y) {
  return multiply(multiply(x, y), multiply(invert(x), invert(y)));
}

/// Single-generator word, sign +1 or -1.
inline Word generator(int rank, int index, int sign = 1) {
  const Letter l{static_cast<std::uint8_t>(index), static_cast<std::int8_t>(sign)};
  return reduce(rank, std::span<const Letter>(&l, 1));
}

/// Letters as text; the identity prints as "1".
inline std::string to_string(const Word& x) {
  if (x.empty()) return "1";
  std::string s;
  s.reserve(x.size());
  for (Letter l : x) s.push_back(l.to_char());
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Word& x) { return os << to_string(x); }

namespace detail {

inline std::size_t skip_space(std::string_view text, std::size_t pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  return pos;
}

/// Parses EXP := '^' '-'? [0-9]+ starting at text[pos] == '^'. Advances pos.
inline std::int64_t parse_exponent(std::string_view text, std::size_t& pos) {
  const std::size_t caret = pos++;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
    throw ParseError("expected digits after '^'", pos);
  }
  std::int64_t value = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    if (value > static_cast<std::int64_t>(kMaxParsedLength)) {
      throw ParseError("exponent too large", caret);
    }
    ++pos;
  }
  return negative ? -value : value;
}

}  // namespace detail

/// Parses WORD := TERM*, TERM := LETTER ('^' '-'? DIGITS)?, whitespace between
/// terms. A lone "1" also denotes the identity so that printed words re-parse.
inline Word parse_word(std::string_view text, int rank) {
  check_rank(rank);
  std::vector<Letter> letters;
  std::size_t pos = detail::skip_space(text, 0);
  if (pos < text.size() && text[pos] == '1' && detail::skip_space(text, pos + 1) == text.size()) {
    return Word(rank);
  }
  while (pos < text.size()) {
    const char c = text[pos];
    if (!std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) > 0x7f) {
      throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    const bool lower = std::islower(static_cast<unsigned char>(c)) != 0;
    const int index = lower ? c - 'a' : c - 'A';
    if (index >= rank) {
      throw RankError(std::string("generator '") + c + "' at position " + std::to_string(pos) +
                      " outside rank " + std::to_string(rank));
    }
    Letter l{static_cast<std::uint8_t>(index), static_cast<std::int8_t>(lower ? 1 : -1)};
    ++pos;
    std::int64_t exponent = 1;
    if (pos < text.size() && text[pos] == '^') exponent = detail::parse_exponent(text, pos);
    if (exponent < 0) {
      l = l.inverse();
      exponent = -exponent;
    }
    if (letters.size() + static_cast<std::size_t>(exponent) > kMaxParsedLength) {
      throw ParseError("word too long", pos);
    }
    letters.insert(letters.end(), static_cast<std::size_t>(exponent), l);
    pos = detail::skip_space(text, pos);
  }
  return reduce(rank, letters);
}

/// Cyclic reduction: original == conjugator * core * conjugator^-1.
struct CyclicWord {
  Word core;
  Word conjugator;
};

[[nodiscard]] inline bool is_cyclically_reduced(const Word& x) {
  return x.size() < 2 || !x.front().is_inverse_of(x.back());
}

/// Peels mutually inverse end letters. The core is the rotation this peeling
/// reaches; no canonical rotation is chosen.
inline CyclicWord cyclic_reduce(const Word& x) {
  std::size_t i = 0;
  std::size_t j = x.size();
  while (j - i >= 2 && x[i].is_inverse_of(x[j - 1])) {
    ++i;
    --j;
  }
  return CyclicWord{x.subword(i, j - i), x.subword(0, i)};
}

/// Length of the longest common prefix, i.e. the Gromov product (x | y)_1.
inline std::size_t gromov_product(const Word& x, const Word& y) {
  check_same_rank(x, y);
  const auto [ix, iy] = std::mismatch(x.begin(), x.end(), y.begin(), y.end());
  return static_cast<std::size_t>(ix - x.begin());
}

/// Automorphism induced by a letter-level map on generators (e.g. a <-> b).
inline Word apply_generator_permutation(const Word& x, std::span<const int> image) {
  std::vector<Letter> letters;
  letters.reserve(x.size());
  for (Letter l : x) {
    letters.push_back(Letter{static_cast<std::uint8_t>(image[l.generator]), l.sign});
  }
  return reduce(x.rank(), letters);
}

struct WordHash {
  std::size_t operator()(const Word& x) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(x.rank());
    for (Letter l : x) {
      h ^= static_cast<std::uint64_t>(l.code() + 1);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace vw

#endif  // VW_WORD_HPP
