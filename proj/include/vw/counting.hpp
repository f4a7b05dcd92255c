#ifndef VW_COUNTING_HPP
#define VW_COUNTING_HPP

// Brooks counting quasi-morphisms H_p(x) = N_p(x) - N_{p^-1}(x), the family
// H_i built on g_i = a b^{2i} a b^{2i+1}, and audits of their defect and of
// how many members of the family fail to be additive on a given pair.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vw/ball.hpp"
#include "vw/csv.hpp"
#include "vw/error.hpp"
#include "vw/word.hpp"

namespace vw {

enum class CountMode { linear, cyclic };

inline std::string_view to_string(CountMode mode) {
  return mode == CountMode::linear ? "linear" : "cyclic";
}

inline CountMode parse_count_mode(std::string_view text) {
  if (text == "linear") return CountMode::linear;
  if (text == "cyclic") return CountMode::cyclic;
  throw ParseError("count mode must be 'linear' or 'cyclic'", 0);
}

/// KMP prefix function over letter codes.
inline std::vector<std::size_t> prefix_function(std::span<const Letter> pattern) {
  std::vector<std::size_t> fail(pattern.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < pattern.size(); ++i) {
    while (k > 0 && pattern[i] != pattern[k]) k = fail[k - 1];
    if (pattern[i] == pattern[k]) ++k;
    fail[i] = k;
  }
  return fail;
}

namespace detail {

// Counts matches of `pattern` in `text` that start before `start_limit`.
inline std::int64_t kmp_count(std::span<const Letter> pattern,
                              std::span<const std::size_t> fail,
                              std::span<const Letter> text, std::size_t start_limit) {
  std::int64_t count = 0;
  std::size_t k = 0;
  const std::size_t m = pattern.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pattern[k]) k = fail[k - 1];
    if (text[i] == pattern[k]) ++k;
    if (k == m) {
      if (i + 1 - m < start_limit) ++count;
      k = fail[k - 1];
    }
  }
  return count;
}

inline std::int64_t count_with_table(std::span<const Letter> pattern,
                                     std::span<const std::size_t> fail, const Word& subject,
                                     CountMode mode) {
  const std::size_t m = pattern.size();
  const std::size_t n = subject.size();
  if (m > n) return 0;
  if (mode == CountMode::linear) return kmp_count(pattern, fail, subject.letters(), n);
  std::vector<Letter> text(subject.begin(), subject.end());
  text.insert(text.end(), subject.begin(), subject.begin() + static_cast<std::ptrdiff_t>(m - 1));
  return kmp_count(pattern, fail, text, n);
}

}  // namespace detail

/// Occurrences of `pattern` in `subject`, overlaps included. In cyclic mode
/// `subject` is read as a cyclic word and windows may wrap around; a pattern
/// longer than the subject never occurs.
inline std::int64_t count_occurrences(const Word& pattern, const Word& subject, CountMode mode) {
  check_same_rank(pattern, subject);
  if (pattern.empty()) throw PreconditionError("pattern must be non-empty");
  const auto fail = prefix_function(pattern.letters());
  return detail::count_with_table(pattern.letters(), fail, subject, mode);
}

/// True iff no proper suffix of `pattern` equals a prefix of it, so two
/// occurrences can never overlap.
inline bool self_overlap_free(const Word& pattern) {
  if (pattern.empty()) throw PreconditionError("pattern must be non-empty");
  return prefix_function(pattern.letters()).back() == 0;
}

class CountingQM {
public:
  explicit CountingQM(Word pattern, CountMode mode = CountMode::linear)
      : pattern_(std::move(pattern)), inverse_(invert(pattern_)), mode_(mode) {
    if (pattern_.empty()) throw PreconditionError("counting pattern must be non-empty");
    if (mode_ == CountMode::cyclic && !is_cyclically_reduced(pattern_)) {
      throw PreconditionError("cyclic mode needs a cyclically reduced pattern, got " +
                              to_string(pattern_));
    }
    fail_ = prefix_function(pattern_.letters());
    inverse_fail_ = prefix_function(inverse_.letters());
  }

  [[nodiscard]] const Word& pattern() const noexcept { return pattern_; }
  [[nodiscard]] CountMode mode() const noexcept { return mode_; }
  [[nodiscard]] int rank() const noexcept { return pattern_.rank(); }

  /// N_p(x) - N_{p^-1}(x); cyclic mode evaluates on the cyclic core of x.
  [[nodiscard]] std::int64_t operator()(const Word& x) const {
    check_same_rank(pattern_, x);
    if (x.size() < pattern_.size()) return 0;
    if (mode_ == CountMode::cyclic) {
      const Word core = cyclic_reduce(x).core;
      return count(core);
    }
    return count(x);
  }

private:
  std::int64_t count(const Word& subject) const {
    return detail::count_with_table(pattern_.letters(), fail_, subject, mode_) -
           detail::count_with_table(inverse_.letters(), inverse_fail_, subject, mode_);
  }

  Word pattern_;
  Word inverse_;
  CountMode mode_;
  std::vector<std::size_t> fail_;
  std::vector<std::size_t> inverse_fail_;
};

inline std::int64_t qm_value(const CountingQM& q, const Word& x) { return q(x); }

/// r(x, y) = H(x^-1 y).
inline std::int64_t bicombing(const CountingQM& q, const Word& x, const Word& y) {
  return q(multiply(invert(x), y));
}

/// g_i = a b^{2i} a b^{2i+1}, a positive word of length 4i + 3.
inline Word family_pattern(int i, int rank = 2) {
  if (i < 1) throw PreconditionError("family index must be >= 1, got " + std::to_string(i));
  if (rank < 2) throw RankError("the family g_i needs rank >= 2");
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(4 * i + 3));
  const Letter a{0, 1};
  const Letter b{1, 1};
  letters.push_back(a);
  letters.insert(letters.end(), static_cast<std::size_t>(2 * i), b);
  letters.push_back(a);
  letters.insert(letters.end(), static_cast<std::size_t>(2 * i + 1), b);
  return reduce(rank, letters);
}

/// Linear-mode H_1..H_K, built once and reused across evaluations.
class BrooksFamily {
public:
  explicit BrooksFamily(int K, int rank = 2) {
    if (K < 1) throw PreconditionError("K must be >= 1");
    members_.reserve(static_cast<std::size_t>(K));
    for (int i = 1; i <= K; ++i) members_.emplace_back(family_pattern(i, rank), CountMode::linear);
  }

  [[nodiscard]] int size() const noexcept { return static_cast<int>(members_.size()); }
  [[nodiscard]] const CountingQM& operator[](int i) const { return members_.at(static_cast<std::size_t>(i - 1)); }

  [[nodiscard]] std::int64_t value(int i, const Word& x) const { return (*this)[i](x); }

  /// H_1(x)..H_K(x); index 0 holds H_1.
  [[nodiscard]] std::vector<std::int64_t> values(const Word& x) const {
    std::vector<std::int64_t> out(members_.size(), 0);
    for (std::size_t j = 0; j < members_.size(); ++j) {
      // |g_i| grows with i, so once a pattern outgrows x all later values vanish.
      if (members_[j].pattern().size() > x.size()) break;
      out[j] = members_[j](x);
    }
    return out;
  }

private:
  std::vector<CountingQM> members_;
};

// ---------------------------------------------------------------------------
// Defect

/// Certified defect bound for a Brooks map on pattern p: 3 when occurrences
/// of p cannot overlap, 3(|p| - 1) otherwise. Both constants are settable.
struct DefectPolicy {
  std::int64_t overlap_free_bound = 3;
  std::int64_t per_letter_factor = 3;

  [[nodiscard]] std::int64_t bound(const Word& pattern) const {
    if (self_overlap_free(pattern)) return overlap_free_bound;
    return per_letter_factor * static_cast<std::int64_t>(pattern.size() - 1);
  }

  [[nodiscard]] std::string describe(const Word& pattern) const {
    if (self_overlap_free(pattern)) {
      return "overlap-free pattern: defect <= " + std::to_string(overlap_free_bound);
    }
    return "overlapping pattern: defect <= " + std::to_string(per_letter_factor) +
           "*(|p|-1) = " + std::to_string(bound(pattern));
  }
};

struct DefectLimits {
  std::uint64_t max_ball = 200'000;
  std::uint64_t max_pairs = 100'000'000;
};

struct DefectResult {
  std::int64_t defect = 0;
  Word x;
  Word y;
};

/// max |H(xy) - H(x) - H(y)| over every pair in `ball`.
inline DefectResult defect_on_pairs(const CountingQM& q, std::span<const Word> ball) {
  std::vector<std::int64_t> value(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) value[i] = q(ball[i]);
  DefectResult best{0, Word(q.rank()), Word(q.rank())};
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      const std::int64_t delta = q(multiply(ball[i], ball[j])) - value[i] - value[j];
      if (std::abs(delta) > best.defect) best = {std::abs(delta), ball[i], ball[j]};
    }
  }
  return best;
}

namespace detail {

// Representatives of the leg classes of a tripod for a linear Brooks map on
// p. Writing x = U^-1 C and y = C^-1 V with U, C, V read outward from the
// centre, H(xy) - H(x) - H(y) only sees occurrences through the centre, which
// see at most |p| - 1 letters of each leg. Two legs agreeing on their longest
// prefix among the words below (and on their first letter) give the same
// value, and the shortest member of a class is the word itself.
inline std::vector<Word> tripod_leg_classes(const Word& pattern, int radius) {
  const int rank = pattern.rank();
  std::set<Word> reps;
  reps.insert(Word(rank));
  for (int code = 0; code < 2 * rank && radius >= 1; ++code) {
    const Letter l = Letter::from_code(code);
    reps.insert(generator(rank, l.generator, l.sign));
  }
  const std::size_t limit = static_cast<std::size_t>(radius);
  for (const Word& p : {pattern, invert(pattern)}) {
    for (std::size_t j = 1; j < p.size(); ++j) {
      const Word left = invert(p.subword(0, j));
      const Word right = p.subword(j, p.size() - j);
      for (const Word* w : {&left, &right}) {
        for (std::size_t len = 1; len <= std::min(w->size(), limit); ++len) {
          reps.insert(w->subword(0, len));
        }
      }
    }
  }
  return {reps.begin(), reps.end()};
}

inline bool distinct_heads(const Word& u, const Word& v) {
  return u.empty() || v.empty() || u.front() != v.front();
}

}  // namespace detail

/// Exact maximum of |H(xy) - H(x) - H(y)| over reduced x, y with |x|, |y| <=
/// radius. Linear mode enumerates tripod leg classes; cyclic mode has no
/// locality and falls back to all pairs of the ball.
inline DefectResult defect_exact(const CountingQM& q, int radius, const DefectLimits& limits = {}) {
  if (radius < 0) throw PreconditionError("radius must be non-negative");
  const int rank = q.rank();
  if (q.mode() == CountMode::cyclic) {
    const auto ball = enumerate_ball(rank, radius, limits.max_ball);
    const auto n = static_cast<std::uint64_t>(ball.size());
    if (n * n > limits.max_pairs) {
      throw GuardExceeded("defect scan needs " + std::to_string(n * n) +
                          " pairs, over the limit of " + std::to_string(limits.max_pairs));
    }
    return defect_on_pairs(q, ball);
  }

  const auto legs = detail::tripod_leg_classes(q.pattern(), radius);
  const auto n = static_cast<std::uint64_t>(legs.size());
  if (n * n * n > limits.max_pairs) {
    throw GuardExceeded("defect scan needs " + std::to_string(n * n * n) +
                        " tripods, over the limit of " + std::to_string(limits.max_pairs));
  }
  const auto r = static_cast<std::size_t>(radius);
  DefectResult best{0, Word(rank), Word(rank)};
  for (const Word& c : legs) {
    if (c.size() > r) continue;
    const Word c_inv = invert(c);
    for (const Word& u : legs) {
      if (u.size() + c.size() > r || !detail::distinct_heads(u, c)) continue;
      const Word x = multiply(invert(u), c);
      const std::int64_t hx = q(x);
      for (const Word& v : legs) {
        if (c.size() + v.size() > r || !detail::distinct_heads(u, v) ||
            !detail::distinct_heads(c, v)) {
          continue;
        }
        const Word y = multiply(c_inv, v);
        const std::int64_t delta = q(multiply(x, y)) - hx - q(y);
        if (std::abs(delta) > best.defect) best = {std::abs(delta), x, y};
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Family audits

/// { i <= K : H_i(yz) != H_i(y) + H_i(z) } for the linear family.
inline std::vector<int> exceptional_indices(const BrooksFamily& family, const Word& y,
                                            const Word& z) {
  const Word yz = multiply(y, z);
  const auto hy = family.values(y);
  const auto hz = family.values(z);
  const auto hyz = family.values(yz);
  std::vector<int> out;
  for (std::size_t j = 0; j < hy.size(); ++j) {
    if (hyz[j] != hy[j] + hz[j]) out.push_back(static_cast<int>(j) + 1);
  }
  return out;
}

inline std::vector<int> exceptional_indices(const Word& y, const Word& z, int K) {
  check_same_rank(y, z);
  return exceptional_indices(BrooksFamily(K, y.rank()), y, z);
}

/// Per-index CSV: i, H_i(y), H_i(z), H_i(yz), delta; then a summary row.
inline void write_exceptional_csv(std::ostream& os, const BrooksFamily& family, const Word& y,
                                  const Word& z, std::int64_t bound) {
  const Word yz = multiply(y, z);
  const auto hy = family.values(y);
  const auto hz = family.values(z);
  const auto hyz = family.values(yz);
  std::int64_t count = 0;
  csv::write_row(os, {"i", "H_i(y)", "H_i(z)", "H_i(yz)", "delta"});
  for (std::size_t j = 0; j < hy.size(); ++j) {
    const std::int64_t delta = hyz[j] - hy[j] - hz[j];
    if (delta != 0) ++count;
    csv::write_row(os, {csv::cell(j + 1), csv::cell(hy[j]), csv::cell(hz[j]), csv::cell(hyz[j]),
                        csv::cell(delta)});
  }
  csv::write_row(os, {"count", csv::cell(count), "bound", csv::cell(bound), ""});
}

struct PairBoundsReport {
  std::int64_t distance_x = 0;
  std::int64_t distance_y = 0;
  std::int64_t distance_z = 0;
  std::int64_t L = 0;
  std::int64_t single = 0;  ///< #{i : r_i(x-, x+) != 0}
  std::int64_t paired = 0;  ///< #{i : r_i(x-, y+) + r_i(y-, x+) != 0}
  std::int64_t triple = 0;  ///< #{i : r_i(x-, y+) + r_i(y-, z+) + r_i(z-, x+) != 0}

  [[nodiscard]] bool single_ok() const noexcept { return single <= L; }
  [[nodiscard]] bool paired_ok() const noexcept { return paired <= 2 * L; }
  [[nodiscard]] bool triple_ok() const noexcept { return triple <= 3 * L + 3; }
  [[nodiscard]] bool all_ok() const noexcept { return single_ok() && paired_ok() && triple_ok(); }
};

/// Counts, over the family H_1..H_K, the indices where the three bicombing
/// sums from the bad-coset estimate are non-zero, with L the largest of the
/// pair distances |x-^-1 x+|, |y-^-1 y+|, |z-^-1 z+|.
inline PairBoundsReport audit_pair_bounds(const BrooksFamily& family, const Word& x_minus,
                                          const Word& x_plus, const Word& y_minus,
                                          const Word& y_plus, const Word& z_minus,
                                          const Word& z_plus) {
  PairBoundsReport report;
  const auto dist = [](const Word& u, const Word& v) {
    return static_cast<std::int64_t>(multiply(invert(u), v).size());
  };
  report.distance_x = dist(x_minus, x_plus);
  report.distance_y = dist(y_minus, y_plus);
  report.distance_z = dist(z_minus, z_plus);
  report.L = std::max({report.distance_x, report.distance_y, report.distance_z});

  const auto r = [&](const Word& u, const Word& v) { return family.values(multiply(invert(u), v)); };
  const auto xx = r(x_minus, x_plus);
  const auto xy = r(x_minus, y_plus);
  const auto yx = r(y_minus, x_plus);
  const auto yz = r(y_minus, z_plus);
  const auto zx = r(z_minus, x_plus);
  for (std::size_t j = 0; j < xx.size(); ++j) {
    if (xx[j] != 0) ++report.single;
    if (xy[j] + yx[j] != 0) ++report.paired;
    if (xy[j] + yz[j] + zx[j] != 0) ++report.triple;
  }
  return report;
}

inline PairBoundsReport audit_pair_bounds(const Word& x_minus, const Word& x_plus,
                                          const Word& y_minus, const Word& y_plus,
                                          const Word& z_minus, const Word& z_plus, int K) {
  return audit_pair_bounds(BrooksFamily(K, x_minus.rank()), x_minus, x_plus, y_minus, y_plus,
                           z_minus, z_plus);
}

}  // namespace vw

#endif  // VW_COUNTING_HPP
