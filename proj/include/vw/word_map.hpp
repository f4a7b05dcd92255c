#ifndef VW_WORD_MAP_HPP
#define VW_WORD_MAP_HPP

// Word maps w(x_1, ..., x_k), their exponent sums, the Bezout substitution
// putting g^d in w[F], the witness words h_K and verbal-length certificates.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vw/ball.hpp"
#include "vw/counting.hpp"
#include "vw/csv.hpp"
#include "vw/error.hpp"
#include "vw/word.hpp"

namespace vw {

inline constexpr int kMaxArity = 9;

/// A non-trivial reduced word in variables x_1..x_k. The body is stored as a
/// Word over rank k, so generator j stands for x_{j+1}.
class WordMap {
public:
  explicit WordMap(Word body) : body_(std::move(body)) {
    if (body_.empty()) throw PreconditionError("word map body reduces to the identity");
  }

  [[nodiscard]] int arity() const noexcept { return body_.rank(); }
  [[nodiscard]] const Word& body() const noexcept { return body_; }
  /// |w|, the number of variable letters.
  [[nodiscard]] std::size_t length() const noexcept { return body_.size(); }

  friend bool operator==(const WordMap&, const WordMap&) = default;

private:
  Word body_;
};

namespace detail {

class WordMapParser {
public:
  explicit WordMapParser(std::string_view text) : text_(text) {}

  WordMap parse() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty word map", pos_);
    std::vector<Letter> body = parse_body();
    skip();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    const Word reduced = reduce(max_variable_, body);
    if (reduced.empty()) throw PreconditionError("word map body reduces to the identity");
    return WordMap(reduced);
  }

private:
  void skip() { pos_ = skip_space(text_, pos_); }

  [[nodiscard]] bool at_term_start() const {
    return pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == '[');
  }

  std::vector<Letter> parse_body() {
    std::vector<Letter> out;
    skip();
    if (!at_term_start()) throw ParseError("expected a variable x1..x9 or '['", pos_);
    while (at_term_start()) {
      const auto term = parse_term();
      out.insert(out.end(), term.begin(), term.end());
      skip();
    }
    return out;
  }

  std::vector<Letter> parse_term() {
    std::vector<Letter> base;
    if (text_[pos_] == 'x') {
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] < '1' || text_[pos_] > '9') {
        throw ParseError("expected variable index 1..9 after 'x'", pos_);
      }
      const int index = text_[pos_] - '1';
      max_variable_ = std::max(max_variable_, index + 1);
      base.push_back(Letter{static_cast<std::uint8_t>(index), 1});
      ++pos_;
    } else {
      ++pos_;  // '['
      const auto u = parse_body();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ',') throw ParseError("expected ','", pos_);
      ++pos_;
      const auto v = parse_body();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ']') throw ParseError("expected ']'", pos_);
      ++pos_;
      base = u;
      base.insert(base.end(), v.begin(), v.end());
      for (auto it = u.rbegin(); it != u.rend(); ++it) base.push_back(it->inverse());
      for (auto it = v.rbegin(); it != v.rend(); ++it) base.push_back(it->inverse());
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      const std::int64_t e = parse_exponent(text_, pos_);
      std::vector<Letter> unit = base;
      if (e < 0) {
        unit.clear();
        for (auto it = base.rbegin(); it != base.rend(); ++it) unit.push_back(it->inverse());
      }
      const auto reps = static_cast<std::size_t>(e < 0 ? -e : e);
      if (unit.size() * reps > kMaxParsedLength) throw ParseError("word map too long", pos_);
      base.clear();
      for (std::size_t r = 0; r < reps; ++r) base.insert(base.end(), unit.begin(), unit.end());
    }
    return base;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_variable_ = 1;
};

}  // namespace detail

/// Grammar: BODY := TERM+, TERM := (VAR | '[' BODY ',' BODY ']') EXP?,
/// VAR := 'x' [1-9]. [u,v] expands to u v u^-1 v^-1. The arity is the largest
/// variable index that appears.
inline WordMap parse_wordmap(std::string_view text) { return detail::WordMapParser(text).parse(); }

/// Run-length form, e.g. "x2 x1 x2^-2".
inline std::string to_string(const WordMap& w) {
  std::string out;
  const auto letters = w.body().letters();
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out.push_back(' ');
    out += "x" + std::to_string(letters[i].generator + 1);
    const auto run = static_cast<std::int64_t>(j - i) * letters[i].sign;
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const WordMap& w) { return os << to_string(w); }

// ---------------------------------------------------------------------------
// Exponent sums

struct ExponentData {
  std::vector<std::int64_t> e;       ///< e_i, exponent sum of x_i
  std::int64_t d = 0;                ///< gcd of the e_i, 0 when all vanish
  std::vector<std::int64_t> bezout;  ///< sum a_i e_i = d
};

namespace detail {

struct ExtendedGcd {
  std::int64_t g;
  std::int64_t s;
  std::int64_t t;
};

// s*a + t*b = g with g >= 0.
inline ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace detail

/// Exponent sums, d(w) and Bezout coefficients by left-to-right extended
/// Euclid over the non-zero e_i.
inline ExponentData exponent_data(const WordMap& w) {
  ExponentData out;
  const auto k = static_cast<std::size_t>(w.arity());
  out.e.assign(k, 0);
  out.bezout.assign(k, 0);
  for (Letter l : w.body()) out.e[l.generator] += l.sign;

  bool started = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (out.e[i] == 0) continue;
    if (!started) {
      out.d = out.e[i] < 0 ? -out.e[i] : out.e[i];
      out.bezout[i] = out.e[i] < 0 ? -1 : 1;
      started = true;
      continue;
    }
    const auto [g, s, t] = detail::extended_gcd(out.d, out.e[i]);
    for (std::size_t j = 0; j < i; ++j) out.bezout[j] *= s;
    out.bezout[i] = t;
    out.d = g;
  }
  std::int64_t check = 0;
  for (std::size_t i = 0; i < k; ++i) check += out.bezout[i] * out.e[i];
  if (check != out.d) throw VerificationError("Bezout identity failed for " + to_string(w));
  return out;
}

/// w(args): each x_i replaced by args[i] (inverted for x_i^-1), then reduced.
inline Word substitute(const WordMap& w, std::span<const Word> args) {
  if (args.size() != static_cast<std::size_t>(w.arity())) {
    throw PreconditionError("word map has arity " + std::to_string(w.arity()) + " but " +
                            std::to_string(args.size()) + " arguments were given");
  }
  const int rank = args.front().rank();
  std::vector<Word> inverses;
  inverses.reserve(args.size());
  for (const auto& a : args) {
    check_same_rank(args.front(), a);
    inverses.push_back(invert(a));
  }
  Word out(rank);
  for (Letter l : w.body()) {
    out = multiply(out, l.sign > 0 ? args[l.generator] : inverses[l.generator]);
  }
  return out;
}

/// Arguments x_i = g^{a_i} with sum a_i e_i = d, so that w(args) = g^d.
inline std::vector<Word> power_as_verbal_value(const WordMap& w, const Word& g) {
  const auto data = exponent_data(w);
  if (data.d == 0) {
    throw PreconditionError("d(w) = 0: powers of g are not verbal values via exponent sums");
  }
  std::vector<Word> args;
  args.reserve(data.bezout.size());
  for (std::int64_t a : data.bezout) args.push_back(power(g, a));
  if (substitute(w, args) != power(g, data.d)) {
    throw VerificationError("substitution of g^{a_i} into " + to_string(w) +
                            " did not give g^d for g = " + to_string(g));
  }
  return args;
}

// ---------------------------------------------------------------------------
// Witness words

struct Witness {
  Word word;
  /// h'_1, h''_1, ..., h'_K, h''_K; each is a value of w, and their
  /// concatenation (no cancellation) is `word`.
  std::vector<Word> factors;
};

namespace detail {

inline Word a_b_power(std::int64_t n) {
  std::vector<Letter> letters{Letter{0, 1}};
  letters.insert(letters.end(), static_cast<std::size_t>(n), Letter{1, 1});
  return reduce(2, letters);
}

// Longest run of b's with an a on both sides.
inline std::size_t longest_interior_b_run(const Word& x) {
  std::size_t best = 0;
  std::size_t run = 0;
  bool after_a = false;
  for (Letter l : x) {
    if (l == Letter{0, 1}) {
      if (after_a) best = std::max(best, run);
      after_a = true;
      run = 0;
    } else {
      ++run;
    }
  }
  return best;
}

}  // namespace detail

/// h_K = h_1 ... h_K with h_i = (a b^{2i})^d (a b^{2i+1})^d, each factor
/// produced by substituting into w. Checked before return: positive, so
/// already reduced; one copy of each g_i, i <= K; no b-run long enough
/// for g_i with i > K.
inline Witness witness_factors(const WordMap& w, int K) {
  if (K < 1) throw PreconditionError("K must be >= 1");
  const auto data = exponent_data(w);
  if (data.d <= 1) {
    throw PreconditionError("witness needs d(w) >= 2, got d = " + std::to_string(data.d));
  }
  Witness out{Word(2), {}};
  out.factors.reserve(2 * static_cast<std::size_t>(K));
  std::vector<Letter> letters;
  for (int i = 1; i <= K; ++i) {
    for (std::int64_t n : {2 * i, 2 * i + 1}) {
      const Word base = detail::a_b_power(n);
      Word value = substitute(w, power_as_verbal_value(w, base));
      letters.insert(letters.end(), value.begin(), value.end());
      out.factors.push_back(std::move(value));
    }
  }
  out.word = reduce(2, letters);

  if (out.word.size() != letters.size() || !out.word.is_positive()) {
    throw VerificationError("witness is not a positive reduced word");
  }
  const BrooksFamily family(K);
  for (int i = 1; i <= K; ++i) {
    const Word& g = family[i].pattern();
    if (count_occurrences(g, out.word, CountMode::linear) != 1 ||
        count_occurrences(invert(g), out.word, CountMode::linear) != 0) {
      throw VerificationError("witness does not contain g_" + std::to_string(i) +
                              " exactly once");
    }
  }
  if (detail::longest_interior_b_run(out.word) > static_cast<std::size_t>(2 * K + 1)) {
    throw VerificationError("witness has a b-run admitting g_i for i > K");
  }
  return out;
}

inline Word witness(const WordMap& w, int K) { return witness_factors(w, K).word; }

// ---------------------------------------------------------------------------
// Verbal-length certificates

struct WidthCertificate {
  WordMap word_map;
  Word element;
  int K = 0;
  std::int64_t d = 0;
  std::int64_t M = 3;
  std::vector<std::int64_t> values;  ///< values[i-1] = H_i(element)
  std::vector<int> bad_indices;      ///< i with d not dividing H_i(element)
  std::int64_t lower_bound = 0;

  [[nodiscard]] std::int64_t count() const noexcept {
    return static_cast<std::int64_t>(bad_indices.size());
  }
};

/// If vl(g) = n, at most M(n-1) + nM(|w|-1) = nM|w| - M family members can
/// see a value not divisible by d. Inverting: n >= (count + M) / (M|w|).
inline std::int64_t vl_lower_bound_from_count(std::int64_t count, std::int64_t M,
                                              std::int64_t word_length, bool is_identity) {
  if (count == 0) return is_identity ? 0 : 1;
  const std::int64_t den = M * word_length;
  return (count + M + den - 1) / den;
}

/// Evaluates H_1..H_K (linear mode) on g and bounds vl_w(g) from below. The
/// bound holds provided M really is an exceptional-index constant for the
/// family; M is recorded, never assumed.
inline WidthCertificate certify_vl_lower_bound(const WordMap& w, const Word& g, int K,
                                               std::int64_t M = 3) {
  if (K < 1) throw PreconditionError("K must be >= 1");
  if (M < 1) throw PreconditionError("M must be >= 1");
  const auto data = exponent_data(w);
  if (data.d <= 1) {
    throw PreconditionError("certificates need d(w) >= 2, got d = " + std::to_string(data.d));
  }
  WidthCertificate cert{w, g, K, data.d, M, {}, {}, 0};
  cert.values = BrooksFamily(K, g.rank()).values(g);
  for (int i = 1; i <= K; ++i) {
    if (cert.values[static_cast<std::size_t>(i - 1)] % data.d != 0) cert.bad_indices.push_back(i);
  }
  cert.lower_bound = vl_lower_bound_from_count(cert.count(), M,
                                               static_cast<std::int64_t>(w.length()),
                                               g.is_identity());
  return cert;
}

/// Rows i, H_i, divisible.
inline void write_certificate_csv(std::ostream& os, const WidthCertificate& cert) {
  csv::write_row(os, {"i", "H_i", "divisible"});
  for (std::size_t j = 0; j < cert.values.size(); ++j) {
    csv::write_row(os, {csv::cell(j + 1), csv::cell(cert.values[j]),
                        csv::cell(cert.values[j] % cert.d == 0)});
  }
}

inline nlohmann::ordered_json certificate_summary(const WidthCertificate& cert) {
  nlohmann::ordered_json j;
  j["w"] = to_string(cert.word_map);
  j["d"] = cert.d;
  j["K"] = cert.K;
  j["M"] = cert.M;
  j["count"] = cert.count();
  j["lower_bound"] = cert.lower_bound;
  j["element_length"] = cert.element.size();
  j["defect_bound_policy"] = "declared exceptional-index constant M=" + std::to_string(cert.M) +
                             "; bound is conditional on M";
  return j;
}

// ---------------------------------------------------------------------------
// d(w) = 0: a cyclically reduced element of w(F) and the svl certificate

struct VerbalElement {
  Word element;             ///< non-trivial, cyclically reduced, in w(F)
  Word value;               ///< first non-trivial verbal value found
  std::vector<Word> args;   ///< substitution producing `value`
  bool swapped = false;     ///< element = value * swap(value)
};

/// Searches substitution tuples with arguments in the ball of radius
/// `max_factor_length`, ordered by the largest shortlex index among the
/// arguments and then lexicographically. Returns the first non-trivial
/// value, completed by its a<->b image when it is not cyclically reduced.
inline VerbalElement cyclically_reduced_verbal_element(const WordMap& w, int rank = 2,
                                                       int max_factor_length = 4,
                                                       std::uint64_t max_states = 1'000'000) {
  const auto data = exponent_data(w);
  if (data.d != 0) {
    throw PreconditionError("expected d(w) = 0, got d = " + std::to_string(data.d));
  }
  if (rank != 2) throw RankError("the basis-swap construction is implemented for rank 2");
  const auto ball = enumerate_ball(rank, max_factor_length, max_states);
  const auto k = static_cast<std::size_t>(w.arity());
  std::vector<std::size_t> idx(k, 0);
  std::vector<Word> args(k, Word(rank));

  for (std::size_t top = 0; top < ball.size(); ++top) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      if (std::find(idx.begin(), idx.end(), top) != idx.end()) {
        for (std::size_t j = 0; j < k; ++j) args[j] = ball[idx[j]];
        const Word value = substitute(w, args);
        if (!value.empty()) {
          VerbalElement out{value, value, args, false};
          if (!is_cyclically_reduced(value)) {
            const int swap[] = {1, 0};
            out.element = multiply(value, apply_generator_permutation(value, swap));
            out.swapped = true;
          }
          if (out.element.empty() || !is_cyclically_reduced(out.element)) {
            throw VerificationError("swap completion did not give a cyclically reduced element");
          }
          return out;
        }
      }
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == top) idx[--j] = 0;
      if (j == 0) break;
      ++idx[j - 1];
    }
  }
  throw GuardExceeded("no non-trivial value of " + to_string(w) +
                      " with arguments of length <= " + std::to_string(max_factor_length));
}

struct SvlEvidence {
  int n = 0;
  std::int64_t cyclic = 0;  ///< H_g(g^n), cyclic mode
  std::int64_t linear = 0;  ///< H_g(g^n), linear mode
};

struct SvlCertificate {
  WordMap word_map;
  VerbalElement element;
  std::int64_t defect_bound = 0;
  std::string defect_policy;
  /// svl_w(element) >= numerator / denominator.
  std::int64_t numerator = 1;
  std::int64_t denominator = 1;
  std::vector<SvlEvidence> evidence;
};

/// For d(w) = 0: H = Brooks map on a cyclically reduced g in w(F). Since
/// |H(x)| <= (vl(x)|w| - 1) Delta on w(F) and H(g^n) >= n, the stable verbal
/// length of g is at least 1 / (Delta |w|).
inline SvlCertificate certify_svl_positive(const WordMap& w, int n_max,
                                           const DefectPolicy& policy = {},
                                           int max_factor_length = 4) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  const auto data = exponent_data(w);
  if (data.d != 0) {
    throw PreconditionError("d(w) = " + std::to_string(data.d) +
                            " >= 1: vl_w(g^n) is bounded, so svl_w vanishes on w(G)");
  }
  SvlCertificate cert{w, cyclically_reduced_verbal_element(w, 2, max_factor_length), 0, "", 1, 1,
                      {}};
  const Word& g = cert.element.element;
  cert.defect_bound = policy.bound(g);
  cert.defect_policy = policy.describe(g);
  cert.denominator = cert.defect_bound * static_cast<std::int64_t>(w.length());

  const CountingQM cyclic(g, CountMode::cyclic);
  const CountingQM linear(g, CountMode::linear);
  for (int n = 1; n <= n_max; ++n) {
    const Word gn = power(g, n);
    SvlEvidence row{n, cyclic(gn), linear(gn)};
    if (row.cyclic < n) {
      throw VerificationError("H_g(g^" + std::to_string(n) + ") = " + std::to_string(row.cyclic) +
                              " < n");
    }
    cert.evidence.push_back(row);
  }
  return cert;
}

}  // namespace vw

#endif  // VW_WORD_MAP_HPP
