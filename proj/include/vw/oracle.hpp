#ifndef VW_ORACLE_HPP
#define VW_ORACLE_HPP

// Brute-force checks that share no code path with the certificate machinery:
// ball enumeration, bounded verbal values, upper bounds on verbal length by
// search, and independent re-evaluation of certificates.
//
// Everything here yields UPPER bounds on vl_w. Arguments longer than the
// budget are never seen, so "not found" says nothing about vl_w itself.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vw/ball.hpp"
#include "vw/csv.hpp"
#include "vw/error.hpp"
#include "vw/word.hpp"
#include "vw/word_map.hpp"

namespace vw {

struct SearchBudget {
  int max_factor_length = 3;    ///< radius of the argument ball
  int max_product_factors = 4;  ///< deepest BFS layer
  std::uint64_t max_states = 2'000'000;

  void validate() const {
    if (max_factor_length < 1 || max_product_factors < 1 || max_states < 1) {
      throw PreconditionError("search budget fields must all be positive");
    }
  }
};

// enumerate_ball lives in ball.hpp; it is shared with the defect scan.

namespace detail {

// Calls fn(args) for every k-tuple drawn from `pool`. Returns false (and
// calls nothing) when the tuple count exceeds `limit`.
template <class Fn>
bool for_each_tuple(const std::vector<Word>& pool, std::size_t k, std::uint64_t limit, Fn&& fn) {
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (total > limit / std::max<std::uint64_t>(pool.size(), 1)) return false;
    total *= pool.size();
  }
  if (total > limit) return false;
  std::vector<std::size_t> idx(k, 0);
  std::vector<Word> args(k, pool.front());
  while (true) {
    for (std::size_t j = 0; j < k; ++j) args[j] = pool[idx[j]];
    fn(args);
    std::size_t j = k;
    while (j > 0 && idx[j - 1] + 1 == pool.size()) idx[--j] = 0;
    if (j == 0) break;
    ++idx[j - 1];
  }
  return true;
}

}  // namespace detail

/// { w(args) : every argument in the ball of radius max_factor_length }.
inline std::set<Word> verbal_values_bounded(const WordMap& w, int rank, const SearchBudget& budget) {
  budget.validate();
  const auto ball = enumerate_ball(rank, budget.max_factor_length, budget.max_states);
  std::set<Word> values;
  const bool ok = detail::for_each_tuple(ball, static_cast<std::size_t>(w.arity()),
                                         budget.max_states,
                                         [&](const std::vector<Word>& args) {
                                           values.insert(substitute(w, args));
                                         });
  if (!ok) {
    throw GuardExceeded("enumerating values of " + to_string(w) + " needs more than " +
                        std::to_string(budget.max_states) + " substitutions");
  }
  return values;
}

enum class SearchOutcome { found, not_found, guard_exceeded };

inline std::string_view to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::not_found: return "not_found";
    case SearchOutcome::guard_exceeded: return "guard_exceeded";
  }
  return "?";
}

struct VlSearchResult {
  SearchOutcome outcome = SearchOutcome::not_found;
  std::optional<int> upper_bound;  ///< vl_w(g) <= *upper_bound when found
  bool group_search_ran = false;   ///< BFS over the whole group
  bool segment_search_ran = false; ///< factorizations along g's letters
  std::uint64_t states = 0;
};

namespace detail {

// BFS in F_rank over products of bounded verbal values and their inverses.
// Returns nullopt when g is not reached; throws GuardExceeded on overflow.
inline std::optional<int> group_bfs(const WordMap& w, const Word& g, const SearchBudget& budget,
                                    std::uint64_t& states) {
  const auto values = verbal_values_bounded(w, g.rank(), budget);
  std::vector<Word> steps;
  for (const auto& v : values) {
    if (v.empty()) continue;
    steps.push_back(v);
    steps.push_back(invert(v));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  std::unordered_set<Word, WordHash> seen{Word(g.rank())};
  std::vector<Word> frontier{Word(g.rank())};
  for (int depth = 1; depth <= budget.max_product_factors && !frontier.empty(); ++depth) {
    std::vector<Word> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        Word y = multiply(x, s);
        if (y == g) {
          states = seen.size();
          return depth;
        }
        if (seen.insert(y).second) {
          if (seen.size() > budget.max_states) {
            throw GuardExceeded("BFS visited more than " + std::to_string(budget.max_states) +
                                " states");
          }
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  states = seen.size();
  return std::nullopt;
}

// Shortest factorization g = v_1 ... v_n into consecutive subwords of g, each
// a value of w (or its inverse) on arguments drawn from the subwords of g and
// their inverses with length <= max_factor_length. Sound but incomplete: it
// only sees factorizations without cancellation between factors.
inline std::optional<int> segment_search(const WordMap& w, const Word& g,
                                         const SearchBudget& budget, std::uint64_t& states) {
  const std::size_t n = g.size();
  const auto L = static_cast<std::size_t>(budget.max_factor_length);
  std::set<Word> pool_set{Word(g.rank())};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t len = 1; len <= L && i + len <= n; ++len) {
      const Word s = g.subword(i, len);
      pool_set.insert(s);
      pool_set.insert(invert(s));
    }
  }
  const std::vector<Word> pool(pool_set.begin(), pool_set.end());
  const std::size_t max_value = L * w.length();

  std::unordered_set<Word, WordHash> subwords;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t len = 1; len <= max_value && i + len <= n; ++len) {
      subwords.insert(g.subword(i, len));
      if (subwords.size() > budget.max_states) {
        throw GuardExceeded("too many subwords of the target");
      }
    }
  }
  std::unordered_set<Word, WordHash> usable;
  const bool ok = for_each_tuple(pool, static_cast<std::size_t>(w.arity()), budget.max_states,
                                 [&](const std::vector<Word>& args) {
                                   const Word v = substitute(w, args);
                                   if (v.empty()) return;
                                   if (subwords.contains(v)) usable.insert(v);
                                   const Word vi = invert(v);
                                   if (subwords.contains(vi)) usable.insert(vi);
                                 });
  if (!ok) throw GuardExceeded("segment search needs too many substitutions");
  states = pool.size() + usable.size();

  // dist[p] = fewest factors spelling g[0, p).
  constexpr int kUnreached = -1;
  std::vector<int> dist(n + 1, kUnreached);
  dist[0] = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (dist[p] == kUnreached || dist[p] >= budget.max_product_factors) continue;
    for (std::size_t len = 1; len <= max_value && p + len <= n; ++len) {
      if (!usable.contains(g.subword(p, len))) continue;
      int& target = dist[p + len];
      if (target == kUnreached || target > dist[p] + 1) target = dist[p] + 1;
    }
  }
  if (dist[n] == kUnreached) return std::nullopt;
  return dist[n];
}

}  // namespace detail

/// Smallest number of bounded verbal values (or inverses) whose product is g
/// that the budget lets us find; an upper bound on vl_w(g). Two searches run:
/// a BFS over the group (complete within the budget) and a factorization
/// along the letters of g (reaches long targets the BFS cannot). The result
/// is the better of the two.
inline VlSearchResult vl_upper_bound(const WordMap& w, const Word& g, const SearchBudget& budget) {
  budget.validate();
  VlSearchResult result;
  if (g.empty()) {
    result.outcome = SearchOutcome::found;
    result.upper_bound = 0;
    return result;
  }
  bool overflow = false;
  const auto take = [&](std::optional<int> found) {
    if (found && (!result.upper_bound || *found < *result.upper_bound)) result.upper_bound = found;
  };
  try {
    std::uint64_t states = 0;
    take(detail::group_bfs(w, g, budget, states));
    result.group_search_ran = true;
    result.states += states;
  } catch (const GuardExceeded&) {
    overflow = true;
  }
  try {
    std::uint64_t states = 0;
    take(detail::segment_search(w, g, budget, states));
    result.segment_search_ran = true;
    result.states += states;
  } catch (const GuardExceeded&) {
    overflow = true;
  }
  if (result.upper_bound) {
    result.outcome = SearchOutcome::found;
  } else {
    result.outcome = overflow ? SearchOutcome::guard_exceeded : SearchOutcome::not_found;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Certificate cross-check

/// H_p(x) by scanning every start position; no failure tables.
inline std::int64_t naive_brooks_value(const Word& pattern, const Word& x) {
  const Word inverse = invert(pattern);
  std::int64_t value = 0;
  const std::size_t m = pattern.size();
  for (std::size_t p = 0; p + m <= x.size(); ++p) {
    bool fwd = true;
    bool bwd = true;
    for (std::size_t j = 0; j < m && (fwd || bwd); ++j) {
      fwd = fwd && x[p + j] == pattern[j];
      bwd = bwd && x[p + j] == inverse[j];
    }
    value += static_cast<std::int64_t>(fwd) - static_cast<std::int64_t>(bwd);
  }
  return value;
}

enum class Verdict { ok, fail, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ok: return "OK";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct CrossCheck {
  Verdict verdict = Verdict::inconclusive;
  std::int64_t lower_bound = 0;
  std::optional<int> upper_bound;
  SearchOutcome search = SearchOutcome::not_found;
  std::optional<int> first_mismatch;  ///< first index i whose recorded H_i is wrong
  std::string reason;
};

/// Re-evaluates every H_i recorded in the certificate with a naive scan, then
/// recomputes the bad-index set and the bound, and finally compares the
/// bound with an upper bound found by search.
inline CrossCheck cross_check_certificate(const WidthCertificate& cert, const SearchBudget& budget) {
  CrossCheck out;
  out.lower_bound = cert.lower_bound;
  if (cert.values.size() != static_cast<std::size_t>(cert.K)) {
    out.verdict = Verdict::fail;
    out.reason = "certificate records " + std::to_string(cert.values.size()) +
                 " values for K = " + std::to_string(cert.K);
    return out;
  }
  std::vector<int> bad;
  for (int i = 1; i <= cert.K; ++i) {
    // a b^{2i} a b^{2i+1}, spelled out again here on purpose.
    std::string spelled = "a" + std::string(2 * static_cast<std::size_t>(i), 'b') + "a" +
                          std::string(2 * static_cast<std::size_t>(i) + 1, 'b');
    const Word pattern = parse_word(spelled, cert.element.rank());
    const std::int64_t value = naive_brooks_value(pattern, cert.element);
    if (value != cert.values[static_cast<std::size_t>(i - 1)]) {
      out.verdict = Verdict::fail;
      out.first_mismatch = i;
      out.reason = "H_" + std::to_string(i) + " recorded as " +
                   std::to_string(cert.values[static_cast<std::size_t>(i - 1)]) +
                   ", recomputed " + std::to_string(value);
      return out;
    }
    if (value % cert.d != 0) bad.push_back(i);
  }
  if (bad != cert.bad_indices) {
    out.verdict = Verdict::fail;
    out.reason = "non-divisible index set does not match the recorded values";
    return out;
  }
  const std::int64_t mw = cert.M * static_cast<std::int64_t>(cert.word_map.length());
  std::int64_t expected = cert.element.empty() ? 0 : 1;
  if (!bad.empty()) {
    expected = 0;
    while (expected * mw < static_cast<std::int64_t>(bad.size()) + cert.M) ++expected;
  }
  if (expected != cert.lower_bound) {
    out.verdict = Verdict::fail;
    out.reason = "lower bound " + std::to_string(cert.lower_bound) + " should be " +
                 std::to_string(expected);
    return out;
  }

  const auto search = vl_upper_bound(cert.word_map, cert.element, budget);
  out.search = search.outcome;
  out.upper_bound = search.upper_bound;
  if (!search.upper_bound) {
    out.verdict = Verdict::inconclusive;
    out.reason = "values verified; no upper bound within budget";
    return out;
  }
  if (*search.upper_bound < cert.lower_bound) {
    out.verdict = Verdict::fail;
    out.reason = "upper bound " + std::to_string(*search.upper_bound) + " below certified " +
                 std::to_string(cert.lower_bound);
    return out;
  }
  out.verdict = Verdict::ok;
  out.reason = "values verified; lower bound <= search upper bound";
  return out;
}

inline void write_cross_check_header(std::ostream& os) {
  csv::write_row(os, {"verdict", "lower_bound", "upper_bound", "search", "first_mismatch", "note"});
}

/// One CSV row. The upper bound column is an upper bound only.
inline void write_cross_check_row(std::ostream& os, const CrossCheck& c) {
  csv::write_row(os, {std::string(to_string(c.verdict)), csv::cell(c.lower_bound),
                      c.upper_bound ? csv::cell(*c.upper_bound) : std::string(),
                      std::string(to_string(c.search)),
                      c.first_mismatch ? csv::cell(*c.first_mismatch) : std::string(),
                      c.reason + " (search gives upper bounds on vl only)"});
}

}  // namespace vw

#endif  // VW_ORACLE_HPP
