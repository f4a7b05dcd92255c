#ifndef VW_SUITE_HPP
#define VW_SUITE_HPP

// Property batteries behind `vw suite`. Each battery checks one statement on
// seeded random or exhaustive inputs and keeps its counterexamples.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "vw/counting.hpp"
#include "vw/csv.hpp"
#include "vw/oracle.hpp"
#include "vw/random.hpp"
#include "vw/word.hpp"
#include "vw/word_map.hpp"

namespace vw {

struct SuiteConfig {
  std::uint64_t seed = 7;
  int K = 60;
  int trials = 1000;
  int radius = 5;
  std::int64_t M = 3;
  SearchBudget budget{};
  std::string output_dir;  ///< empty: no files

  void validate() const {
    if (K < 1 || trials < 1 || radius < 1 || M < 1) {
      throw PreconditionError("suite counts must be positive");
    }
    budget.validate();
  }
};

struct Counterexample {
  std::string input;
  std::string observed;
  std::string bound;
};

struct BatteryResult {
  std::string name;
  std::string statement;
  std::int64_t checks = 0;
  std::vector<Counterexample> failures;

  [[nodiscard]] bool passed() const noexcept { return failures.empty(); }

  void check(bool ok, const std::function<Counterexample()>& describe) {
    ++checks;
    if (!ok) failures.push_back(describe());
  }
};

namespace suite {

inline const std::vector<std::string>& divisible_maps() {
  static const std::vector<std::string> maps = {"x1 x2 x1 x2^-1", "x1^2", "x1^3",
                                                "x1^2 x2^2", "x1^2 x2^4 x1^2 x2^-2",
                                                "x1 x2^3 x1 x2^-1"};
  return maps;
}

inline const std::vector<std::string>& commutator_maps() {
  static const std::vector<std::string> maps = {"[x1,x2]", "[[x1,x2],[x3,x4]]", "[x1,x2]^2",
                                                "[x1,x2] [x2,x3]", "x1 x2 x1^-1 x2^-1 x1 x2 x1^-1 x2^-1"};
  return maps;
}

// Random word map over up to 4 variables, rerolled until non-trivial.
inline WordMap random_word_map(Rng& rng) {
  while (true) {
    const int k = static_cast<int>(rng.between(1, 4));
    const Word body = random_word(rng, k, 8);
    if (!body.empty()) return WordMap(body);
  }
}

inline BatteryResult brooks_powers(const SuiteConfig& cfg, Rng& rng) {
  BatteryResult r{"brooks_powers", "Brooks: H_w(w^n) >= n for cyclically reduced w; H antisymmetric", 0, {}};
  for (int i = 1; i <= std::min(cfg.K, 10); ++i) {
    const Word g = family_pattern(i);
    for (CountMode mode : {CountMode::linear, CountMode::cyclic}) {
      const CountingQM q(g, mode);
      for (int n = 1; n <= 10; ++n) {
        const auto v = q(power(g, n));
        r.check(v == n, [&] {
          return Counterexample{"g_" + std::to_string(i) + "^" + std::to_string(n) + " " +
                                    std::string(to_string(mode)),
                                std::to_string(v), "== n"};
        });
      }
    }
  }
  for (int t = 0; t < cfg.trials; ++t) {
    const Word p = cyclic_reduce(random_word(rng, 2, 6)).core;
    if (p.empty()) continue;
    const CountingQM q(p, CountMode::cyclic);
    const CountingQM ql(p, CountMode::linear);
    const int n = static_cast<int>(rng.between(1, 5));
    const auto v = q(power(p, n));
    r.check(v >= n, [&] {
      return Counterexample{to_string(p) + "^" + std::to_string(n), std::to_string(v), ">= n"};
    });
    const Word x = random_audit_word(rng, 20, 9);
    for (const CountingQM* h : {&q, &ql}) {
      const auto plus = (*h)(x);
      const auto minus = (*h)(invert(x));
      r.check(plus == -minus, [&] {
        return Counterexample{"antisymmetry " + to_string(p) + " on " + to_string(x),
                              std::to_string(plus) + " vs " + std::to_string(minus), "H(x^-1) = -H(x)"};
      });
    }
  }
  return r;
}

inline BatteryResult defect(const SuiteConfig& cfg, Rng& rng) {
  BatteryResult r{"defect", "tripod bound: |H_i(yz) - H_i(y) - H_i(z)| <= 3", 0, {}};
  const int top = std::min(cfg.K, 10);
  const BrooksFamily family(top);
  for (int i = 1; i <= top; ++i) {
    const auto d = defect_exact(family[i], cfg.radius);
    r.check(d.defect <= 3, [&] {
      return Counterexample{"g_" + std::to_string(i) + " ball radius " + std::to_string(cfg.radius) +
                                " at (" + to_string(d.x) + ", " + to_string(d.y) + ")",
                            std::to_string(d.defect), "3"};
    });
  }
  for (int t = 0; t < cfg.trials; ++t) {
    const Word y = random_audit_word(rng, 20, 2 * top + 1);
    const Word z = random_audit_word(rng, 20, 2 * top + 1);
    const Word yz = multiply(y, z);
    const auto hy = family.values(y);
    const auto hz = family.values(z);
    const auto hyz = family.values(yz);
    for (std::size_t j = 0; j < hy.size(); ++j) {
      const auto delta = hyz[j] - hy[j] - hz[j];
      r.check(delta <= 3 && delta >= -3, [&] {
        return Counterexample{"g_" + std::to_string(j + 1) + " on (" + to_string(y) + ", " +
                                  to_string(z) + ")",
                              std::to_string(delta), "3"};
      });
    }
  }
  return r;
}

inline BatteryResult exceptional(const SuiteConfig& cfg, Rng& rng) {
  BatteryResult r{"exceptional", "additivity of H_i on (y,z) fails for at most 3 indices", 0, {}};
  const BrooksFamily family(cfg.K);
  for (int t = 0; t < cfg.trials; ++t) {
    const Word y = random_audit_word(rng, 12, 9);
    const Word z = random_audit_word(rng, 12, 9);
    const auto ex = exceptional_indices(family, y, z);
    r.check(ex.size() <= 3, [&] {
      return Counterexample{"(" + to_string(y) + ", " + to_string(z) + ")",
                            std::to_string(ex.size()), "3"};
    });
  }
  return r;
}

inline BatteryResult pair_bounds(const SuiteConfig& cfg, Rng& rng) {
  BatteryResult r{"pair_bounds", "bad-coset counts: <= L, <= 2L, <= 3L+3 nonzero r_i sums", 0, {}};
  const BrooksFamily family(cfg.K);
  for (int t = 0; t < cfg.trials; ++t) {
    const auto base = [&] { return random_audit_word(rng, 16, 9); };
    const auto nudge = [&] { return random_audit_word(rng, 6, 6); };
    const Word xm = base();
    const Word ym = base();
    const Word zm = base();
    const Word xp = multiply(xm, nudge());
    const Word yp = multiply(ym, nudge());
    const Word zp = multiply(zm, nudge());
    const auto rep = audit_pair_bounds(family, xm, xp, ym, yp, zm, zp);
    r.check(rep.all_ok(), [&] {
      return Counterexample{to_string(xm) + " " + to_string(xp) + " " + to_string(ym) + " " +
                                to_string(yp) + " " + to_string(zm) + " " + to_string(zp),
                            std::to_string(rep.single) + "/" + std::to_string(rep.paired) + "/" +
                                std::to_string(rep.triple),
                            "L=" + std::to_string(rep.L)};
    });
  }
  return r;
}

inline BatteryResult divisibility(const SuiteConfig& cfg, Rng& rng) {
  BatteryResult r{"divisibility", "free-group additivity: d | H_i(w(g_1..g_k)) except <= M(|w|-1) indices", 0, {}};
  const BrooksFamily family(cfg.K);
  for (const auto& text : suite::divisible_maps()) {
    const WordMap w = parse_wordmap(text);
    const auto d = exponent_data(w).d;
    const auto bound = cfg.M * static_cast<std::int64_t>(w.length() - 1);
    for (int t = 0; t < std::max(1, cfg.trials / 10); ++t) {
      std::vector<Word> args;
      for (int j = 0; j < w.arity(); ++j) args.push_back(random_audit_word(rng, 10, 9));
      const Word g = substitute(w, args);
      const auto values = family.values(g);
      const auto count = std::count_if(values.begin(), values.end(),
                                       [d](std::int64_t v) { return v % d != 0; });
      r.check(count <= bound, [&] {
        std::string in = text + " at";
        for (const auto& a : args) in += " " + to_string(a);
        return Counterexample{in, std::to_string(count), std::to_string(bound)};
      });
    }
  }
  return r;
}

inline BatteryResult witness_values(const SuiteConfig& cfg) {
  BatteryResult r{"witness", "witness h_K: H_i(h_K) = 1 for i <= K, 0 beyond", 0, {}};
  for (const auto& text : suite::divisible_maps()) {
    const WordMap w = parse_wordmap(text);
    for (int K : {1, 5, std::min(cfg.K, 60)}) {
      const Word h = witness(w, K);
      const BrooksFamily family(K + 40);
      const auto values = family.values(h);
      for (int i = 1; i <= K + 40; ++i) {
        const auto v = values[static_cast<std::size_t>(i - 1)];
        const std::int64_t want = i <= K ? 1 : 0;
        r.check(v == want, [&] {
          return Counterexample{text + " K=" + std::to_string(K) + " i=" + std::to_string(i),
                                std::to_string(v), std::to_string(want)};
        });
      }
    }
  }
  return r;
}

inline BatteryResult bezout(const SuiteConfig& cfg, Rng& rng) {
  BatteryResult r{"bezout", "g^d is a single verbal value via x_i -> g^{a_i}", 0, {}};
  int done = 0;
  while (done < cfg.trials) {
    const WordMap w = suite::random_word_map(rng);
    const auto data = exponent_data(w);
    if (data.d == 0) continue;
    ++done;
    const Word g = random_audit_word(rng, 10, 5);
    const Word value = substitute(w, power_as_verbal_value(w, g));
    r.check(value == power(g, data.d), [&] {
      return Counterexample{to_string(w) + " at " + to_string(g), to_string(value),
                            "g^" + std::to_string(data.d)};
    });
  }
  return r;
}

inline BatteryResult svl(const SuiteConfig&) {
  BatteryResult r{"svl", "d(w) = 0: H_g(g^n) >= n and svl_w(g) >= 1/(Delta |w|) > 0", 0, {}};
  for (const auto& text : suite::commutator_maps()) {
    const WordMap w = parse_wordmap(text);
    const auto cert = certify_svl_positive(w, 10);
    for (const auto& e : cert.evidence) {
      r.check(e.cyclic >= e.n, [&] {
        return Counterexample{text + " n=" + std::to_string(e.n), std::to_string(e.cyclic), ">= n"};
      });
    }
    r.check(cert.numerator > 0 && cert.denominator > 0, [&] {
      return Counterexample{text, std::to_string(cert.numerator) + "/" + std::to_string(cert.denominator),
                            "> 0"};
    });
  }
  return r;
}

inline BatteryResult relator(const SuiteConfig&) {
  BatteryResult r{"relator", "[[c,d],[a,b]] [[a,b],[c,d]] = 1 in F(a,b,c,d)", 0, {}};
  const Word a = parse_word("a", 4), b = parse_word("b", 4), c = parse_word("c", 4),
             d = parse_word("d", 4);
  const Word lhs = multiply(commutator(commutator(c, d), commutator(a, b)),
                            commutator(commutator(a, b), commutator(c, d)));
  r.check(lhs.empty(), [&] { return Counterexample{"relator", to_string(lhs), "1"}; });
  const Word ab = commutator(a, b);
  r.check(invert(ab) == commutator(b, a), [&] {
    return Counterexample{"[a,b]^-1 vs [b,a]", to_string(invert(ab)), to_string(commutator(b, a))};
  });
  return r;
}

inline BatteryResult certificates(const SuiteConfig& cfg) {
  BatteryResult r{"certificates", "vl(h_K) >= K/(M|w|); certified bounds never exceed search upper bounds", 0, {}};
  const WordMap w = parse_wordmap("x1 x2 x1 x2^-1");
  std::vector<int> ks = {1, 2, 3, 4, 12, 30, 60, cfg.K};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::int64_t previous = 0;
  for (int K : ks) {
    const Witness h = witness_factors(w, K);
    const auto cert = certify_vl_lower_bound(w, h.word, K, cfg.M);
    const auto floor_bound = K / (cfg.M * static_cast<std::int64_t>(w.length()));
    r.check(cert.lower_bound >= floor_bound && cert.lower_bound <= 2 * K, [&] {
      return Counterexample{"K=" + std::to_string(K), std::to_string(cert.lower_bound),
                            "[" + std::to_string(floor_bound) + ", " + std::to_string(2 * K) + "]"};
    });
    r.check(cert.lower_bound >= previous, [&] {
      return Counterexample{"monotone at K=" + std::to_string(K), std::to_string(cert.lower_bound),
                            ">= " + std::to_string(previous)};
    });
    previous = cert.lower_bound;
    if (K <= 4) {
      SearchBudget b = cfg.budget;
      b.max_factor_length = std::max(b.max_factor_length, 2 * K + 2);
      b.max_product_factors = std::max(b.max_product_factors, 2 * K);
      const auto check = cross_check_certificate(cert, b);
      r.check(check.verdict == Verdict::ok && check.upper_bound && *check.upper_bound <= 2 * K, [&] {
        return Counterexample{"cross-check K=" + std::to_string(K), std::string(to_string(check.verdict)),
                              "OK with upper <= " + std::to_string(2 * K)};
      });
    }
  }
  return r;
}

}  // namespace suite

struct SuiteReport {
  std::vector<BatteryResult> batteries;
  [[nodiscard]] bool passed() const {
    return std::all_of(batteries.begin(), batteries.end(),
                       [](const BatteryResult& b) { return b.passed(); });
  }
};

inline void write_battery_csv(std::ostream& os, const BatteryResult& b) {
  csv::write_row(os, {"battery", "input", "observed", "bound"});
  for (const auto& f : b.failures) csv::write_row(os, {b.name, f.input, f.observed, f.bound});
  csv::write_row(os, {b.name, "checks=" + std::to_string(b.checks),
                      "violations=" + std::to_string(b.failures.size()),
                      b.passed() ? "pass" : "FAIL"});
}

inline void write_suite_summary(std::ostream& os, const SuiteReport& report) {
  csv::write_row(os, {"battery", "statement", "checks", "violations", "result"});
  for (const auto& b : report.batteries) {
    csv::write_row(os, {b.name, b.statement, csv::cell(b.checks), csv::cell(b.failures.size()),
                        b.passed() ? "pass" : "FAIL"});
  }
}

/// Runs every battery in a fixed order from one seeded stream; writes
/// <battery>.csv and summary.csv into cfg.output_dir when it is set.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SuiteReport report;
  report.batteries.push_back(suite::brooks_powers(cfg, rng));
  report.batteries.push_back(suite::defect(cfg, rng));
  report.batteries.push_back(suite::exceptional(cfg, rng));
  report.batteries.push_back(suite::pair_bounds(cfg, rng));
  report.batteries.push_back(suite::divisibility(cfg, rng));
  report.batteries.push_back(suite::witness_values(cfg));
  report.batteries.push_back(suite::bezout(cfg, rng));
  report.batteries.push_back(suite::svl(cfg));
  report.batteries.push_back(suite::relator(cfg));
  report.batteries.push_back(suite::certificates(cfg));

  if (!cfg.output_dir.empty()) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    for (const auto& b : report.batteries) {
      std::ofstream f(dir / (b.name + ".csv"));
      write_battery_csv(f, b);
    }
    std::ofstream f(dir / "summary.csv");
    write_suite_summary(f, report);
  }
  return report;
}

}  // namespace vw

#endif  // VW_SUITE_HPP
