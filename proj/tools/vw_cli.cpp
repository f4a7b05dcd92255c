// vw: command-line front end for the vw header library.
//
// Exit codes: 0 success, 1 usage or input error, 2 property violation.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vw/counting.hpp"
#include "vw/csv.hpp"
#include "vw/oracle.hpp"
#include "vw/suite.hpp"
#include "vw/word.hpp"
#include "vw/word_map.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct Options {
  std::string w;
  std::string g;
  std::string pattern;
  std::string y;
  std::string z;
  int rank = 2;
  int K = 0;
  std::int64_t M = 3;
  std::string mode = "linear";
  int radius = 5;
  int trials = 1000;
  std::uint64_t seed = 7;
  int family_index = 0;
  int n_max = 10;
  int g_from_witness = 0;
  int budget_factor_len = 3;
  int budget_factors = 4;
  std::uint64_t budget_states = 2'000'000;
  std::string out;
  bool plot = false;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

vw::SearchBudget budget_of(const Options& o) {
  return vw::SearchBudget{o.budget_factor_len, o.budget_factors, o.budget_states};
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
  return value;
}

int require_positive(int value, const char* flag) {
  if (value < 1) throw UsageError(std::string("flag ") + flag + " must be a positive integer");
  return value;
}

// Data goes to --out when given, stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

vw::CountingQM pattern_qm(const Options& o) {
  const auto mode = vw::parse_count_mode(o.mode);
  if (!o.pattern.empty()) return vw::CountingQM(vw::parse_word(o.pattern, o.rank), mode);
  if (o.family_index >= 1) return vw::CountingQM(vw::family_pattern(o.family_index, o.rank), mode);
  throw UsageError("give --pattern or --i");
}

int cmd_reduce(const Options& o) {
  const auto x = vw::parse_word(require(o.g, "--g"), o.rank);
  const auto cyc = vw::cyclic_reduce(x);
  auto& os = std::cout;
  vw::csv::write_row(os, {"field", "value"});
  vw::csv::write_row(os, {"reduced", vw::to_string(x)});
  vw::csv::write_row(os, {"length", vw::csv::cell(x.size())});
  vw::csv::write_row(os, {"cyclic_core", vw::to_string(cyc.core)});
  vw::csv::write_row(os, {"conjugator", vw::to_string(cyc.conjugator)});
  return kExitOk;
}

int cmd_count(const Options& o) {
  const auto p = vw::parse_word(require(o.pattern, "--pattern"), o.rank);
  const auto x = vw::parse_word(o.g, o.rank);
  const auto mode = vw::parse_count_mode(o.mode);
  const auto subject = mode == vw::CountMode::cyclic ? vw::cyclic_reduce(x).core : x;
  vw::csv::write_row(std::cout, {"pattern", "subject", "mode", "count", "self_overlap_free"});
  vw::csv::write_row(std::cout, {vw::to_string(p), vw::to_string(subject), std::string(vw::to_string(mode)),
                                 vw::csv::cell(vw::count_occurrences(p, subject, mode)),
                                 vw::csv::cell(vw::self_overlap_free(p))});
  return kExitOk;
}

int cmd_qm(const Options& o, bool radius_given) {
  const auto x = vw::parse_word(o.g, o.rank);
  auto& os = std::cout;
  if (o.pattern.empty() && o.family_index < 1) {
    if (o.K < 1) throw UsageError("give --pattern, --i, or --K for the family table");
    const vw::BrooksFamily family(o.K, o.rank);
    const auto values = family.values(x);
    vw::csv::write_row(os, {"i", "H_i"});
    for (std::size_t j = 0; j < values.size(); ++j) {
      vw::csv::write_row(os, {vw::csv::cell(j + 1), vw::csv::cell(values[j])});
    }
    return kExitOk;
  }
  const auto q = pattern_qm(o);
  vw::csv::write_row(os, {"pattern", "mode", "x", "H"});
  vw::csv::write_row(os, {vw::to_string(q.pattern()), std::string(vw::to_string(q.mode())),
                          vw::to_string(x), vw::csv::cell(q(x))});
  if (radius_given) {
    const auto d = vw::defect_exact(q, o.radius);
    vw::csv::write_row(os, {"defect_radius", "defect", "x", "y"});
    vw::csv::write_row(os, {vw::csv::cell(o.radius), vw::csv::cell(d.defect), vw::to_string(d.x),
                            vw::to_string(d.y)});
  }
  return kExitOk;
}

int cmd_audit(const Options& o) {
  const auto y = vw::parse_word(o.y, 2);
  const auto z = vw::parse_word(o.z, 2);
  const vw::BrooksFamily family(require_positive(o.K, "--K"));
  Sink sink(o.out);
  vw::write_exceptional_csv(sink.stream(), family, y, z, o.M);
  const auto ex = vw::exceptional_indices(family, y, z);
  return static_cast<std::int64_t>(ex.size()) <= o.M ? kExitOk : kExitViolation;
}

int cmd_wordmap(const Options& o) {
  const auto w = vw::parse_wordmap(require(o.w, "--w"));
  const auto data = vw::exponent_data(w);
  const auto join = [](const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  std::string note;
  if (data.d == 1) {
    note = "d = 1: w[G] = w(G) = G and the width is 1";
  } else if (data.d == 0) {
    note = "d = 0: w(G) lies in [G,G]; use svl for a positive stable verbal length";
  } else {
    note = "d >= 2: g^d is in w[G]; use witness/certify for growing verbal length";
  }
  vw::csv::write_row(std::cout, {"w", "arity", "length", "e", "d", "bezout", "note"});
  vw::csv::write_row(std::cout, {vw::to_string(w), vw::csv::cell(w.arity()), vw::csv::cell(w.length()),
                                 join(data.e), vw::csv::cell(data.d), join(data.bezout), note});
  return kExitOk;
}

// d(w) = 1 is not an error for the width commands: the width is known to be 1.
bool report_trivial_width(const vw::WordMap& w) {
  const auto d = vw::exponent_data(w).d;
  if (d == 1) {
    std::cout << "d(w) = 1: w[G] = w(G) = G and the width is 1\n";
    return true;
  }
  if (d == 0) throw UsageError("d(w) = 0: witnesses need d >= 2; try the svl command");
  return false;
}

int cmd_witness(const Options& o) {
  const auto w = vw::parse_wordmap(require(o.w, "--w"));
  if (report_trivial_width(w)) return kExitOk;
  const auto h = vw::witness_factors(w, require_positive(o.K, "--K"));
  Sink sink(o.out);
  auto& os = sink.stream();
  vw::csv::write_row(os, {"field", "value"});
  vw::csv::write_row(os, {"witness", vw::to_string(h.word)});
  vw::csv::write_row(os, {"length", vw::csv::cell(h.word.size())});
  vw::csv::write_row(os, {"verbal_factors", vw::csv::cell(h.factors.size())});
  return kExitOk;
}

void write_plot(std::ostream& os, const vw::WidthCertificate& cert) {
  os << std::setw(8) << "K" << std::setw(8) << "count" << std::setw(13) << "lower_bound" << '\n';
  std::int64_t count = 0;
  for (int k = 1; k <= cert.K; ++k) {
    if (cert.values[static_cast<std::size_t>(k - 1)] % cert.d != 0) ++count;
    const auto lb = vw::vl_lower_bound_from_count(count, cert.M,
                                                  static_cast<std::int64_t>(cert.word_map.length()),
                                                  cert.element.is_identity());
    os << std::setw(8) << k << std::setw(8) << count << std::setw(13) << lb << '\n';
  }
}

int cmd_certify(const Options& o) {
  const auto w = vw::parse_wordmap(require(o.w, "--w"));
  if (report_trivial_width(w)) return kExitOk;
  const int K = require_positive(o.K, "--K");
  const vw::Word g = o.g_from_witness > 0 ? vw::witness(w, o.g_from_witness)
                                          : vw::parse_word(o.g, o.rank);
  const auto cert = vw::certify_vl_lower_bound(w, g, K, o.M);
  if (!o.out.empty()) {
    Sink sink(o.out);
    vw::write_certificate_csv(sink.stream(), cert);
  }
  std::cout << vw::certificate_summary(cert).dump() << '\n';
  if (o.plot) write_plot(std::cout, cert);
  return kExitOk;
}

int cmd_svl(const Options& o) {
  const auto w = vw::parse_wordmap(require(o.w, "--w"));
  const auto cert = vw::certify_svl_positive(w, require_positive(o.n_max, "--n"), {},
                                             o.budget_factor_len);
  Sink sink(o.out);
  auto& os = sink.stream();
  vw::csv::write_row(os, {"n", "H_cyclic(g^n)", "H_linear(g^n)"});
  for (const auto& e : cert.evidence) {
    vw::csv::write_row(os, {vw::csv::cell(e.n), vw::csv::cell(e.cyclic), vw::csv::cell(e.linear)});
  }
  nlohmann::ordered_json j;
  j["w"] = vw::to_string(w);
  j["g"] = vw::to_string(cert.element.element);
  j["swapped"] = cert.element.swapped;
  j["defect_bound"] = cert.defect_bound;
  j["defect_bound_policy"] = cert.defect_policy;
  j["svl_lower_bound"] = std::to_string(cert.numerator) + "/" + std::to_string(cert.denominator);
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int cmd_oracle(const Options& o) {
  const auto w = vw::parse_wordmap(require(o.w, "--w"));
  const vw::Word g = o.g_from_witness > 0 ? vw::witness(w, o.g_from_witness)
                                          : vw::parse_word(o.g, o.rank);
  const auto budget = budget_of(o);
  if (o.K >= 1) {
    const auto cert = vw::certify_vl_lower_bound(w, g, o.K, o.M);
    const auto check = vw::cross_check_certificate(cert, budget);
    vw::write_cross_check_header(std::cout);
    vw::write_cross_check_row(std::cout, check);
    return check.verdict == vw::Verdict::fail ? kExitViolation : kExitOk;
  }
  const auto r = vw::vl_upper_bound(w, g, budget);
  vw::csv::write_row(std::cout, {"w", "g", "outcome", "vl_upper_bound", "note"});
  vw::csv::write_row(std::cout, {vw::to_string(w), vw::to_string(g), std::string(vw::to_string(r.outcome)),
                                 r.upper_bound ? vw::csv::cell(*r.upper_bound) : std::string(),
                                 "upper bound on vl only; longer arguments are unseen"});
  return kExitOk;
}

int cmd_suite(const Options& o) {
  vw::SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.K = o.K > 0 ? o.K : 60;
  cfg.trials = require_positive(o.trials, "--trials");
  cfg.radius = require_positive(o.radius, "--radius");
  cfg.M = o.M;
  cfg.budget = budget_of(o);
  cfg.output_dir = o.out;
  const auto report = vw::run_suite(cfg);
  vw::write_suite_summary(std::cout, report);
  if (!report.passed()) {
    for (const auto& b : report.batteries) {
      if (!b.passed()) vw::write_battery_csv(std::cerr, b);
    }
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-group verbal width toolkit: Brooks quasi-morphisms, witnesses, certificates"};
  app.set_config("--config", "", "key=value file with any of the flags below");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--w", o.w, "word map, e.g. \"x1 x2 x1 x2^-1\" or \"[x1,x2]\"");
  app.add_option("--g", o.g, "group element, e.g. \"abAB\" or \"a^3 B^2\"");
  app.add_option("--pattern", o.pattern, "counting pattern word");
  app.add_option("--i", o.family_index, "family index i, pattern a b^{2i} a b^{2i+1}");
  app.add_option("--y", o.y, "first word of an audit pair");
  app.add_option("--z", o.z, "second word of an audit pair");
  app.add_option("--rank", o.rank, "rank of the free group")->check(CLI::Range(1, 26));
  app.add_option("--K", o.K, "number of family members H_1..H_K");
  app.add_option("--M", o.M, "declared exceptional-index constant")->check(CLI::PositiveNumber);
  app.add_option("--mode", o.mode, "counting mode")->check(CLI::IsMember({"linear", "cyclic"}));
  auto* radius = app.add_option("--radius", o.radius, "ball radius");
  app.add_option("--trials", o.trials, "random trials per battery");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--n", o.n_max, "largest power n for svl evidence");
  app.add_option("--g-from-witness", o.g_from_witness, "use witness(w, N) as the element");
  app.add_option("--budget-factor-len", o.budget_factor_len, "oracle: argument ball radius");
  app.add_option("--budget-factors", o.budget_factors, "oracle: maximum product length");
  app.add_option("--budget-states", o.budget_states, "oracle: state guard");
  app.add_option("--out", o.out, "output file (directory for suite)");
  app.add_flag("--plot", o.plot, "certify: also print lower_bound vs K as a text table");

  auto* reduce = app.add_subcommand("reduce", "free and cyclic reduction of --g");
  auto* count = app.add_subcommand("count", "occurrences of --pattern in --g");
  auto* qm = app.add_subcommand("qm", "Brooks quasi-morphism value (and defect with --radius)");
  auto* audit = app.add_subcommand("audit", "per-index additivity audit of H_i on (--y, --z)");
  auto* wordmap = app.add_subcommand("wordmap", "exponent sums, d(w) and Bezout data of --w");
  auto* witness = app.add_subcommand("witness", "witness word h_K for --w");
  auto* certify = app.add_subcommand("certify", "verbal-length lower-bound certificate");
  auto* svl = app.add_subcommand("svl", "stable verbal length evidence for d(w) = 0");
  auto* oracle = app.add_subcommand("oracle", "search upper bound on vl, or cross-check with --K");
  auto* suite = app.add_subcommand("suite", "run every property battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(o);
    if (count->parsed()) return cmd_count(o);
    if (qm->parsed()) return cmd_qm(o, radius->count() > 0);
    if (audit->parsed()) return cmd_audit(o);
    if (wordmap->parsed()) return cmd_wordmap(o);
    if (witness->parsed()) return cmd_witness(o);
    if (certify->parsed()) return cmd_certify(o);
    if (svl->parsed()) return cmd_svl(o);
    if (oracle->parsed()) return cmd_oracle(o);
    if (suite->parsed()) return cmd_suite(o);
  } catch (const vw::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
