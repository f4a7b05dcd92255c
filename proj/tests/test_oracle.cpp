#include <gtest/gtest.h>

#include <sstream>

#include "vw/oracle.hpp"
#include "vw/random.hpp"

using namespace vw;

namespace {

Word W(const char* s) { return parse_word(s, 2); }

}  // namespace

TEST(VerbalValues, SquaresOfShortWords) {
  const auto values = verbal_values_bounded(parse_wordmap("x1^2"), 2, SearchBudget{1, 1, 1000});
  std::set<Word> expected = {W("1"), W("aa"), W("AA"), W("bb"), W("BB")};
  EXPECT_EQ(values, expected);
}

TEST(VerbalValues, GuardIsEnforced) {
  EXPECT_THROW(verbal_values_bounded(parse_wordmap("[x1,x2]"), 2, SearchBudget{4, 1, 100}),
               GuardExceeded);
  EXPECT_THROW(SearchBudget({0, 1, 1}).validate(), PreconditionError);
}

TEST(UpperBound, Examples) {
  const auto comm = parse_wordmap("[x1,x2]");
  const SearchBudget budget{2, 3, 2'000'000};
  const auto one = vl_upper_bound(comm, W("abAB"), budget);
  EXPECT_EQ(one.outcome, SearchOutcome::found);
  EXPECT_EQ(one.upper_bound, 1);
  const auto two = vl_upper_bound(comm, W("abABabAB"), budget);
  ASSERT_TRUE(two.upper_bound);
  EXPECT_LE(*two.upper_bound, 2);
  EXPECT_EQ(vl_upper_bound(comm, W("1"), budget).upper_bound, 0);
  // Not in the verbal subgroup: never found.
  EXPECT_FALSE(vl_upper_bound(comm, W("a"), SearchBudget{1, 2, 100'000}).upper_bound);
}

TEST(UpperBound, ExplicitProductsAreFound) {
  // Multiply n known verbal values; the search must not report more than n.
  const auto w = parse_wordmap("x1 x2 x1 x2^-1");
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const int n = static_cast<int>(rng.between(1, 2));
    Word g(2);
    for (int k = 0; k < n; ++k) {
      const std::vector<Word> args = {random_word(rng, 2, 2), random_word(rng, 2, 2)};
      g = multiply(g, substitute(w, args));
    }
    const auto r = vl_upper_bound(w, g, SearchBudget{2, n, 2'000'000});
    ASSERT_TRUE(r.upper_bound) << g;
    EXPECT_LE(*r.upper_bound, n) << g;
  }
}

TEST(UpperBound, MonotoneInBudget) {
  const auto w = parse_wordmap("x1 x2 x1 x2^-1");
  const Word g = witness(w, 2);
  std::optional<int> previous;
  for (int len = 2; len <= 6; ++len) {
    const auto r = vl_upper_bound(w, g, SearchBudget{len, 4, 2'000'000});
    if (previous) {
      ASSERT_TRUE(r.upper_bound);
      EXPECT_LE(*r.upper_bound, *previous);
    }
    if (r.upper_bound) previous = r.upper_bound;
  }
  ASSERT_TRUE(previous);
  EXPECT_LE(*previous, 4);
}

TEST(NaiveBrooks, AgreesWithCountingMap) {
  Rng rng(67);
  for (int t = 0; t < 500; ++t) {
    const Word p = random_word_of_length(rng, 2, 1 + rng.below(6));
    const Word x = random_audit_word(rng, 30, 3);
    EXPECT_EQ(naive_brooks_value(p, x), CountingQM(p)(x));
  }
}

TEST(CrossCheck, WitnessCertificatesAreConsistent) {
  const auto w = parse_wordmap("x1 x2 x1 x2^-1");
  for (int K = 1; K <= 4; ++K) {
    const auto cert = certify_vl_lower_bound(w, witness(w, K), K);
    const auto c = cross_check_certificate(cert, SearchBudget{2 * K + 2, 2 * K, 2'000'000});
    EXPECT_EQ(c.verdict, Verdict::ok) << K << ": " << c.reason;
    ASSERT_TRUE(c.upper_bound);
    EXPECT_LE(*c.upper_bound, 2 * K);
    EXPECT_LE(c.lower_bound, *c.upper_bound);
  }
}

TEST(CrossCheck, TamperedValuesFail) {
  const auto w = parse_wordmap("x1 x2 x1 x2^-1");
  auto cert = certify_vl_lower_bound(w, witness(w, 3), 3);
  cert.values[1] = 2;
  const auto c = cross_check_certificate(cert, SearchBudget{3, 2, 100'000});
  EXPECT_EQ(c.verdict, Verdict::fail);
  EXPECT_EQ(c.first_mismatch, 2);

  auto inflated = certify_vl_lower_bound(w, witness(w, 3), 3);
  inflated.lower_bound = 5;
  EXPECT_EQ(cross_check_certificate(inflated, SearchBudget{3, 2, 100'000}).verdict, Verdict::fail);
}

TEST(CrossCheck, IdentityAndCsv) {
  const auto w = parse_wordmap("x1^2");
  const auto cert = certify_vl_lower_bound(w, W("1"), 5);
  const auto c = cross_check_certificate(cert, SearchBudget{});
  EXPECT_EQ(c.verdict, Verdict::ok);
  std::ostringstream os;
  write_cross_check_header(os);
  write_cross_check_row(os, c);
  EXPECT_NE(os.str().find("\nOK,0,0,"), std::string::npos) << os.str();
}
