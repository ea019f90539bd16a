/**
 * Scheme evaluation: counting sequences and statistic distributions read
 * off discovered schemes, cross-checked against the brute-force oracle
 * and against frozen classical values (Catalan numbers, the descent
 * distribution over the 1-2-3 avoiders, factorials for the empty set).
 */

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

#include "eschemes/discover.hpp"
#include "eschemes/evaluate.hpp"
#include "eschemes/oracle.hpp"
#include "eschemes/statistic.hpp"

using namespace eschemes;

namespace {

/** Discovered once per process; later cases reuse the cached copies. */
const Scheme &scheme123_c0() {
  static const Scheme s =
      *discover(parse_pattern_set("1-2-3"), 0).scheme;
  return s;
}

const Scheme &scheme123_c1() {
  static const Scheme s =
      *discover(parse_pattern_set("1-2-3"), 1, SearchBounds{4, 2, 10})
           .scheme;
  return s;
}

const Scheme &scheme132_c2() {
  static const Scheme s =
      *discover(parse_pattern_set("1-3-2"), 2, SearchBounds{4, 2, 10})
           .scheme;
  return s;
}

} // namespace

TEST_CASE("the scheme for 1-2-3 counts Catalan numbers", "[evaluate]") {
  const std::vector<long> catalan = {1,    2,    5,     14,    42,   132,
                                     429,  1430, 4862,  16796, 58786,
                                     208012};
  const std::vector<mpz_class> seq = counting_sequence(scheme123_c0(), 12);
  REQUIRE(seq.size() == 12);
  for (int n = 1; n <= 12; ++n) {
    INFO("n = " << n);
    CHECK(seq[static_cast<std::size_t>(n - 1)] ==
          catalan[static_cast<std::size_t>(n - 1)]);
  }
  CHECK(oeis_format(seq) ==
        "1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012");
  CHECK(scheme_count(scheme123_c0(), 0) == 1);
}

TEST_CASE("the symmetric class 1-3-2 is also Catalan", "[evaluate]") {
  const Scheme s = *discover(parse_pattern_set("1-3-2"), 0).scheme;
  SchemeEvaluator eval(s);
  const std::vector<long> catalan = {1,   2,    5,    14,   42,
                                     132, 429,  1430, 4862, 16796};
  for (int n = 1; n <= 10; ++n) {
    INFO("n = " << n);
    CHECK(eval.count(n) == catalan[static_cast<std::size_t>(n - 1)]);
  }
}

TEST_CASE("degenerate pattern sets count factorials and indicators",
          "[evaluate]") {
  const Scheme everything = *discover(PatternSet{}).scheme;
  SchemeEvaluator eval(everything);
  long factorial = 1;
  CHECK(eval.count(0) == 1);
  for (int n = 1; n <= 8; ++n) {
    factorial *= n;
    INFO("n = " << n);
    CHECK(eval.count(n) == factorial);
  }

  const Scheme nothing = *discover(parse_pattern_set("1")).scheme;
  SchemeEvaluator none(nothing);
  CHECK(none.count(0) == 1);
  for (int n = 1; n <= 6; ++n) {
    INFO("n = " << n);
    CHECK(none.count(n) == 0);
  }
}

TEST_CASE("the descent distribution over the 1-2-3 avoiders",
          "[evaluate]") {
  SchemeEvaluator eval(scheme123_c1(), {builtin::des()});
  CHECK(eval.distribution(1).str() == "1");
  CHECK(eval.distribution(10).str() ==
        "42q^4 + 1770q^5 + 7515q^6 + 6455q^7 + 1013q^8 + q^9");

  const PatternSet B = parse_pattern_set("1-2-3");
  for (int n = 1; n <= 8; ++n) {
    INFO("n = " << n);
    const Polynomial fromScheme = eval.distribution(n);
    CHECK(fromScheme == brute_distribution(n, B, {builtin::des()}));
    CHECK(fromScheme.at_all_ones() == eval.count(n));
  }
}

TEST_CASE("a margin-2 statistic needs and uses a clearance-2 scheme",
          "[evaluate]") {
  SchemeEvaluator eval(scheme132_c2(), {builtin::peak()});
  const PatternSet B = parse_pattern_set("1-3-2");
  for (int n = 1; n <= 8; ++n) {
    INFO("n = " << n);
    CHECK(eval.distribution(n) ==
          brute_distribution(n, B, {builtin::peak()}));
  }
}

TEST_CASE("insufficient clearance is diagnosed and repairable",
          "[evaluate]") {
  // The clearance-0 scheme cannot carry descents (margin 1)...
  CHECK_THROWS_AS(SchemeEvaluator(scheme123_c0(), {builtin::des()}),
                  clearance_error);
  // ...but an upgraded scheme for the same class can.
  const Scheme upgraded =
      ensure_clearance(scheme123_c0(), 1, SearchBounds{4, 2, 10});
  SchemeEvaluator eval(upgraded, {builtin::des()});
  CHECK(eval.distribution(5) ==
        brute_distribution(5, parse_pattern_set("1-2-3"),
                           {builtin::des()}));
}

TEST_CASE("statistics outside the direct workflow are rejected",
          "[evaluate]") {
  // maj only exists through reversal; the direct evaluator refuses it.
  CHECK_THROWS_AS(SchemeEvaluator(scheme123_c1(), {builtin::maj()}),
                  std::invalid_argument);
  // rtlcopies:21 has a margin but its increment fails certification.
  CHECK_THROWS_AS(
      SchemeEvaluator(scheme123_c1(),
                      {parse_statistic("rtlcopies:21")}),
      std::domain_error);
  SchemeEvaluator ok(scheme123_c1());
  CHECK_THROWS_AS(ok.distribution(-1), std::invalid_argument);
}

TEST_CASE("memoization is an optimization, not a semantic", "[evaluate]") {
  EvalOptions plain;
  plain.memoize = false;
  SchemeEvaluator memoized(scheme123_c1(), {builtin::des()});
  SchemeEvaluator direct(scheme123_c1(), {builtin::des()}, plain);
  for (int n = 1; n <= 7; ++n) {
    INFO("n = " << n);
    CHECK(memoized.distribution(n) == direct.distribution(n));
  }
}

TEST_CASE("joint distributions hit their extreme degrees", "[evaluate]") {
  // The decreasing permutation avoids 1-2-3 with the most inversions and
  // descents possible, so both degree bounds are attained exactly.
  SchemeEvaluator eval(scheme123_c1(),
                       MultiStat{builtin::inv(), builtin::des()});
  const Polynomial d6 = eval.distribution(6);
  CHECK(d6.max_exponent(0) == 15); // 6 * 5 / 2
  CHECK(d6.max_exponent(1) == 5);
  CHECK(d6 == brute_distribution(6, parse_pattern_set("1-2-3"),
                                 MultiStat{builtin::inv(), builtin::des()}));
}

TEST_CASE("a scheme found through symmetry still counts the original",
          "[evaluate]") {
  const PatternSet B = parse_pattern_set("2-3-1");
  const SymmetricDiscoveryOutcome out =
      discover_with_symmetry(B, 0, SearchBounds{3, 2, 9});
  REQUIRE(out.scheme.has_value());
  SchemeEvaluator eval(*out.scheme);
  for (int n = 1; n <= 8; ++n) {
    INFO("n = " << n);
    CHECK(eval.count(n) == brute_count(n, B));
  }
}

TEST_CASE("the reversal workflow recovers maj and des jointly",
          "[evaluate]") {
  const PatternSet B = parse_pattern_set("2-1-3,1-2-3");
  ReversalEvaluator eval(B, MultiStat{builtin::maj(), builtin::des()}, 0,
                         SearchBounds{2, 2, 10});
  CHECK(eval.scheme().symmetry == Symmetry::reverse);
  CHECK(to_string(eval.original_patterns()) == "2-1-3,1-2-3");
  for (int n = 1; n <= 8; ++n) {
    INFO("n = " << n);
    const Polynomial expected = brute_distribution(
        n, B, MultiStat{builtin::maj(), builtin::des()});
    CHECK(eval.distribution(n) == expected);
    CHECK(eval.count(n) == brute_count(n, B));
  }
}

TEST_CASE("the reversal workflow reports unreachable classes",
          "[evaluate]") {
  // Reversing 1-3-2 gives 2-3-1, which has no finite scheme at any
  // shallow depth; the failure must carry the frontier diagnostics.
  CHECK_THROWS_WITH(
      ReversalEvaluator(parse_pattern_set("1-3-2"),
                        MultiStat{builtin::maj()}, 0,
                        SearchBounds{3, 2, 9}),
      Catch::Matchers::ContainsSubstring("2-3-1") &&
          Catch::Matchers::ContainsSubstring("open frontier"));
}
