/**
 * Brute-force oracle: exhaustive avoider enumeration with incremental
 * pruning.  The pruned walk is cross-checked against an unpruned filter,
 * and a prefix-restricted set from the literature is frozen exactly.
 */

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "eschemes/oracle.hpp"
#include "eschemes/scheme.hpp" // all_perms

using namespace eschemes;

namespace {

/** Unpruned reference: filter every permutation of {1..n}. */
std::vector<Perm> avoiders_by_filter(int n, const PatternSet &B) {
  std::vector<Perm> out;
  for (const Perm &p : all_perms(n)) {
    if (avoids(p.letters(), B)) {
      out.push_back(p);
    }
  }
  return out;
}

} // namespace

TEST_CASE("small avoider sets are exactly right", "[oracle]") {
  const PatternSet B = parse_pattern_set("1-2-3");
  const std::vector<Perm> av3 = enumerate_avoiders(3, B);
  const std::vector<Perm> expected = {Perm({1, 3, 2}), Perm({2, 1, 3}),
                                      Perm({2, 3, 1}), Perm({3, 1, 2}),
                                      Perm({3, 2, 1})};
  CHECK(av3 == expected);
  CHECK(brute_count(0, B) == 1); // the empty permutation avoids everything
  CHECK(brute_count(1, B) == 1);
}

TEST_CASE("prefix-restricted avoiders starting 53", "[oracle]") {
  const PatternSet B = parse_pattern_set("1-2-3");
  const std::vector<Perm> spt = prefix_restricted(5, B, {5, 3});
  const std::vector<Perm> expected = {
      Perm({5, 3, 1, 4, 2}), Perm({5, 3, 2, 1, 4}), Perm({5, 3, 2, 4, 1}),
      Perm({5, 3, 4, 1, 2}), Perm({5, 3, 4, 2, 1})};
  CHECK(spt == expected);
  CHECK(prefix_restricted_count(5, B, {5, 3}) == 5);
  CHECK_FALSE(prefix_restricted_empty(5, B, {5, 3}));
  // A prefix that already contains the pattern has no completions.
  CHECK(prefix_restricted_empty(5, B, {1, 2, 3}));
  CHECK(prefix_restricted_count(5, B, {1, 2, 3}) == 0);
}

TEST_CASE("prefix validation", "[oracle]") {
  const PatternSet B;
  CHECK_THROWS_AS(prefix_restricted(4, B, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(prefix_restricted(4, B, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(prefix_restricted(4, B, {5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(prefix_restricted(2, B, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("the cap guards against runaway enumeration", "[oracle]") {
  CHECK_THROWS_AS(brute_count(kOracleCap + 1, PatternSet{}),
                  std::invalid_argument);
  CHECK_NOTHROW(brute_count(5, PatternSet{}, 5));
  CHECK_THROWS_AS(brute_count(6, PatternSet{}, 5), std::invalid_argument);
}

TEST_CASE("pruned walk equals the unpruned filter", "[oracle]") {
  // Vincular patterns make the pruning nontrivial: a deleted-letter copy
  // must honor adjacencies.
  for (const char *setSpec : {"1-2-3", "12-3", "213", "2-1-3,1-2-3-4",
                              "1-32"}) {
    const PatternSet B = parse_pattern_set(setSpec);
    for (int n = 0; n <= 7; ++n) {
      INFO("B = " << setSpec << ", n = " << n);
      CHECK(enumerate_avoiders(n, B) == avoiders_by_filter(n, B));
    }
  }
}

TEST_CASE("counts without storage match enumeration", "[oracle]") {
  const PatternSet B = parse_pattern_set("1-3-2");
  for (int n = 0; n <= 8; ++n) {
    CHECK(brute_count(n, B) ==
          static_cast<long>(enumerate_avoiders(n, B).size()));
  }
  CHECK(brute_count(6, PatternSet{}) == 720);
}

TEST_CASE("completions stream in lexicographic order and can stop",
          "[oracle]") {
  const PatternSet B = parse_pattern_set("1-2-3");
  std::vector<Word> seen;
  for_each_completion(5, B, {5, 3}, [&](const Word &w) { seen.push_back(w); });
  REQUIRE(seen.size() == 5);
  CHECK(std::is_sorted(seen.begin(), seen.end()));

  int visits = 0;
  const bool stopped = for_each_completion_until(5, B, {5, 3},
                                                 [&](const Word &) {
                                                   ++visits;
                                                   return visits == 2;
                                                 });
  CHECK(stopped);
  CHECK(visits == 2);
}

TEST_CASE("emptiness probe agrees with counting", "[oracle]") {
  const PatternSet B = parse_pattern_set("12-3");
  for (const Perm &p : all_perms(2)) {
    // Realize the prefix pattern as words inside {1..5}.
    for (int a = 1; a <= 5; ++a) {
      for (int b = 1; b <= 5; ++b) {
        if (a == b || reduce({a, b}) != p) {
          continue;
        }
        const Word w = {a, b};
        CHECK(prefix_restricted_empty(5, B, w) ==
              (prefix_restricted_count(5, B, w) == 0));
      }
    }
  }
}
