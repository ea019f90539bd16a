#ifndef ESCHEMES_ORACLE_HPP
#define ESCHEMES_ORACLE_HPP

/**
 * Brute-force enumeration of pattern-avoiding permutations.
 *
 * This is the ground truth the scheme machinery is tested against: direct
 * backtracking over one-line notation, pruning a branch as soon as the
 * placed prefix contains a forbidden pattern.  Pruning only ever inspects
 * copies whose last letter is the most recently placed one — any copy
 * inside the prefix either lay inside the shorter prefix (checked earlier)
 * or ends at the new position — so the cut is sound and complete.
 *
 * Enumeration is in lexicographic order of one-line notation.  A hard cap
 * on n (default 12) guards against accidental exponential blowups; callers
 * that know what they are doing can raise it explicitly.
 */

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

#include "eschemes/pattern.hpp"
#include "eschemes/perm.hpp"

namespace eschemes {

/** Default refusal threshold for brute-force enumeration. */
inline constexpr int kOracleCap = 12;

namespace detail {

inline void check_oracle_cap(int n, int cap) {
  if (n > cap) {
    throw std::invalid_argument(
        "oracle: n = " + std::to_string(n) + " exceeds the brute-force cap " +
        std::to_string(cap) + "; raise the cap explicitly if intended.");
  }
  if (n < 0) {
    throw std::invalid_argument("oracle: negative n.");
  }
}

/**
 * Core backtracking walk over completions of `cur` to B-avoiding
 * permutations of {1..n}.  Visit is bool(const Word&): return true to stop
 * the whole walk (used for existence tests).  Returns true if stopped.
 */
template <typename Visit>
bool extend_avoiders(Word &cur, std::vector<bool> &used, int n,
                     const PatternSet &B, Visit &visit) {
  if (static_cast<int>(cur.size()) == n) {
    return visit(const_cast<const Word &>(cur));
  }
  for (int v = 1; v <= n; ++v) {
    if (used[static_cast<std::size_t>(v)]) {
      continue;
    }
    cur.push_back(v);
    bool pruned = false;
    for (const auto &pat : B) {
      if (contains_copy_ending_at(cur, pat, static_cast<int>(cur.size()))) {
        pruned = true;
        break;
      }
    }
    if (!pruned) {
      used[static_cast<std::size_t>(v)] = true;
      const bool stopped = extend_avoiders(cur, used, n, B, visit);
      used[static_cast<std::size_t>(v)] = false;
      if (stopped) {
        cur.pop_back();
        return true;
      }
    }
    cur.pop_back();
  }
  return false;
}

/** Shared entry: seeds the walk with a prefix word (possibly empty). */
template <typename Visit>
void walk_completions(int n, const PatternSet &B, const Word &prefix,
                      Visit &&visit, int cap) {
  check_oracle_cap(n, cap);
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (int c : prefix) {
    if (c < 1 || c > n || used[static_cast<std::size_t>(c)]) {
      throw std::invalid_argument("oracle: prefix \"" +
                                  word_to_string(prefix) +
                                  "\" is not a partial permutation of {1.." +
                                  std::to_string(n) + "}.");
    }
    used[static_cast<std::size_t>(c)] = true;
  }
  if (!avoids(prefix, B)) {
    return;
  }
  Word cur = prefix;
  extend_avoiders(cur, used, n, B, visit);
}

} // namespace detail

/**
 * Calls visit(const Word&) for every B-avoiding permutation of {1..n}
 * whose one-line notation starts with `prefix`, in lexicographic order.
 */
template <typename Visit>
void for_each_completion(int n, const PatternSet &B, const Word &prefix,
                         Visit &&visit, int cap = kOracleCap) {
  detail::walk_completions(
      n, B, prefix,
      [&visit](const Word &w) {
        visit(w);
        return false;
      },
      cap);
}

/**
 * Like for_each_completion, but the visitor returns true to stop the
 * walk early.  Returns true when the walk was stopped.
 */
template <typename Visit>
bool for_each_completion_until(int n, const PatternSet &B, const Word &prefix,
                               Visit &&visit, int cap = kOracleCap) {
  bool stopped = false;
  detail::walk_completions(
      n, B, prefix,
      [&](const Word &w) {
        stopped = visit(w);
        return stopped;
      },
      cap);
  return stopped;
}

/** Calls visit(const Word&) for every member of Av_n(B), in lex order. */
template <typename Visit>
void for_each_avoider(int n, const PatternSet &B, Visit &&visit,
                      int cap = kOracleCap) {
  for_each_completion(n, B, Word{}, std::forward<Visit>(visit), cap);
}

/** The prefix-restricted set as a list, in lexicographic order. */
inline std::vector<Perm> prefix_restricted(int n, const PatternSet &B,
                                           const Word &prefix,
                                           int cap = kOracleCap) {
  std::vector<Perm> out;
  for_each_completion(
      n, B, prefix, [&out](const Word &w) { out.emplace_back(w); }, cap);
  return out;
}

/** |{pi in Av_n(B) : pi starts with prefix}| without storing members. */
inline mpz_class prefix_restricted_count(int n, const PatternSet &B,
                                         const Word &prefix,
                                         int cap = kOracleCap) {
  mpz_class count = 0;
  for_each_completion(
      n, B, prefix, [&count](const Word &) { ++count; }, cap);
  return count;
}

/** Emptiness test with early exit at the first completion found. */
inline bool prefix_restricted_empty(int n, const PatternSet &B,
                                    const Word &prefix, int cap = kOracleCap) {
  bool found = false;
  detail::walk_completions(
      n, B, prefix,
      [&found](const Word &) {
        found = true;
        return true; // stop the walk
      },
      cap);
  return !found;
}

/** All of Av_n(B), in lexicographic order. */
inline std::vector<Perm> enumerate_avoiders(int n, const PatternSet &B,
                                            int cap = kOracleCap) {
  return prefix_restricted(n, B, Word{}, cap);
}

/** |Av_n(B)| by direct enumeration. */
inline mpz_class brute_count(int n, const PatternSet &B, int cap = kOracleCap) {
  return prefix_restricted_count(n, B, Word{}, cap);
}

} // namespace eschemes

#endif // ESCHEMES_ORACLE_HPP
