#ifndef ESCHEMES_DISCOVER_HPP
#define ESCHEMES_DISCOVER_HPP

/**
 * Automatic discovery of finite enumeration schemes.
 *
 * Discovery walks the prefix-pattern tree breadth-first from the empty
 * prefix.  At each node p it computes the minimal gap vectors that
 * empirically force emptiness, then looks for a deletable position set
 * confirmed by brute force up to the verification bound; nodes that admit
 * neither are expanded to their one-letter extensions.  The search fails
 * when a node at the depth limit can do none of the three, and reports
 * every such node (the open frontier).
 *
 * All verification here is empirical: a gap vector or deletable set that
 * holds for every n up to verify_n is trusted beyond it.  The bound is
 * recorded in the resulting scheme so downstream consumers know how much
 * evidence backs it, and the independent brute-force oracle is the
 * cross-check of record in the test suite.
 *
 * A clearance request c restricts deletable sets to R within
 * [|p| - c], leaving c letters of headroom at the end of every prefix;
 * statistic increments with margin <= c can then be read off deleted
 * prefixes.  Larger clearance typically deepens the scheme slightly.
 */

#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eschemes/oracle.hpp"
#include "eschemes/pattern.hpp"
#include "eschemes/perm.hpp"
#include "eschemes/scheme.hpp"

namespace eschemes {

/* ------------------------------------------------------------------ */
/* Search bounds.                                                     */
/* ------------------------------------------------------------------ */

struct SearchBounds {
  int max_depth = 2;   // longest prefix pattern the search may track
  int max_gap_sum = 0; // gap vector candidates up to this component sum
  int verify_n = 4;    // empirical checks run for all n up to this

  static int max_pattern_length(const PatternSet &B) {
    int m = 0;
    for (const auto &pat : B) {
      m = std::max(m, pat.size());
    }
    return m;
  }

  /**
   * Defaults scale with the pattern set: depth = max pattern length plus
   * the clearance request (at least 2), gap sums up to max length - 1,
   * and verify_n = max_depth + 2 * max length + 2 — deep enough that a
   * spurious gap vector or deletable set at tracked depths meets a
   * refuting completion.
   */
  static SearchBounds defaults(const PatternSet &B, int clearance = 0) {
    const int len = max_pattern_length(B);
    SearchBounds b;
    b.max_depth = std::max(2, len + clearance);
    b.max_gap_sum = std::max(0, len - 1);
    b.verify_n = b.max_depth + 2 * len + 2;
    return b;
  }

  /** Enforces verify_n >= max_depth + max pattern length + 1. */
  void check(const PatternSet &B) const {
    if (max_depth < 1) {
      throw std::invalid_argument("SearchBounds: max_depth must be >= 1.");
    }
    if (max_gap_sum < 0) {
      throw std::invalid_argument("SearchBounds: max_gap_sum must be >= 0.");
    }
    const int len = max_pattern_length(B);
    if (verify_n < max_depth + len + 1) {
      throw std::invalid_argument(
          "SearchBounds: verify_n = " + std::to_string(verify_n) +
          " is below max_depth + max pattern length + 1 = " +
          std::to_string(max_depth + len + 1) +
          "; empirical checks would be vacuous.");
    }
  }

  std::string str() const {
    return "depth <= " + std::to_string(max_depth) +
           ", gap sum <= " + std::to_string(max_gap_sum) +
           ", verified for n <= " + std::to_string(verify_n);
  }
};

/* ------------------------------------------------------------------ */
/* Word enumeration.                                                  */
/* ------------------------------------------------------------------ */

namespace detail {

/**
 * Visits every word w with reduce(w) = p and letters in {1..n} whose
 * spacing vector dominates minGaps (pass nullptr for no constraint).
 * Words are generated by choosing the increasing value set c_1 < ... <
 * c_k and arranging it in p's order.
 */
template <typename Visit>
void for_each_word(const Perm &p, int n, const GapVector *minGaps,
                   Visit &&visit) {
  const int k = p.size();
  auto gap = [minGaps](int i) { // minimum spacing below value index i
    return minGaps ? (*minGaps)[static_cast<std::size_t>(i)] : 0;
  };
  // Smallest total headroom the remaining choices need.
  std::vector<int> tailNeed(static_cast<std::size_t>(k) + 1, 0);
  tailNeed[static_cast<std::size_t>(k)] = gap(k);
  for (int i = k - 1; i >= 1; --i) {
    tailNeed[static_cast<std::size_t>(i)] =
        tailNeed[static_cast<std::size_t>(i + 1)] + gap(i) + 1;
  }
  std::vector<int> values(static_cast<std::size_t>(k), 0);
  Word w(static_cast<std::size_t>(k), 0);
  auto place = [&](auto &&self, int i, int prev) -> void {
    if (i > k) {
      for (int j = 0; j < k; ++j) {
        w[static_cast<std::size_t>(j)] =
            values[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)];
      }
      visit(const_cast<const Word &>(w));
      return;
    }
    // c_i - c_{i-1} - 1 >= v_i, and room above for the remaining values.
    const int lo = prev + gap(i - 1) + 1;
    const int hi = n - tailNeed[static_cast<std::size_t>(i)];
    for (int c = lo; c <= hi; ++c) {
      values[static_cast<std::size_t>(i - 1)] = c;
      self(self, i + 1, c);
    }
  };
  if (k == 0) {
    if (n >= gap(0)) {
      visit(const_cast<const Word &>(w));
    }
    return;
  }
  place(place, 1, 0);
}

} // namespace detail

/* ------------------------------------------------------------------ */
/* Gap vectors.                                                       */
/* ------------------------------------------------------------------ */

/**
 * Does v empirically force emptiness?  True when no word with spacing
 * dominating v has a B-avoiding completion, for any n up to verify_n.
 */
inline bool is_gap_vector(const Perm &p, const GapVector &v,
                          const PatternSet &B, const SearchBounds &bounds) {
  if (static_cast<int>(v.size()) != p.size() + 1) {
    throw std::invalid_argument("is_gap_vector: arity mismatch.");
  }
  for (int n = p.size(); n <= bounds.verify_n; ++n) {
    bool refuted = false;
    detail::for_each_word(p, n, &v, [&](const Word &w) {
      if (!refuted && !prefix_restricted_empty(n, B, w, bounds.verify_n)) {
        refuted = true;
      }
    });
    if (refuted) {
      return false;
    }
  }
  return true;
}

/**
 * The minimal empirical gap vectors of p with component sum up to
 * max_gap_sum, in (sum, lex) generation order.  A prefix containing a
 * forbidden pattern short-circuits to the all-zero vector: nothing
 * extends it.
 */
inline std::vector<GapVector> find_gap_basis(const Perm &p,
                                             const PatternSet &B,
                                             const SearchBounds &bounds) {
  const int k = p.size();
  for (const auto &pat : B) {
    if (contains(p, pat)) {
      return {GapVector(static_cast<std::size_t>(k) + 1, 0)};
    }
  }
  std::vector<GapVector> basis;
  GapVector v(static_cast<std::size_t>(k) + 1, 0);
  auto fill = [&](auto &&self, int pos, int remaining) -> void {
    if (pos == k + 1) {
      if (remaining != 0) {
        return;
      }
      for (const auto &u : basis) {
        if (dominates(v, u)) {
          return; // dominated candidates add nothing to the basis
        }
      }
      if (is_gap_vector(p, v, B, bounds)) {
        basis.push_back(v);
      }
      return;
    }
    for (int x = 0; x <= remaining; ++x) {
      v[static_cast<std::size_t>(pos)] = x;
      self(self, pos + 1, remaining - x);
      v[static_cast<std::size_t>(pos)] = 0;
    }
  };
  for (int sum = 1; sum <= bounds.max_gap_sum; ++sum) {
    fill(fill, 0, sum);
  }
  return basis;
}

/* ------------------------------------------------------------------ */
/* Deletable sets.                                                    */
/* ------------------------------------------------------------------ */

/**
 * Empirically confirms that deleting the positions R maps the avoiding
 * completions of every gap-free prefix word bijectively onto the
 * avoiding completions of the deleted word.  Injectivity is automatic
 * (re-inserting the deleted letters inverts the map), so the check is:
 * every image avoids B, and the two sets have equal size — including
 * words with no completions at all, whose image set must also be empty.
 */
inline bool is_reversibly_deletable(const Perm &p, const std::vector<int> &R,
                                    const std::vector<GapVector> &gaps,
                                    const PatternSet &B,
                                    const SearchBounds &bounds) {
  if (R.empty()) {
    throw std::invalid_argument("is_reversibly_deletable: empty R.");
  }
  const int k = p.size();
  for (int r : R) {
    if (r < 1 || r > k) {
      throw std::invalid_argument("is_reversibly_deletable: position " +
                                  std::to_string(r) + " outside {1.." +
                                  std::to_string(k) + "}.");
    }
  }
  const int d = static_cast<int>(R.size());
  for (int n = k; n <= bounds.verify_n; ++n) {
    bool refuted = false;
    detail::for_each_word(p, n, nullptr, [&](const Word &w) {
      if (refuted) {
        return;
      }
      const GapVector g = spacing(n, w);
      for (const auto &v : gaps) {
        if (dominates(g, v)) {
          return; // the scheme answers zero here; R owes nothing
        }
      }
      const Word deleted = delete_entries(w, R);
      mpz_class sourceSize = 0;
      const bool badImage = for_each_completion_until(
          n, B, w,
          [&](const Word &pi) {
            ++sourceSize;
            return !avoids(delete_entries(pi, R), B);
          },
          bounds.verify_n);
      if (badImage) {
        refuted = true;
        return;
      }
      const mpz_class targetSize =
          prefix_restricted_count(n - d, B, deleted, bounds.verify_n);
      if (sourceSize != targetSize) {
        refuted = true;
      }
    });
    if (refuted) {
      return false;
    }
  }
  return true;
}

/* ------------------------------------------------------------------ */
/* Discovery.                                                         */
/* ------------------------------------------------------------------ */

struct DiscoveryOutcome {
  std::optional<Scheme> scheme; // engaged on success
  std::vector<Perm> frontier;   // open depth-limit prefixes on failure
  SearchBounds bounds;          // the bounds the search actually used
};

/**
 * Breadth-first scheme discovery for B with the given clearance request.
 * Deterministic: gap candidates are tried in (sum, lex) order, deletable
 * sets in (size, lex) order, nodes in first-enqueued order.
 */
inline DiscoveryOutcome
discover(const PatternSet &B, int clearance = 0,
         std::optional<SearchBounds> boundsIn = std::nullopt) {
  if (clearance < 0) {
    throw std::invalid_argument("discover: negative clearance request.");
  }
  const SearchBounds bounds =
      boundsIn ? *boundsIn : SearchBounds::defaults(B, clearance);
  bounds.check(B);

  DiscoveryOutcome out;
  out.bounds = bounds;

  std::map<Perm, SchemeTriple> triples;
  std::deque<Perm> queue;
  std::set<Perm> scheduled;
  auto schedule = [&](const Perm &p) {
    if (!triples.count(p) && scheduled.insert(p).second) {
      queue.push_back(p);
    }
  };
  schedule(Perm());

  while (!queue.empty()) {
    const Perm p = queue.front();
    queue.pop_front();
    if (triples.count(p)) {
      continue;
    }
    const int k = p.size();
    if (k == 0) {
      triples.emplace(p, SchemeTriple(p, {}, {}));
      for (const auto &child : children(p)) {
        schedule(child);
      }
      continue;
    }

    std::vector<GapVector> gaps = find_gap_basis(p, B, bounds);
    bool dead = false;
    for (const auto &v : gaps) {
      if (is_zero(v)) {
        dead = true;
      }
    }
    if (dead) {
      triples.emplace(p, SchemeTriple(p, std::move(gaps), {}));
      continue;
    }

    // Deletable-set search, smallest sets first, respecting clearance.
    std::vector<int> found;
    const int m = k - clearance;
    for (int size = 1; size <= m && found.empty(); ++size) {
      std::vector<int> R;
      auto choose = [&](auto &&self, int next) -> bool {
        if (static_cast<int>(R.size()) == size) {
          return is_reversibly_deletable(p, R, gaps, B, bounds);
        }
        for (int r = next; r <= m; ++r) {
          R.push_back(r);
          if (self(self, r + 1)) {
            return true;
          }
          R.pop_back();
        }
        return false;
      };
      if (choose(choose, 1)) {
        found = R;
      }
    }
    if (!found.empty()) {
      const Perm target = delete_entries(p, found);
      triples.emplace(p, SchemeTriple(p, std::move(gaps), std::move(found)));
      schedule(target);
      continue;
    }

    if (k == bounds.max_depth) {
      out.frontier.push_back(p); // stuck: cannot close, cannot expand
      continue;
    }
    triples.emplace(p, SchemeTriple(p, std::move(gaps), {}));
    for (const auto &child : children(p)) {
      schedule(child);
    }
  }

  if (!out.frontier.empty()) {
    std::sort(out.frontier.begin(), out.frontier.end());
    return out;
  }
  Scheme s;
  s.patterns = B;
  s.verification_bound = bounds.verify_n;
  s.symmetry = Symmetry::identity;
  s.triples = std::move(triples);
  out.scheme = std::move(s);
  return out;
}

/* ------------------------------------------------------------------ */
/* Discovery through symmetry.                                        */
/* ------------------------------------------------------------------ */

struct SymmetryAttempt {
  Symmetry symmetry;
  PatternSet transformed;
  std::vector<Perm> frontier;
};

struct SymmetricDiscoveryOutcome {
  std::optional<Scheme> scheme;         // tagged with the winning symmetry
  std::vector<SymmetryAttempt> attempts; // failures, in trial order
};

/**
 * Tries B, then its complement, reverse, and reverse-complement, in that
 * fixed order, returning the first scheme found tagged with the symmetry
 * that produced it.  |Av_n(B)| is symmetry-invariant, so counts read from
 * the returned scheme are counts for B; statistic distributions generally
 * are not, and the evaluator's reversal workflow handles the one
 * transform (reverse) with a statistic dictionary.
 */
inline SymmetricDiscoveryOutcome
discover_with_symmetry(const PatternSet &B, int clearance = 0,
                       std::optional<SearchBounds> boundsIn = std::nullopt) {
  SymmetricDiscoveryOutcome out;
  for (Symmetry sym :
       {Symmetry::identity, Symmetry::complement, Symmetry::reverse,
        Symmetry::reverse_complement}) {
    const PatternSet transformed = apply_symmetry(B, sym);
    DiscoveryOutcome attempt = discover(transformed, clearance, boundsIn);
    if (attempt.scheme) {
      attempt.scheme->symmetry = sym;
      out.scheme = std::move(attempt.scheme);
      return out;
    }
    out.attempts.push_back(
        {sym, transformed, std::move(attempt.frontier)});
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Deepening and clearance upgrades.                                  */
/* ------------------------------------------------------------------ */

/**
 * Convenience form of the deepening construction: gap bases come from
 * find_gap_basis over the scheme's own pattern set, deletion sets from
 * longest-ancestor inheritance.  Default bounds follow the usual formula
 * with max_depth pinned to the deepened depth.
 */
inline Scheme deepen(const Scheme &s, int extraClearance,
                     std::optional<SearchBounds> boundsIn = std::nullopt) {
  SearchBounds bounds;
  if (boundsIn) {
    bounds = *boundsIn;
  } else {
    const int len = SearchBounds::max_pattern_length(s.patterns);
    bounds.max_depth = s.depth() + extraClearance;
    bounds.max_gap_sum = std::max(0, len - 1);
    bounds.verify_n = bounds.max_depth + 2 * len + 2;
  }
  bounds.check(s.patterns);
  auto gapOracle = [&](const Perm &p) {
    return find_gap_basis(p, s.patterns, bounds);
  };
  auto inheritor = [](const Perm &p, const Scheme &base) {
    return inherit_rd(p, base);
  };
  return deepen(s, extraClearance, gapOracle, inheritor, bounds.verify_n);
}

/**
 * Returns a scheme for s's pattern set whose clearance covers the given
 * margin: s itself when already sufficient, otherwise a fresh discovery
 * with the clearance request (usually leaner), otherwise the verbatim
 * deepening construction, which always succeeds on a valid scheme.
 */
inline Scheme ensure_clearance(const Scheme &s, int requiredMargin,
                               std::optional<SearchBounds> boundsIn =
                                   std::nullopt) {
  const Clearance have = clearance(s);
  if (have.covers(requiredMargin)) {
    return s;
  }
  DiscoveryOutcome fresh =
      discover(s.patterns, requiredMargin,
               boundsIn ? boundsIn
                        : std::optional<SearchBounds>(SearchBounds::defaults(
                              s.patterns, requiredMargin)));
  if (fresh.scheme) {
    fresh.scheme->symmetry = s.symmetry;
    return *std::move(fresh.scheme);
  }
  return deepen(s, requiredMargin - have.value(), boundsIn);
}

} // namespace eschemes

#endif // ESCHEMES_DISCOVER_HPP
