#ifndef ESCHEMES_EVALUATE_HPP
#define ESCHEMES_EVALUATE_HPP

/**
 * Reading enumeration schemes: counts and statistic distributions.
 *
 * The reading recursion works over keys (p, g) — a tracked prefix pattern
 * and a spacing vector — which together name the set of avoiders of
 * length n = |p| + sum(g) whose first |p| letters realize p with spacing
 * g.  Rules, in order:
 *
 *  1. if g dominates a gap vector of p's triple, the set is empty;
 *  2. if sum(g) = 0 the prefix is the whole permutation: one member,
 *     contributing the monomial of its statistic values;
 *  3. if the triple deletes (R nonempty), recurse on the deleted key and
 *     shift exponents by the statistic increments Delta_R(w, n);
 *  4. otherwise sum over the ways to append one letter: each spacing
 *     slot splits into the part below and above the new letter.
 *
 * Values are memoized per key; counts are the all-ones specialization of
 * distributions (a count is a distribution over zero statistics).
 */

#include <gmpxx.h>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eschemes/discover.hpp"
#include "eschemes/pattern.hpp"
#include "eschemes/perm.hpp"
#include "eschemes/polynomial.hpp"
#include "eschemes/scheme.hpp"
#include "eschemes/statistic.hpp"

namespace eschemes {

struct EvalOptions {
  bool memoize = true; // the property suite turns this off to cross-check
  bool certify = true; // reject statistics whose increments fail brute force
  int certify_n = 6;   // exhaustive certification bound
};

class SchemeEvaluator {
public:
  using Options = EvalOptions;

  /**
   * Binds a scheme to a (possibly empty) list of statistics.  Throws:
   * std::invalid_argument for an invalid scheme or a statistic that only
   * works through the reversal workflow; clearance_error when a
   * statistic's margin exceeds the scheme's clearance; std::domain_error
   * when certification finds the statistic's increment untrustworthy.
   */
  explicit SchemeEvaluator(Scheme scheme, MultiStat stats = {},
                           EvalOptions options = {})
      : scheme_(std::move(scheme)), stats_(std::move(stats)),
        options_(options) {
    if (const auto bad = validate(scheme_)) {
      throw std::invalid_argument("evaluate: scheme is invalid at \"" +
                                  to_string(bad->prefix) +
                                  "\": " + bad->message);
    }
    const Clearance c = clearance(scheme_);
    for (const auto &s : stats_) {
      if (s.requires_reversal()) {
        throw std::invalid_argument(
            "evaluate: statistic '" + s.name() +
            "' has no prefix increment; use the reversal workflow.");
      }
      if (!c.covers(s.margin())) {
        throw clearance_error(
            "evaluate: statistic '" + s.name() + "' needs clearance >= " +
            std::to_string(s.margin()) + " but the scheme provides " +
            c.str() + "; deepen the scheme first.");
      }
      if (options_.certify) {
        if (const auto violation =
                certify_prefix_delta(s, options_.certify_n)) {
          throw std::domain_error(
              "evaluate: increment certification failed — " +
              violation->describe(s.name()));
        }
      }
    }
  }

  const Scheme &scheme() const { return scheme_; }
  const MultiStat &stats() const { return stats_; }

  /** Joint distribution of the bound statistics over Av_n(patterns). */
  Polynomial distribution(int n) {
    if (n < 0) {
      throw std::invalid_argument("evaluate: negative n.");
    }
    const Polynomial result = value(Perm(), {n});
    if (result.has_negative_exponent()) {
      throw std::logic_error(
          "evaluate: internal invariant violated — the final distribution "
          "for n = " +
          std::to_string(n) +
          " has a negative exponent; the scheme and statistic increments "
          "are inconsistent.");
    }
    return result;
  }

  /** |Av_n(patterns)|: the all-ones specialization of the distribution. */
  mpz_class count(int n) { return distribution(n).at_all_ones(); }

private:
  Polynomial value(const Perm &p, const std::vector<int> &g) {
    const auto key = std::make_pair(p, g);
    if (options_.memoize) {
      if (const auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
      }
    }
    Polynomial result = compute(p, g);
    if (options_.memoize) {
      memo_.emplace(key, result);
    }
    return result;
  }

  Polynomial compute(const Perm &p, const std::vector<int> &g) {
    const auto it = scheme_.triples.find(p);
    if (it == scheme_.triples.end()) {
      throw std::logic_error("evaluate: reached untracked prefix \"" +
                             to_string(p) + "\"; scheme validation should "
                             "have caught this.");
    }
    const SchemeTriple &t = it->second;
    const int arity = static_cast<int>(stats_.size());
    const int k = p.size();
    int slack = 0;
    for (int x : g) {
      slack += x;
    }
    const int n = k + slack;

    // Rule 1: gap criteria force emptiness.
    for (const auto &v : t.gaps) {
      if (dominates(g, v)) {
        return Polynomial(arity);
      }
    }

    // Rule 2: the prefix is the whole permutation.
    if (slack == 0) {
      const Word w = p.letters();
      if (!avoids(w, scheme_.patterns)) {
        return Polynomial(arity);
      }
      Exponents e;
      e.reserve(stats_.size());
      for (const auto &s : stats_) {
        e.push_back(static_cast<int>(s.eval(w)));
      }
      return Polynomial::monomial(e, 1);
    }

    // Rule 3: delete reversibly and shift by the statistic increments.
    if (t.deletes()) {
      const auto [w, wn] = from_spacing(p, g);
      (void)wn;
      Exponents shift;
      shift.reserve(stats_.size());
      for (const auto &s : stats_) {
        shift.push_back(static_cast<int>(s.prefix_delta(t.rd, w, n)));
      }
      const Word deleted = delete_entries(w, t.rd);
      const int n2 = n - static_cast<int>(t.rd.size());
      Polynomial inner = value(reduce(deleted), spacing(n2, deleted));
      inner.scale_by_monomial(shift, 1);
      return inner;
    }

    // Rule 4: append one letter in every spacing slot, every way.
    const std::vector<Perm> kids = children(p);
    Polynomial total(arity);
    for (int slot = 0; slot <= k; ++slot) {
      const int room = g[static_cast<std::size_t>(slot)];
      if (room == 0) {
        continue;
      }
      const Perm &child = kids[static_cast<std::size_t>(slot)];
      std::vector<int> g2(g.size() + 1);
      for (int i = 0; i < slot; ++i) {
        g2[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)];
      }
      for (int i = slot + 1; i <= k; ++i) {
        g2[static_cast<std::size_t>(i + 1)] = g[static_cast<std::size_t>(i)];
      }
      for (int below = 0; below < room; ++below) {
        g2[static_cast<std::size_t>(slot)] = below;
        g2[static_cast<std::size_t>(slot + 1)] = room - 1 - below;
        total += value(child, g2);
      }
    }
    return total;
  }

  Scheme scheme_;
  MultiStat stats_;
  Options options_;
  std::map<std::pair<Perm, std::vector<int>>, Polynomial> memo_;
};

/* ------------------------------------------------------------------ */
/* Convenience entry points.                                          */
/* ------------------------------------------------------------------ */

inline mpz_class scheme_count(const Scheme &s, int n) {
  return SchemeEvaluator(s).count(n);
}

/** Counts for n = 1..nMax (one evaluator, shared memo). */
inline std::vector<mpz_class> counting_sequence(const Scheme &s, int nMax) {
  SchemeEvaluator eval(s);
  std::vector<mpz_class> seq;
  seq.reserve(static_cast<std::size_t>(nMax));
  for (int n = 1; n <= nMax; ++n) {
    seq.push_back(eval.count(n));
  }
  return seq;
}

/** "1, 2, 5, 14, 42" — the conventional comma-separated sequence line. */
inline std::string oeis_format(const std::vector<mpz_class> &seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out += (i ? ", " : "") + seq[i].get_str();
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* The reversal workflow.                                             */
/* ------------------------------------------------------------------ */

/**
 * Computes distributions over Av_n(B) of statistics that only transform
 * through reversal (the major index, classical inversions, ...): since
 * reversing is a bijection Av_n(B) -> Av_n(B^r) and g(pi) = f(pi
 * reversed) has a scheme-compatible form, summing q^g over the reversed
 * class gives f's distribution over the original one.
 */
class ReversalEvaluator {
public:
  ReversalEvaluator(PatternSet B, MultiStat stats, int clearanceRequest = 0,
                    std::optional<SearchBounds> bounds = std::nullopt,
                    EvalOptions options = {})
      : original_(std::move(B)) {
    MultiStat transformed = reversed_counterpart(stats);
    const int needed = std::max(clearanceRequest, margin(transformed));
    const PatternSet reversedSet = apply_symmetry(original_, Symmetry::reverse);
    DiscoveryOutcome found = discover(reversedSet, needed, bounds);
    if (!found.scheme) {
      std::string frontier;
      for (std::size_t i = 0; i < found.frontier.size(); ++i) {
        frontier += (i ? ", " : "") + to_string(found.frontier[i]);
      }
      throw std::runtime_error(
          "reversal workflow: no scheme for the reversed set {" +
          to_string(reversedSet) + "} within " + found.bounds.str() +
          "; open frontier: " + frontier);
    }
    found.scheme->symmetry = Symmetry::reverse;
    evaluator_.emplace(*std::move(found.scheme), std::move(transformed),
                       options);
  }

  const PatternSet &original_patterns() const { return original_; }
  const Scheme &scheme() const { return evaluator_->scheme(); }

  /** Distribution of the original statistics over Av_n(B). */
  Polynomial distribution(int n) { return evaluator_->distribution(n); }

  mpz_class count(int n) { return evaluator_->count(n); }

private:
  PatternSet original_;
  std::optional<SchemeEvaluator> evaluator_;
};

} // namespace eschemes

#endif // ESCHEMES_EVALUATE_HPP
