#ifndef ESCHEMES_STATISTIC_HPP
#define ESCHEMES_STATISTIC_HPP

/**
 * Permutation statistics that refine scheme-based enumeration.
 *
 * A statistic f is usable inside a scheme when deleting the letters at
 * positions R changes f by an amount that depends only on the first
 * max(R) + m letters of the permutation (m is the statistic's margin).
 * That increment, Delta^f_R(w, n), is what prefix_delta computes; the
 * evaluator multiplies distributions by q^Delta when it applies a deletion
 * rule, so a scheme needs clearance >= m to carry f.
 *
 * Atomic statistics:
 *
 *  - consecutive copies of a permutation sigma (margin |sigma| - 1);
 *  - tail-adjacent copies of sigma: the first |sigma| - 1 letters of the
 *    copy sit in adjacent positions, the last is free (margin |sigma| - 2);
 *  - right-to-left maxima / minima (margin 0);
 *  - right-to-left maximal consecutive copies of sigma (margin |sigma| - 1
 *    as prescribed, but see certify_prefix_delta: for |sigma| >= 2 no
 *    finite margin actually works, and the certification pass exists to
 *    reject such statistics before a scheme silently miscounts).
 *
 * Composites are integer combinations of atoms: descents = consecutive 21,
 * peaks = consecutive 132 + consecutive 231, the reverse major index
 * rmaj = tail 123 + tail 132 + tail 231 + consecutive 12, and so on.  The
 * major index itself has no usable increment, but maj(pi) = rmaj(pi^r),
 * so it is carried through the reversal workflow.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eschemes/oracle.hpp"
#include "eschemes/pattern.hpp"
#include "eschemes/perm.hpp"
#include "eschemes/polynomial.hpp"

namespace eschemes {

/** Raised when a deletion set reaches past a scheme's clearance. */
class clearance_error : public std::runtime_error {
public:
  explicit clearance_error(const std::string &what)
      : std::runtime_error(what) {}
};

/* ------------------------------------------------------------------ */
/* Tail-statistic building blocks (exposed for direct inspection).    */
/* ------------------------------------------------------------------ */

/**
 * h_i(w, n) for the tail statistic of sigma (t = |sigma|): the number of
 * values in {1..n} outside w's window w_i .. w_{i+t-2} that would extend
 * the window to a copy of sigma.  Zero unless the window reduces to
 * sigma_1 .. sigma_{t-1}; otherwise the count is an interval length:
 * everything below the window's minimum (sigma_t = 1), everything above
 * its maximum (sigma_t = t), or the gap between the two window letters
 * whose roles flank sigma_t.
 */
inline int tail_h(const Perm &sigma, const Word &w, int n, int i) {
  const int t = sigma.size();
  const int k = static_cast<int>(w.size());
  if (t < 2) {
    throw std::invalid_argument("tail_h: pattern must have length >= 2.");
  }
  if (i < 1 || i + t - 2 > k) {
    throw std::invalid_argument("tail_h: window " + std::to_string(i) +
                                " does not fit in a word of length " +
                                std::to_string(k) + ".");
  }
  const Word window(w.begin() + (i - 1), w.begin() + (i - 1) + (t - 1));
  const Word prefix(sigma.letters().begin(), sigma.letters().end() - 1);
  if (!(reduce(window) == reduce(prefix))) {
    return 0;
  }
  Word sorted = window;
  std::sort(sorted.begin(), sorted.end());
  const int last = sigma[static_cast<std::size_t>(t - 1)];
  if (last == 1) {
    return sorted.front() - 1;
  }
  if (last == t) {
    return n - sorted.back();
  }
  // Letters of rank last-1 and last in the window flank the missing value.
  return sorted[static_cast<std::size_t>(last - 1)] -
         sorted[static_cast<std::size_t>(last - 2)] - 1;
}

/**
 * h'_i(w): how many letters strictly before the window already occupy the
 * role of sigma's final letter, i.e. the number of j < i with
 * w_i .. w_{i+t-2} w_j order-isomorphic to sigma.  These are counted by
 * h_i yet are not lost when letters after the prefix are deleted, so the
 * increment subtracts them.
 */
inline int tail_h_prime(const Perm &sigma, const Word &w, int i) {
  const int t = sigma.size();
  const int k = static_cast<int>(w.size());
  if (t < 2) {
    throw std::invalid_argument("tail_h_prime: pattern must have length >= 2.");
  }
  if (i < 1 || i + t - 2 > k) {
    throw std::invalid_argument("tail_h_prime: window " + std::to_string(i) +
                                " does not fit in a word of length " +
                                std::to_string(k) + ".");
  }
  Word extended(w.begin() + (i - 1), w.begin() + (i - 1) + (t - 1));
  extended.push_back(0); // placeholder for w_j
  int count = 0;
  for (int j = 1; j < i; ++j) {
    extended.back() = w[static_cast<std::size_t>(j - 1)];
    if (reduce(extended) == sigma) {
      ++count;
    }
  }
  return count;
}

/* ------------------------------------------------------------------ */
/* Prefix-measured right-to-left counts.                              */
/* ------------------------------------------------------------------ */

/**
 * Letters of the prefix w already guaranteed to be right-to-left maxima
 * of every completion to a permutation of {1..n}: all larger values are
 * used earlier in w.
 */
inline int rtl_max_star(const Word &w, int n) {
  const int k = static_cast<int>(w.size());
  int count = 0;
  for (int i = 0; i < k; ++i) {
    int larger = 0;
    for (int j = 0; j < i; ++j) {
      if (w[static_cast<std::size_t>(j)] > w[static_cast<std::size_t>(i)]) {
        ++larger;
      }
    }
    if (larger == n - w[static_cast<std::size_t>(i)]) {
      ++count;
    }
  }
  return count;
}

/** Mirror image of rtl_max_star: guaranteed right-to-left minima. */
inline int rtl_min_star(const Word &w, [[maybe_unused]] int n) {
  const int k = static_cast<int>(w.size());
  int count = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = 0; j < i; ++j) {
      if (w[static_cast<std::size_t>(j)] < w[static_cast<std::size_t>(i)]) {
        ++smaller;
      }
    }
    if (smaller == w[static_cast<std::size_t>(i)] - 1) {
      ++count;
    }
  }
  return count;
}

/* ------------------------------------------------------------------ */
/* Atomic statistics.                                                 */
/* ------------------------------------------------------------------ */

enum class StatKind {
  consecutive_count,
  tail_count,
  rtl_max,
  rtl_min,
  rtl_max_copies,
};

class Statistic {
public:
  Statistic(StatKind kind, Perm sigma = Perm())
      : kind_(kind), sigma_(std::move(sigma)) {
    switch (kind_) {
    case StatKind::consecutive_count:
    case StatKind::rtl_max_copies:
      if (sigma_.empty()) {
        throw std::invalid_argument("Statistic: pattern required.");
      }
      break;
    case StatKind::tail_count:
      if (sigma_.size() < 2) {
        throw std::invalid_argument(
            "Statistic: tail statistics need a pattern of length >= 2.");
      }
      break;
    case StatKind::rtl_max:
    case StatKind::rtl_min:
      if (!sigma_.empty()) {
        throw std::invalid_argument(
            "Statistic: right-to-left extrema take no pattern.");
      }
      break;
    }
  }

  StatKind kind() const { return kind_; }
  const Perm &sigma() const { return sigma_; }

  /**
   * How many letters beyond max(R) the increment needs to see: the
   * increment Delta_R depends only on the first max(R) + margin letters.
   */
  int margin() const {
    switch (kind_) {
    case StatKind::consecutive_count:
    case StatKind::rtl_max_copies:
      return sigma_.size() - 1;
    case StatKind::tail_count:
      return sigma_.size() - 2;
    case StatKind::rtl_max:
    case StatKind::rtl_min:
      return 0;
    }
    return 0;
  }

  /** The statistic's value on a word of distinct letters. */
  long long eval(const Word &w) const {
    const int k = static_cast<int>(w.size());
    switch (kind_) {
    case StatKind::consecutive_count:
      return count_copies(w, VincularPattern::consecutive(sigma_));
    case StatKind::tail_count: {
      std::vector<int> adj;
      for (int x = 1; x <= sigma_.size() - 2; ++x) {
        adj.push_back(x);
      }
      return count_copies(w, VincularPattern(sigma_, adj));
    }
    case StatKind::rtl_max: {
      long long count = 0;
      for (int i = 0; i < k; ++i) {
        bool maximal = true;
        for (int j = i + 1; j < k && maximal; ++j) {
          maximal = w[static_cast<std::size_t>(j)] <
                    w[static_cast<std::size_t>(i)];
        }
        count += maximal ? 1 : 0;
      }
      return count;
    }
    case StatKind::rtl_min: {
      long long count = 0;
      for (int i = 0; i < k; ++i) {
        bool minimal = true;
        for (int j = i + 1; j < k && minimal; ++j) {
          minimal = w[static_cast<std::size_t>(j)] >
                    w[static_cast<std::size_t>(i)];
        }
        count += minimal ? 1 : 0;
      }
      return count;
    }
    case StatKind::rtl_max_copies:
      return eval_rtl_max_copies(w);
    }
    return 0;
  }

  /**
   * Delta_R(w, n): the change f(pi) - f(d_R(pi)) common to every
   * permutation pi of {1..n} whose first |w| letters are w.  Requires
   * max(R) + margin() <= |w| (otherwise the prefix cannot determine the
   * change and a clearance_error is raised).
   */
  long long prefix_delta(const std::vector<int> &R, const Word &w,
                         int n) const {
    const int k = static_cast<int>(w.size());
    if (R.empty()) {
      return 0;
    }
    int maxR = 0;
    for (int r : R) {
      if (r < 1 || r > k) {
        throw std::invalid_argument("prefix_delta: position " +
                                    std::to_string(r) +
                                    " outside the prefix.");
      }
      maxR = std::max(maxR, r);
    }
    if (maxR + margin() > k) {
      throw clearance_error(
          "prefix_delta: deleting position " + std::to_string(maxR) +
          " with margin " + std::to_string(margin()) +
          " needs a prefix of length >= " + std::to_string(maxR + margin()) +
          ", got " + std::to_string(k) + ".");
    }
    const Word deleted = delete_entries(w, R);
    const int nAfter = n - static_cast<int>(R.size());
    switch (kind_) {
    case StatKind::consecutive_count:
      return eval(w) - eval(deleted);
    case StatKind::tail_count: {
      const int t = sigma_.size();
      long long before = 0;
      for (int i = 1; i + t - 2 <= k; ++i) {
        before += tail_h(sigma_, w, n, i) - tail_h_prime(sigma_, w, i);
      }
      long long after = 0;
      const int k2 = static_cast<int>(deleted.size());
      for (int i = 1; i + t - 2 <= k2; ++i) {
        after += tail_h(sigma_, deleted, nAfter, i) -
                 tail_h_prime(sigma_, deleted, i);
      }
      return before - after;
    }
    case StatKind::rtl_max:
      return rtl_max_star(w, n) - rtl_max_star(deleted, nAfter);
    case StatKind::rtl_min:
      return rtl_min_star(w, n) - rtl_min_star(deleted, nAfter);
    case StatKind::rtl_max_copies:
      return rtl_max_copies_star(w, n) - rtl_max_copies_star(deleted, nAfter);
    }
    return 0;
  }

  /** Stable signature used as a cache key and in diagnostics. */
  std::string signature() const {
    switch (kind_) {
    case StatKind::consecutive_count:
      return "cons(" + word_to_string(sigma_.letters()) + ")";
    case StatKind::tail_count:
      return "tail(" + word_to_string(sigma_.letters()) + ")";
    case StatKind::rtl_max:
      return "rtlmax";
    case StatKind::rtl_min:
      return "rtlmin";
    case StatKind::rtl_max_copies:
      return "rtlcopies(" + word_to_string(sigma_.letters()) + ")";
    }
    return "?";
  }

private:
  /**
   * Copies of consecutive sigma that are right-to-left maximal: every
   * later consecutive copy carries a smaller letter in the role of
   * sigma's minimum.
   */
  long long eval_rtl_max_copies(const Word &w) const {
    const int t = sigma_.size();
    const int k = static_cast<int>(w.size());
    int minPos = 0;
    for (int j = 0; j < t; ++j) {
      if (sigma_[static_cast<std::size_t>(j)] == 1) {
        minPos = j;
      }
    }
    std::vector<int> starts; // 0-based window starts of copies
    for (int i = 0; i + t <= k; ++i) {
      const Word window(w.begin() + i, w.begin() + i + t);
      if (reduce(window) == sigma_) {
        starts.push_back(i);
      }
    }
    long long count = 0;
    for (std::size_t a = 0; a < starts.size(); ++a) {
      const int mine =
          w[static_cast<std::size_t>(starts[a] + minPos)];
      bool maximal = true;
      for (std::size_t b = a + 1; b < starts.size() && maximal; ++b) {
        maximal = w[static_cast<std::size_t>(starts[b] + minPos)] < mine;
      }
      count += maximal ? 1 : 0;
    }
    return count;
  }

  /**
   * Copies of consecutive sigma inside the prefix w that are certain to
   * stay right-to-left maximal in every completion: every value above the
   * copy's minimum letter is already placed by the copy's last position.
   * This is the natural prefix-measured analogue of rtl_max_star; the test
   * is sufficient but not necessary, which is exactly why statistics of
   * this kind must pass certify_prefix_delta before schemes may use them.
   */
  long long rtl_max_copies_star(const Word &w, int n) const {
    const int t = sigma_.size();
    const int k = static_cast<int>(w.size());
    int minPos = 0;
    for (int j = 0; j < t; ++j) {
      if (sigma_[static_cast<std::size_t>(j)] == 1) {
        minPos = j;
      }
    }
    long long count = 0;
    for (int i = 0; i + t <= k; ++i) {
      const Word window(w.begin() + i, w.begin() + i + t);
      if (!(reduce(window) == sigma_)) {
        continue;
      }
      const int mine = w[static_cast<std::size_t>(i + minPos)];
      int placedLarger = 0;
      for (int j = 0; j < i + t; ++j) {
        if (w[static_cast<std::size_t>(j)] > mine) {
          ++placedLarger;
        }
      }
      if (placedLarger == n - mine) {
        ++count;
      }
    }
    return count;
  }

  StatKind kind_;
  Perm sigma_;
};

/* ------------------------------------------------------------------ */
/* Composite statistics.                                              */
/* ------------------------------------------------------------------ */

struct WeightedStat {
  long long coefficient = 1;
  Statistic stat;
};

/**
 * An integer combination of atomic statistics under one display name.
 * requires_reversal marks statistics (the major index) whose value on pi
 * is defined as the combination evaluated on pi reversed; such statistics
 * have no prefix increment of their own and may only be carried through
 * the reversal workflow.
 */
class CompositeStatistic {
public:
  CompositeStatistic(std::string name, std::vector<WeightedStat> terms,
                     bool requiresReversal = false)
      : name_(std::move(name)), terms_(std::move(terms)),
        requires_reversal_(requiresReversal) {}

  const std::string &name() const { return name_; }
  const std::vector<WeightedStat> &terms() const { return terms_; }
  bool requires_reversal() const { return requires_reversal_; }

  int margin() const {
    int m = 0;
    for (const auto &t : terms_) {
      m = std::max(m, t.stat.margin());
    }
    return m;
  }

  long long eval(const Word &w) const {
    Word input = w;
    if (requires_reversal_) {
      std::reverse(input.begin(), input.end());
    }
    long long total = 0;
    for (const auto &t : terms_) {
      total += t.coefficient * t.stat.eval(input);
    }
    return total;
  }

  long long prefix_delta(const std::vector<int> &R, const Word &w,
                         int n) const {
    if (requires_reversal_) {
      throw std::invalid_argument(
          "statistic '" + name_ +
          "' has no prefix increment; evaluate it through the reversal "
          "workflow.");
    }
    long long total = 0;
    for (const auto &t : terms_) {
      total += t.coefficient * t.stat.prefix_delta(R, w, n);
    }
    return total;
  }

  std::string signature() const {
    std::string out = requires_reversal_ ? "rev:" : "";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i > 0) {
        out += "+";
      }
      out += std::to_string(terms_[i].coefficient) + "*" +
             terms_[i].stat.signature();
    }
    return out;
  }

private:
  std::string name_;
  std::vector<WeightedStat> terms_;
  bool requires_reversal_ = false;
};

/** The statistics tracked jointly by one distribution computation. */
using MultiStat = std::vector<CompositeStatistic>;

inline int margin(const MultiStat &stats) {
  int m = 0;
  for (const auto &s : stats) {
    m = std::max(m, s.margin());
  }
  return m;
}

inline std::vector<std::string> names(const MultiStat &stats) {
  std::vector<std::string> out;
  out.reserve(stats.size());
  for (const auto &s : stats) {
    out.push_back(s.name());
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Built-in statistics and parsing.                                   */
/* ------------------------------------------------------------------ */

namespace builtin {

inline CompositeStatistic inv() {
  return CompositeStatistic(
      "inv", {{1, Statistic(StatKind::tail_count, parse_perm("21"))}});
}

inline CompositeStatistic des() {
  return CompositeStatistic(
      "des", {{1, Statistic(StatKind::consecutive_count, parse_perm("21"))}});
}

inline CompositeStatistic peak() {
  return CompositeStatistic(
      "peak",
      {{1, Statistic(StatKind::consecutive_count, parse_perm("132"))},
       {1, Statistic(StatKind::consecutive_count, parse_perm("231"))}});
}

inline CompositeStatistic vall() {
  return CompositeStatistic(
      "vall",
      {{1, Statistic(StatKind::consecutive_count, parse_perm("213"))},
       {1, Statistic(StatKind::consecutive_count, parse_perm("312"))}});
}

inline CompositeStatistic rtlmax() {
  return CompositeStatistic("rtlmax", {{1, Statistic(StatKind::rtl_max)}});
}

inline CompositeStatistic rtlmin() {
  return CompositeStatistic("rtlmin", {{1, Statistic(StatKind::rtl_min)}});
}

/** rmaj(pi) = sum of n - i over descents i of pi. */
inline std::vector<WeightedStat> rmaj_terms() {
  return {{1, Statistic(StatKind::tail_count, parse_perm("123"))},
          {1, Statistic(StatKind::tail_count, parse_perm("132"))},
          {1, Statistic(StatKind::tail_count, parse_perm("231"))},
          {1, Statistic(StatKind::consecutive_count, parse_perm("12"))}};
}

inline CompositeStatistic rmaj() {
  return CompositeStatistic("rmaj", rmaj_terms());
}

/** maj(pi) = rmaj(pi reversed); usable only via the reversal workflow. */
inline CompositeStatistic maj() {
  return CompositeStatistic("maj", rmaj_terms(), true);
}

} // namespace builtin

/** maj from its definition, for cross-checks: sum of descent positions. */
inline long long maj_by_definition(const Word &w) {
  long long total = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] > w[i + 1]) {
      total += static_cast<long long>(i) + 1;
    }
  }
  return total;
}

/**
 * Parses one statistic name: a built-in (inv, des, peak, vall, rtlmax,
 * rtlmin, rmaj, maj) or a parameterized form cons:<perm>, tail:<perm>,
 * rtlcopies:<perm> with the permutation in one-line notation.
 */
inline CompositeStatistic parse_statistic(const std::string &spec) {
  if (spec == "inv") {
    return builtin::inv();
  }
  if (spec == "des") {
    return builtin::des();
  }
  if (spec == "peak") {
    return builtin::peak();
  }
  if (spec == "vall") {
    return builtin::vall();
  }
  if (spec == "rtlmax") {
    return builtin::rtlmax();
  }
  if (spec == "rtlmin") {
    return builtin::rtlmin();
  }
  if (spec == "rmaj") {
    return builtin::rmaj();
  }
  if (spec == "maj") {
    return builtin::maj();
  }
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (head == "cons") {
      return CompositeStatistic(
          spec, {{1, Statistic(StatKind::consecutive_count, parse_perm(arg))}});
    }
    if (head == "tail") {
      return CompositeStatistic(
          spec, {{1, Statistic(StatKind::tail_count, parse_perm(arg))}});
    }
    if (head == "rtlcopies") {
      return CompositeStatistic(
          spec, {{1, Statistic(StatKind::rtl_max_copies, parse_perm(arg))}});
    }
  }
  throw std::invalid_argument(
      "unknown statistic \"" + spec +
      "\" (expected inv, des, peak, vall, rtlmax, rtlmin, rmaj, maj, "
      "cons:<perm>, tail:<perm> or rtlcopies:<perm>).");
}

/** Parses a comma-separated statistic list. */
inline MultiStat parse_statistic_list(const std::string &specs) {
  MultiStat out;
  std::size_t start = 0;
  while (start <= specs.size()) {
    std::size_t comma = specs.find(',', start);
    if (comma == std::string::npos) {
      comma = specs.size();
    }
    const std::string item = specs.substr(start, comma - start);
    if (!item.empty()) {
      out.push_back(parse_statistic(item));
    }
    start = comma + 1;
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Reversal workflow.                                                 */
/* ------------------------------------------------------------------ */

/**
 * The statistic g with g(pi) = f(pi reversed), used to carry f over a
 * class whose reverse admits a scheme: summing q^g over Av(B^r) gives the
 * distribution of f over Av(B).  Statistics whose atoms do not transform
 * back into the supported families (tail patterns longer than 2, the
 * right-to-left families, rmaj) are rejected.
 */
inline CompositeStatistic reversed_counterpart(const CompositeStatistic &f) {
  if (f.requires_reversal()) {
    // f(pi) = h(pi reversed) for the stored combination h; g is h itself.
    return CompositeStatistic(f.name(), f.terms(), false);
  }
  std::vector<WeightedStat> terms;
  for (const auto &t : f.terms()) {
    switch (t.stat.kind()) {
    case StatKind::consecutive_count:
      terms.push_back(
          {t.coefficient, Statistic(StatKind::consecutive_count,
                                    reverse(t.stat.sigma()))});
      break;
    case StatKind::tail_count:
      if (t.stat.sigma().size() == 2) {
        // Length-2 tail statistics are classical containment counts.
        terms.push_back({t.coefficient, Statistic(StatKind::tail_count,
                                                  reverse(t.stat.sigma()))});
        break;
      }
      [[fallthrough]];
    case StatKind::rtl_max:
    case StatKind::rtl_min:
    case StatKind::rtl_max_copies:
      throw std::invalid_argument(
          "statistic '" + f.name() +
          "' does not transform through reversal (atom " +
          t.stat.signature() + " has no reversed counterpart).");
    }
  }
  return CompositeStatistic(f.name(), std::move(terms), false);
}

inline MultiStat reversed_counterpart(const MultiStat &stats) {
  MultiStat out;
  out.reserve(stats.size());
  for (const auto &s : stats) {
    out.push_back(reversed_counterpart(s));
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Certification.                                                     */
/* ------------------------------------------------------------------ */

/** A witness that a claimed prefix increment is wrong. */
struct DeltaViolation {
  int n = 0;
  std::vector<int> R;
  Perm pi;
  long long observed = 0; // f(pi) - f(d_R(pi))
  long long expected = 0; // prefix_delta on the shared prefix
  Word prefix;

  std::string describe(const std::string &statName) const {
    return "statistic '" + statName + "': deleting positions {" +
           [this] {
             std::string s;
             for (std::size_t i = 0; i < R.size(); ++i) {
               s += (i ? "," : "") + std::to_string(R[i]);
             }
             return s;
           }() +
           "} from " + to_string(pi) + " (n = " + std::to_string(n) +
           ") changes the value by " + std::to_string(observed) +
           ", but the prefix \"" + word_to_string(prefix) + "\" predicts " +
           std::to_string(expected) + ".";
  }
};

/**
 * Exhaustively checks, over all permutations of {1..n} for n <= nMax and
 * all small deletion sets, that f(pi) - f(d_R(pi)) equals the prefix
 * increment computed from the first max(R) + margin letters alone.
 * Returns the first violation found, or nullopt when the statistic's
 * increment is trustworthy at this scale.
 *
 * Results are cached per statistic signature: certification is a property
 * of the statistic, independent of any pattern set.
 */
inline std::optional<DeltaViolation>
certify_prefix_delta(const CompositeStatistic &f, int nMax = 6) {
  if (f.requires_reversal()) {
    throw std::invalid_argument("certify_prefix_delta: statistic '" +
                                f.name() + "' has no prefix increment.");
  }
  static std::map<std::string, std::optional<DeltaViolation>> cache;
  const std::string key = f.signature() + "@" + std::to_string(nMax);
  if (const auto it = cache.find(key); it != cache.end()) {
    return it->second;
  }

  const int m = f.margin();
  std::optional<DeltaViolation> failure;
  for (int n = 1; n <= nMax && !failure; ++n) {
    // Deletion sets of size 1 and 2 with max(R) small enough that the
    // prefix fits; scheme evaluation never strays outside this shape at
    // certification scale, and known violations show up here immediately.
    std::vector<std::vector<int>> deletionSets;
    for (int r = 1; r + m <= n; ++r) {
      deletionSets.push_back({r});
      for (int r2 = r + 1; r2 + m <= n; ++r2) {
        deletionSets.push_back({r, r2});
      }
    }
    for (const auto &R : deletionSets) {
      if (failure) {
        break;
      }
      int maxR = 0;
      for (int r : R) {
        maxR = std::max(maxR, r);
      }
      const int prefixLen = maxR + m;
      for_each_avoider(
          n, PatternSet{},
          [&](const Word &pi) {
            if (failure) {
              return;
            }
            const Word prefix(pi.begin(), pi.begin() + prefixLen);
            const long long observed =
                f.eval(pi) - f.eval(delete_entries(pi, R));
            const long long expected = f.prefix_delta(R, prefix, n);
            if (observed != expected) {
              failure = DeltaViolation{n,        R,        Perm(pi),
                                       observed, expected, prefix};
            }
          },
          /*cap=*/nMax);
    }
  }
  cache[key] = failure;
  return failure;
}

/* ------------------------------------------------------------------ */
/* Brute-force distributions (oracle side).                           */
/* ------------------------------------------------------------------ */

/**
 * The joint distribution polynomial of the given statistics over Av_n(B),
 * computed by direct enumeration: one monomial per avoider.
 */
inline Polynomial brute_distribution(int n, const PatternSet &B,
                                     const MultiStat &stats,
                                     int cap = kOracleCap) {
  Polynomial total(static_cast<int>(stats.size()));
  for_each_avoider(
      n, B,
      [&](const Word &pi) {
        Exponents e;
        e.reserve(stats.size());
        for (const auto &s : stats) {
          e.push_back(static_cast<int>(s.eval(pi)));
        }
        total += Polynomial::monomial(e, 1);
      },
      cap);
  return total;
}

} // namespace eschemes

#endif // ESCHEMES_STATISTIC_HPP
