#ifndef ESCHEMES_PATTERN_HPP
#define ESCHEMES_PATTERN_HPP

/**
 * Vincular (dashed) permutation patterns and containment testing.
 *
 * A vincular pattern is a pair (sigma, X) with sigma a permutation of
 * length k and X a subset of {1..k-1}.  A word w contains the pattern if
 * some subsequence w_{i_1} ... w_{i_k} reduces to sigma with i_{x+1} =
 * i_x + 1 for every x in X; otherwise w avoids it.  X = {} recovers
 * classical containment, X = {1..k-1} consecutive containment.
 *
 * Dash syntax: letters in one block are required adjacent, blocks are
 * separated by dashes.  "1-2-3" is (123, {}), "12-3" is (123, {1}),
 * "123" is (123, {1,2}).  Letters above 9 use brackets: "[10]".
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eschemes/perm.hpp"

namespace eschemes {

class VincularPattern {
public:
  VincularPattern() = default;

  /** Requires every adjacency index to lie in {1..k-1}. */
  VincularPattern(Perm sigma, std::vector<int> adjacencies)
      : sigma_(std::move(sigma)), adjacencies_(std::move(adjacencies)) {
    if (sigma_.empty()) {
      throw std::invalid_argument("VincularPattern: empty pattern.");
    }
    std::sort(adjacencies_.begin(), adjacencies_.end());
    adjacencies_.erase(
        std::unique(adjacencies_.begin(), adjacencies_.end()),
        adjacencies_.end());
    for (int x : adjacencies_) {
      if (x < 1 || x >= sigma_.size()) {
        throw std::invalid_argument(
            "VincularPattern: adjacency index " + std::to_string(x) +
            " out of range for pattern of length " +
            std::to_string(sigma_.size()) + ".");
      }
    }
    glued_.assign(static_cast<std::size_t>(sigma_.size()), false);
    for (int x : adjacencies_) {
      glued_[static_cast<std::size_t>(x)] = true; // slot x+1 follows slot x
    }
  }

  /** (sigma, {}): adjacency-free containment. */
  static VincularPattern classical(Perm sigma) {
    return VincularPattern(std::move(sigma), {});
  }

  /** (sigma, {1..k-1}): copies occupy consecutive positions. */
  static VincularPattern consecutive(Perm sigma) {
    std::vector<int> all;
    for (int x = 1; x < sigma.size(); ++x) {
      all.push_back(x);
    }
    return VincularPattern(std::move(sigma), std::move(all));
  }

  const Perm &sigma() const { return sigma_; }
  const std::vector<int> &adjacencies() const { return adjacencies_; }
  int size() const { return sigma_.size(); }

  /** True when slot s (1-based, s >= 2) must sit right after slot s-1. */
  bool glued_after(int s) const {
    return s >= 2 && glued_[static_cast<std::size_t>(s - 1)];
  }

  /** Dash syntax, e.g. "12-3". */
  std::string str() const {
    std::string out;
    for (int s = 1; s <= sigma_.size(); ++s) {
      if (s > 1 && !glued_after(s)) {
        out += '-';
      }
      const int c = sigma_[static_cast<std::size_t>(s - 1)];
      if (c > 9) {
        out += '[' + std::to_string(c) + ']';
      } else {
        out += static_cast<char>('0' + c);
      }
    }
    return out;
  }

  bool operator==(const VincularPattern &o) const {
    return sigma_ == o.sigma_ && adjacencies_ == o.adjacencies_;
  }
  bool operator!=(const VincularPattern &o) const { return !(*this == o); }
  bool operator<(const VincularPattern &o) const {
    if (!(sigma_ == o.sigma_)) {
      return sigma_ < o.sigma_;
    }
    return adjacencies_ < o.adjacencies_;
  }

private:
  Perm sigma_;
  std::vector<int> adjacencies_;
  std::vector<bool> glued_;
};

inline std::string to_string(const VincularPattern &p) { return p.str(); }

/** Parses dash syntax; inverse of VincularPattern::str(). */
inline VincularPattern parse_pattern(const std::string &s) {
  if (s.empty()) {
    throw std::invalid_argument("parse_pattern: empty pattern string.");
  }
  Word letters;
  std::vector<int> adjacencies;
  std::size_t i = 0;
  bool blockOpen = false; // previous token was a letter in the current block
  while (i < s.size()) {
    const char ch = s[i];
    if (ch == '-') {
      if (!blockOpen) {
        throw std::invalid_argument("parse_pattern: stray '-' in \"" + s +
                                    "\".");
      }
      blockOpen = false;
      ++i;
      continue;
    }
    int letter = 0;
    if (ch >= '1' && ch <= '9') {
      letter = ch - '0';
      ++i;
    } else if (ch == '[') {
      const std::size_t close = s.find(']', i);
      if (close == std::string::npos || close == i + 1) {
        throw std::invalid_argument("parse_pattern: unmatched '[' in \"" + s +
                                    "\".");
      }
      const std::string digits = s.substr(i + 1, close - i - 1);
      if (digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("parse_pattern: bad letter \"[" + digits +
                                    "]\" in \"" + s + "\".");
      }
      letter = std::stoi(digits);
      i = close + 1;
    } else {
      throw std::invalid_argument("parse_pattern: unexpected character '" +
                                  std::string(1, ch) + "' in \"" + s + "\".");
    }
    if (blockOpen) {
      adjacencies.push_back(static_cast<int>(letters.size()));
    }
    letters.push_back(letter);
    blockOpen = true;
  }
  if (!blockOpen) {
    throw std::invalid_argument("parse_pattern: trailing '-' in \"" + s +
                                "\".");
  }
  return VincularPattern(Perm(std::move(letters)), std::move(adjacencies));
}

namespace detail {

/**
 * Backtracking copy scan.  Chooses 0-based indices for pattern slots in
 * increasing order, keeping the chosen letters order-isomorphic to sigma
 * and respecting adjacency constraints.  fixedLast0 >= 0 pins the last
 * slot's index (used for incremental avoidance checks); stopAtFirst makes
 * the scan an existence test.  Returns the number of copies found (at most
 * 1 when stopAtFirst).
 */
inline long long scan_copies(const Word &w, const VincularPattern &pat,
                             int fixedLast0, bool stopAtFirst) {
  const int n = static_cast<int>(w.size());
  const int k = pat.size();
  if (k > n || (fixedLast0 >= 0 && fixedLast0 >= n)) {
    return 0;
  }
  std::vector<int> chosen(static_cast<std::size_t>(k), -1);
  long long found = 0;

  auto extend = [&](auto &&self, int slot) -> bool {
    if (slot == k) {
      ++found;
      return stopAtFirst;
    }
    int lo = 0;
    int hi = n - 1 - (k - 1 - slot); // leave room for the remaining slots
    if (slot > 0) {
      lo = chosen[static_cast<std::size_t>(slot - 1)] + 1;
    }
    if (pat.glued_after(slot + 1)) {
      hi = lo; // must sit right after the previous slot
    }
    if (fixedLast0 >= 0) {
      if (slot == k - 1) {
        lo = std::max(lo, fixedLast0);
        hi = std::min(hi, fixedLast0);
      } else {
        hi = std::min(hi, fixedLast0 - (k - 1 - slot));
      }
    }
    const int sigmaS = pat.sigma()[static_cast<std::size_t>(slot)];
    for (int i = lo; i <= hi; ++i) {
      bool ok = true;
      for (int j = 0; j < slot && ok; ++j) {
        const bool valueLess = w[static_cast<std::size_t>(
                                   chosen[static_cast<std::size_t>(j)])] <
                               w[static_cast<std::size_t>(i)];
        const bool patternLess =
            pat.sigma()[static_cast<std::size_t>(j)] < sigmaS;
        ok = (valueLess == patternLess);
      }
      if (!ok) {
        continue;
      }
      chosen[static_cast<std::size_t>(slot)] = i;
      if (self(self, slot + 1)) {
        return true;
      }
    }
    return false;
  };
  extend(extend, 0);
  return found;
}

} // namespace detail

/** Does w contain a copy of the pattern? */
inline bool contains(const Word &w, const VincularPattern &pat) {
  return detail::scan_copies(w, pat, -1, true) > 0;
}

inline bool contains(const Perm &p, const VincularPattern &pat) {
  return contains(p.letters(), pat);
}

/** Number of copies of the pattern in w. */
inline long long count_copies(const Word &w, const VincularPattern &pat) {
  return detail::scan_copies(w, pat, -1, false);
}

inline long long count_copies(const Perm &p, const VincularPattern &pat) {
  return count_copies(p.letters(), pat);
}

/**
 * Does w contain a copy whose last letter sits at 1-based position
 * lastPos?  Scanning only these copies as a word grows one letter at a
 * time detects containment incrementally.
 */
inline bool contains_copy_ending_at(const Word &w, const VincularPattern &pat,
                                    int lastPos) {
  return detail::scan_copies(w, pat, lastPos - 1, true) > 0;
}

/** A set of forbidden patterns (order is display order only). */
using PatternSet = std::vector<VincularPattern>;

inline std::string to_string(const PatternSet &B) {
  std::string out;
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += B[i].str();
  }
  return out;
}

/** Parses a comma-separated pattern list, e.g. "2-1-3,1-2-3-4". */
inline PatternSet parse_pattern_set(const std::string &s) {
  PatternSet out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      comma = s.size();
    }
    const std::string item = s.substr(start, comma - start);
    if (!item.empty()) {
      out.push_back(parse_pattern(item));
    }
    start = comma + 1;
  }
  return out;
}

inline bool avoids(const Word &w, const PatternSet &B) {
  for (const auto &pat : B) {
    if (contains(w, pat)) {
      return false;
    }
  }
  return true;
}

inline bool avoids(const Perm &p, const PatternSet &B) {
  return avoids(p.letters(), B);
}

/** (sigma, X) reversed: (sigma^r, {k - x : x in X}). */
inline VincularPattern reverse(const VincularPattern &pat) {
  const int k = pat.size();
  std::vector<int> adj;
  for (int x : pat.adjacencies()) {
    adj.push_back(k - x);
  }
  return VincularPattern(reverse(pat.sigma()), std::move(adj));
}

/** (sigma, X) complemented: (sigma^c, X). */
inline VincularPattern complement(const VincularPattern &pat) {
  return VincularPattern(complement(pat.sigma()), pat.adjacencies());
}

/**
 * The symmetries of the square that act on pattern sets.  Complementing a
 * pattern set preserves finite schemes (same depth); reversing does not,
 * but extends the method's reach when the reversed set happens to admit
 * one.
 */
enum class Symmetry { identity, reverse, complement, reverse_complement };

inline const char *tag(Symmetry s) {
  switch (s) {
  case Symmetry::identity:
    return "identity";
  case Symmetry::reverse:
    return "r";
  case Symmetry::complement:
    return "c";
  case Symmetry::reverse_complement:
    return "rc";
  }
  return "?";
}

inline std::optional<Symmetry> parse_symmetry(const std::string &s) {
  if (s == "identity") {
    return Symmetry::identity;
  }
  if (s == "r") {
    return Symmetry::reverse;
  }
  if (s == "c") {
    return Symmetry::complement;
  }
  if (s == "rc") {
    return Symmetry::reverse_complement;
  }
  return std::nullopt;
}

inline PatternSet apply_symmetry(const PatternSet &B, Symmetry s) {
  PatternSet out;
  out.reserve(B.size());
  for (const auto &pat : B) {
    switch (s) {
    case Symmetry::identity:
      out.push_back(pat);
      break;
    case Symmetry::reverse:
      out.push_back(reverse(pat));
      break;
    case Symmetry::complement:
      out.push_back(complement(pat));
      break;
    case Symmetry::reverse_complement:
      out.push_back(reverse(complement(pat)));
      break;
    }
  }
  return out;
}

/** Applies the same symmetry to a single permutation. */
inline Perm apply_symmetry(const Perm &p, Symmetry s) {
  switch (s) {
  case Symmetry::reverse:
    return reverse(p);
  case Symmetry::complement:
    return complement(p);
  case Symmetry::reverse_complement:
    return reverse(complement(p));
  case Symmetry::identity:
    break;
  }
  return p;
}

} // namespace eschemes

#endif // ESCHEMES_PATTERN_HPP
