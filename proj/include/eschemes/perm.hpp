#ifndef ESCHEMES_PERM_HPP
#define ESCHEMES_PERM_HPP

/**
 * Permutations and words of distinct letters.
 *
 * Conventions used throughout the library:
 *
 *  - a word is a finite sequence of distinct positive integers
 *    (represented as std::vector<int>);
 *  - a permutation of length k is a word whose letter set is exactly
 *    {1, ..., k};
 *  - positions and letters are 1-based in combinatorial definitions and in
 *    error messages; C++ container indices are converted at the boundary.
 *
 * All types here are immutable value types: cheap to copy at the sizes this
 * library works with, safe to share between threads.
 */

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eschemes {

/** A sequence of distinct positive integers (not necessarily {1..k}). */
using Word = std::vector<int>;

/** Renders a word as digits, using "[c]" for letters above 9 ("" for empty). */
inline std::string word_to_string(const Word &w) {
  std::string out;
  for (int c : w) {
    if (c > 9) {
      out += '[';
      out += std::to_string(c);
      out += ']';
    } else {
      out += static_cast<char>('0' + c);
    }
  }
  return out;
}

/**
 * A permutation of {1, ..., k} in one-line notation.
 *
 * The empty permutation (k = 0) is a valid value and is the root of every
 * enumeration scheme.  Ordering is by length first, then lexicographically,
 * which makes std::map<Perm, ...> iterate schemes in the natural
 * breadth-first display order.
 */
class Perm {
public:
  /** The empty permutation. */
  Perm() = default;

  /** Takes one-line notation; requires the letter set to be {1..k}. */
  explicit Perm(Word oneLine) : letters_(std::move(oneLine)) {
    Word sorted = letters_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != static_cast<int>(i) + 1) {
        throw std::invalid_argument("Perm: \"" + word_to_string(letters_) +
                                    "\" is not a permutation of {1..k}.");
      }
    }
  }

  /** The increasing permutation 1 2 ... k. */
  static Perm identity(int k) {
    Word w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      w[static_cast<std::size_t>(i)] = i + 1;
    }
    return Perm(std::move(w));
  }

  /** The decreasing permutation k ... 2 1. */
  static Perm decreasing(int k) {
    Word w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      w[static_cast<std::size_t>(i)] = k - i;
    }
    return Perm(std::move(w));
  }

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  /** Letter at 0-based index i. */
  int operator[](std::size_t i) const { return letters_[i]; }

  const Word &letters() const { return letters_; }

  bool operator==(const Perm &o) const { return letters_ == o.letters_; }
  bool operator!=(const Perm &o) const { return letters_ != o.letters_; }

  /** Length-then-lexicographic order. */
  bool operator<(const Perm &o) const {
    if (letters_.size() != o.letters_.size()) {
      return letters_.size() < o.letters_.size();
    }
    return letters_ < o.letters_;
  }

private:
  Word letters_;
};

inline std::string to_string(const Perm &p) { return word_to_string(p.letters()); }

/**
 * The reduction (standardization) of a word: the permutation whose letters
 * compare the same way.  reduce(53) = 21, reduce(6348) = 3124.
 *
 * Repeated letters have no reduction here and raise std::invalid_argument;
 * nothing in scheme computation ever reduces a word with repeats.
 */
inline Perm reduce(const Word &w) {
  const std::size_t k = w.size();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    idx[i] = i;
  }
  std::sort(idx.begin(), idx.end(),
            [&w](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  Word out(k);
  for (std::size_t r = 0; r < k; ++r) {
    if (r > 0 && w[idx[r]] == w[idx[r - 1]]) {
      throw std::invalid_argument("reduce: repeated letter " +
                                  std::to_string(w[idx[r]]) + " in word \"" +
                                  word_to_string(w) + "\".");
    }
    out[idx[r]] = static_cast<int>(r) + 1;
  }
  return Perm(std::move(out));
}

/**
 * Deletes the letters at the 1-based positions in R and closes the value
 * gaps, so the result is again a word on a contiguous-free letter set:
 * delete_entries(6348, {3}) = 537, delete_entries(6348, {1,3}) = 36.
 *
 * R may be given in any order; positions must be distinct and within range.
 */
inline Word delete_entries(const Word &w, const std::vector<int> &R) {
  std::vector<int> pos = R;
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
    throw std::invalid_argument("delete_entries: repeated position in R.");
  }
  if (!pos.empty() &&
      (pos.front() < 1 || pos.back() > static_cast<int>(w.size()))) {
    throw std::invalid_argument("delete_entries: position out of range for \"" +
                                word_to_string(w) + "\".");
  }
  std::vector<int> removedValues;
  removedValues.reserve(pos.size());
  for (int r : pos) {
    removedValues.push_back(w[static_cast<std::size_t>(r - 1)]);
  }
  std::sort(removedValues.begin(), removedValues.end());
  Word out;
  out.reserve(w.size() - pos.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (next < pos.size() && static_cast<int>(i) + 1 == pos[next]) {
      ++next;
      continue;
    }
    const int c = w[i];
    const auto below = std::lower_bound(removedValues.begin(),
                                        removedValues.end(), c) -
                       removedValues.begin();
    out.push_back(c - static_cast<int>(below));
  }
  return out;
}

/** delete_entries specialized to permutations (the result is again one). */
inline Perm delete_entries(const Perm &p, const std::vector<int> &R) {
  return Perm(delete_entries(p.letters(), R));
}

/**
 * The spacing vector g(n, w) = <g_1, ..., g_{k+1}> of a k-letter word w
 * drawn from {1..n}: with c_1 < ... < c_k the letters of w in increasing
 * order, c_0 = 0 and c_{k+1} = n + 1, component g_i = c_i - c_{i-1} - 1
 * counts the letters of {1..n} strictly between consecutive used values.
 *
 * spacing(5, 53) = <2, 1, 0>.  The pair (reduce(w), g) determines (w, n).
 */
inline std::vector<int> spacing(int n, const Word &w) {
  Word sorted = w;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("spacing: repeated letter in \"" +
                                word_to_string(w) + "\".");
  }
  if (!sorted.empty() && (sorted.front() < 1 || sorted.back() > n)) {
    throw std::invalid_argument("spacing: word \"" + word_to_string(w) +
                                "\" does not fit in {1.." + std::to_string(n) +
                                "}.");
  }
  std::vector<int> g(sorted.size() + 1);
  int prev = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    g[i] = sorted[i] - prev - 1;
    prev = sorted[i];
  }
  g[sorted.size()] = n - prev;
  return g;
}

/**
 * Inverse of spacing: rebuilds (w, n) from the pattern p = reduce(w) and a
 * spacing vector g of length |p| + 1 with nonnegative components.
 */
inline std::pair<Word, int> from_spacing(const Perm &p,
                                         const std::vector<int> &g) {
  const int k = p.size();
  if (static_cast<int>(g.size()) != k + 1) {
    throw std::invalid_argument("from_spacing: expected " +
                                std::to_string(k + 1) + " components, got " +
                                std::to_string(g.size()) + ".");
  }
  for (int gi : g) {
    if (gi < 0) {
      throw std::invalid_argument("from_spacing: negative spacing component.");
    }
  }
  std::vector<int> c(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 1; i <= k; ++i) {
    c[static_cast<std::size_t>(i)] =
        c[static_cast<std::size_t>(i - 1)] + g[static_cast<std::size_t>(i - 1)] + 1;
  }
  const int n = (k == 0 ? g[0] : c[static_cast<std::size_t>(k)] + g[static_cast<std::size_t>(k)]);
  Word w(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
  }
  return {std::move(w), n};
}

/**
 * The k+1 permutations of length k+1 whose first k letters reduce to p: for
 * each final letter a in {1..k+1}, existing letters >= a shift up by one.
 * children(1) = {12, 21}.
 */
inline std::vector<Perm> children(const Perm &p) {
  const int k = p.size();
  std::vector<Perm> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  for (int a = 1; a <= k + 1; ++a) {
    Word w(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) {
      const int c = p[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>(i)] = c + (c >= a ? 1 : 0);
    }
    w[static_cast<std::size_t>(k)] = a;
    out.emplace_back(std::move(w));
  }
  return out;
}

/** The reverse of p: letters read right to left. */
inline Perm reverse(const Perm &p) {
  Word w(p.letters().rbegin(), p.letters().rend());
  return Perm(std::move(w));
}

/** The complement of p: letter c becomes k + 1 - c. */
inline Perm complement(const Perm &p) {
  const int k = p.size();
  Word w;
  w.reserve(p.letters().size());
  for (int c : p.letters()) {
    w.push_back(k + 1 - c);
  }
  return Perm(std::move(w));
}

/**
 * Parses one-line notation as produced by word_to_string / to_string:
 * digits for letters 1-9 and "[c]" for larger letters.  parse_perm("") is
 * the empty permutation.
 */
inline Perm parse_perm(const std::string &s) {
  Word w;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (ch >= '1' && ch <= '9') {
      w.push_back(ch - '0');
      ++i;
    } else if (ch == '[') {
      const std::size_t close = s.find(']', i);
      if (close == std::string::npos || close == i + 1) {
        throw std::invalid_argument("parse_perm: unmatched '[' in \"" + s +
                                    "\".");
      }
      const std::string digits = s.substr(i + 1, close - i - 1);
      if (digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("parse_perm: bad letter \"[" + digits +
                                    "]\" in \"" + s + "\".");
      }
      w.push_back(std::stoi(digits));
      i = close + 1;
    } else {
      throw std::invalid_argument("parse_perm: unexpected character '" +
                                  std::string(1, ch) + "' in \"" + s + "\".");
    }
  }
  return Perm(std::move(w));
}

} // namespace eschemes

#endif // ESCHEMES_PERM_HPP
