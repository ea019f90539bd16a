#ifndef ESCHEMES_SCHEME_HPP
#define ESCHEMES_SCHEME_HPP

/**
 * Finite enumeration schemes.
 *
 * A scheme for a pattern set B assigns to each tracked prefix pattern p a
 * triple (p, G, R):
 *
 *  - G is a basis of gap vectors: if the spacing vector of a prefix word
 *    dominates some member of G componentwise, no completion avoids B and
 *    the count at that word is zero;
 *  - R is a set of deletable positions: deleting them maps the avoiding
 *    completions of w bijectively onto those of d_R(w), reducing to a
 *    shorter prefix;
 *  - R = {} with no all-zero gap vector marks a node that defers to its
 *    one-letter extensions instead.
 *
 * Validity (checked by validate) is exactly what the reading recursion
 * needs: the empty prefix is present with empty G and R, expanding nodes
 * have all children present, and deleting nodes have their deletion
 * target present.
 *
 * The clearance of a scheme is min |p| - max(R) over triples that
 * actually delete (R nonempty, no all-zero gap vector); it bounds how far
 * a deletion can reach back from the end of the prefix, which is what
 * statistic increments consume.  A scheme that never deletes has
 * unbounded clearance.
 */

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eschemes/pattern.hpp"
#include "eschemes/perm.hpp"

namespace eschemes {

/** One gap vector: |p| + 1 nonnegative spacing lower bounds. */
using GapVector = std::vector<int>;

inline std::string to_string(const GapVector &v) {
  std::string out = "<";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out + ">";
}

/** Componentwise g >= v. */
inline bool dominates(const GapVector &g, const GapVector &v) {
  if (g.size() != v.size()) {
    return false;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < v[i]) {
      return false;
    }
  }
  return true;
}

inline bool is_zero(const GapVector &v) {
  for (int x : v) {
    if (x != 0) {
      return false;
    }
  }
  return true;
}

struct SchemeTriple {
  Perm prefix;
  std::vector<GapVector> gaps; // kept sorted, forming an antichain
  std::vector<int> rd;         // kept sorted, 1-based positions; {} = expand

  SchemeTriple() = default;
  SchemeTriple(Perm p, std::vector<GapVector> g, std::vector<int> r)
      : prefix(std::move(p)), gaps(std::move(g)), rd(std::move(r)) {
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
    std::sort(rd.begin(), rd.end());
  }

  bool deletes() const { return !rd.empty(); }

  /** True when some gap vector is all-zero: no completion ever avoids B. */
  bool dead() const {
    for (const auto &v : gaps) {
      if (is_zero(v)) {
        return true;
      }
    }
    return false;
  }

  bool operator==(const SchemeTriple &o) const {
    return prefix == o.prefix && gaps == o.gaps && rd == o.rd;
  }
  bool operator!=(const SchemeTriple &o) const { return !(*this == o); }
};

/** Clearance: a nonnegative amount, or unbounded for deletion-free schemes. */
class Clearance {
public:
  static Clearance bounded(int v) { return Clearance(false, v); }
  static Clearance unbounded() { return Clearance(true, 0); }

  bool is_unbounded() const { return unbounded_; }

  int value() const {
    if (unbounded_) {
      throw std::logic_error("Clearance: unbounded has no numeric value.");
    }
    return value_;
  }

  /** Can a statistic with the given margin ride this scheme? */
  bool covers(int requiredMargin) const {
    return unbounded_ || value_ >= requiredMargin;
  }

  std::string str() const {
    return unbounded_ ? "unbounded" : std::to_string(value_);
  }

  bool operator==(const Clearance &o) const {
    return unbounded_ == o.unbounded_ && (unbounded_ || value_ == o.value_);
  }

private:
  Clearance(bool u, int v) : unbounded_(u), value_(v) {}
  bool unbounded_;
  int value_;
};

struct Scheme {
  PatternSet patterns;
  int verification_bound = 0;
  Symmetry symmetry = Symmetry::identity; // how `patterns` relates to the
                                          // set the user originally asked for
  std::map<Perm, SchemeTriple> triples;

  int depth() const {
    int d = 0;
    for (const auto &[p, t] : triples) {
      (void)t;
      d = std::max(d, p.size());
    }
    return d;
  }
};

/** Location and description of the first violated validity criterion. */
struct SchemeViolation {
  Perm prefix;
  std::string message;
};

/**
 * Checks the three validity criteria in deterministic order (prefixes
 * ascending, children/targets in natural order) and reports the first
 * violation, or nullopt for a valid scheme.
 */
inline std::optional<SchemeViolation> validate(const Scheme &s) {
  const auto root = s.triples.find(Perm());
  if (root == s.triples.end()) {
    return SchemeViolation{Perm(), "missing triple for the empty prefix."};
  }
  if (!root->second.gaps.empty() || !root->second.rd.empty()) {
    return SchemeViolation{
        Perm(), "the empty prefix must carry empty gap and deletion sets."};
  }
  for (const auto &[p, t] : s.triples) {
    const int k = p.size();
    if (!(t.prefix == p)) {
      return SchemeViolation{p, "triple stored under the wrong prefix."};
    }
    for (const auto &v : t.gaps) {
      if (static_cast<int>(v.size()) != k + 1) {
        return SchemeViolation{p, "gap vector " + to_string(v) + " has " +
                                      std::to_string(v.size()) +
                                      " components; expected " +
                                      std::to_string(k + 1) + "."};
      }
      for (int x : v) {
        if (x < 0) {
          return SchemeViolation{p, "gap vector " + to_string(v) +
                                        " has a negative component."};
        }
      }
    }
    for (std::size_t a = 0; a < t.gaps.size(); ++a) {
      for (std::size_t b = 0; b < t.gaps.size(); ++b) {
        if (a != b && dominates(t.gaps[a], t.gaps[b])) {
          return SchemeViolation{p, "gap vectors " + to_string(t.gaps[a]) +
                                        " and " + to_string(t.gaps[b]) +
                                        " are comparable; the basis must be "
                                        "an antichain."};
        }
      }
    }
    for (int r : t.rd) {
      if (r < 1 || r > k) {
        return SchemeViolation{p, "deletable position " + std::to_string(r) +
                                      " outside {1.." + std::to_string(k) +
                                      "}."};
      }
    }
    if (t.deletes()) {
      const Perm target = delete_entries(p, t.rd);
      if (s.triples.find(target) == s.triples.end()) {
        return SchemeViolation{p, "deletion target " + to_string(target) +
                                      " has no triple."};
      }
    } else if (!t.dead()) {
      for (const auto &child : children(p)) {
        if (s.triples.find(child) == s.triples.end()) {
          return SchemeViolation{p, "expanding node lacks a triple for "
                                    "child " +
                                        to_string(child) + "."};
        }
      }
    }
  }
  return std::nullopt;
}

/** min |p| - max(R) over genuinely deleting triples; unbounded if none. */
inline Clearance clearance(const Scheme &s) {
  bool any = false;
  int best = 0;
  for (const auto &[p, t] : s.triples) {
    if (!t.deletes() || t.dead()) {
      continue;
    }
    const int c = p.size() - t.rd.back();
    if (!any || c < best) {
      best = c;
      any = true;
    }
  }
  return any ? Clearance::bounded(best) : Clearance::unbounded();
}

/* ------------------------------------------------------------------ */
/* Serialization.                                                     */
/* ------------------------------------------------------------------ */

inline nlohmann::ordered_json scheme_to_json(const Scheme &s) {
  nlohmann::ordered_json j;
  j["patterns"] = nlohmann::ordered_json::array();
  for (const auto &pat : s.patterns) {
    j["patterns"].push_back(pat.str());
  }
  j["symmetry"] = tag(s.symmetry);
  j["verification_bound"] = s.verification_bound;
  j["triples"] = nlohmann::ordered_json::array();
  for (const auto &[p, t] : s.triples) {
    nlohmann::ordered_json jt;
    jt["prefix"] = to_string(p);
    jt["gaps"] = t.gaps;
    jt["rd"] = t.rd;
    j["triples"].push_back(std::move(jt));
  }
  return j;
}

inline Scheme scheme_from_json(const nlohmann::json &j) {
  if (!j.is_object()) {
    throw std::invalid_argument("scheme: top level must be an object.");
  }
  for (const char *field : {"patterns", "verification_bound", "triples"}) {
    if (!j.contains(field)) {
      throw std::invalid_argument(std::string("scheme: missing field \"") +
                                  field + "\".");
    }
  }
  Scheme s;
  if (!j["patterns"].is_array()) {
    throw std::invalid_argument("scheme: \"patterns\" must be an array.");
  }
  for (const auto &jp : j["patterns"]) {
    if (!jp.is_string()) {
      throw std::invalid_argument("scheme: patterns must be strings.");
    }
    s.patterns.push_back(parse_pattern(jp.get<std::string>()));
  }
  if (!j["verification_bound"].is_number_integer()) {
    throw std::invalid_argument(
        "scheme: \"verification_bound\" must be an integer.");
  }
  s.verification_bound = j["verification_bound"].get<int>();
  if (j.contains("symmetry")) {
    const auto sym = parse_symmetry(j["symmetry"].get<std::string>());
    if (!sym) {
      throw std::invalid_argument("scheme: unknown symmetry tag \"" +
                                  j["symmetry"].get<std::string>() + "\".");
    }
    s.symmetry = *sym;
  }
  if (!j["triples"].is_array()) {
    throw std::invalid_argument("scheme: \"triples\" must be an array.");
  }
  for (const auto &jt : j["triples"]) {
    if (!jt.is_object() || !jt.contains("prefix") || !jt.contains("gaps") ||
        !jt.contains("rd")) {
      throw std::invalid_argument(
          "scheme: each triple needs \"prefix\", \"gaps\" and \"rd\".");
    }
    const Perm p = parse_perm(jt["prefix"].get<std::string>());
    std::vector<GapVector> gaps;
    for (const auto &jv : jt["gaps"]) {
      GapVector v;
      for (const auto &jx : jv) {
        if (!jx.is_number_integer()) {
          throw std::invalid_argument(
              "scheme: gap vector components must be integers.");
        }
        v.push_back(jx.get<int>());
      }
      gaps.push_back(std::move(v));
    }
    std::vector<int> rd;
    for (const auto &jr : jt["rd"]) {
      if (!jr.is_number_integer()) {
        throw std::invalid_argument(
            "scheme: deletable positions must be integers.");
      }
      rd.push_back(jr.get<int>());
    }
    if (s.triples.count(p)) {
      throw std::invalid_argument("scheme: duplicate triple for prefix \"" +
                                  to_string(p) + "\".");
    }
    s.triples.emplace(p, SchemeTriple(p, std::move(gaps), std::move(rd)));
  }
  return s;
}

inline void save_scheme(const Scheme &s, const std::string &path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write scheme file \"" + path + "\".");
  }
  out << scheme_to_json(s).dump(2) << "\n";
}

inline Scheme load_scheme(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read scheme file \"" + path + "\".");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error &e) {
    throw std::invalid_argument("scheme file \"" + path +
                                "\" is not valid JSON: " + e.what());
  }
  return scheme_from_json(j);
}

/* ------------------------------------------------------------------ */
/* Rendering.                                                         */
/* ------------------------------------------------------------------ */

namespace detail {

inline std::string triple_annotation(const SchemeTriple &t) {
  std::string out;
  if (!t.gaps.empty()) {
    out += "  gaps {";
    for (std::size_t i = 0; i < t.gaps.size(); ++i) {
      out += (i ? ", " : "") + to_string(t.gaps[i]);
    }
    out += "}";
  }
  if (t.deletes()) {
    out += "  delete {";
    for (std::size_t i = 0; i < t.rd.size(); ++i) {
      out += (i ? "," : "") + std::to_string(t.rd[i]);
    }
    const Perm target = delete_entries(t.prefix, t.rd);
    out += "} -> " + (target.empty() ? std::string("e") : to_string(target));
  }
  return out;
}

inline void render_subtree(const Scheme &s, const Perm &p,
                           const std::string &indent, bool last,
                           std::map<Perm, bool> &seen, std::string &out) {
  const auto it = s.triples.find(p);
  if (it == s.triples.end()) {
    return;
  }
  seen[p] = true;
  const SchemeTriple &t = it->second;
  if (p.empty()) {
    out += "e\n";
  } else {
    out += indent + (last ? "`-- " : "|-- ") + to_string(p) +
           triple_annotation(t) + "\n";
  }
  if (t.deletes() || t.dead()) {
    return; // closed node: no children in the reading recursion
  }
  std::vector<Perm> kids;
  for (const auto &child : children(p)) {
    if (s.triples.count(child)) {
      kids.push_back(child);
    }
  }
  const std::string childIndent =
      p.empty() ? "" : indent + (last ? "    " : "|   ");
  for (std::size_t i = 0; i < kids.size(); ++i) {
    render_subtree(s, kids[i], childIndent, i + 1 == kids.size(), seen, out);
  }
}

} // namespace detail

/**
 * Text rendering of the prefix tree: children indented under expanding
 * nodes, gap bases shown inline, deletions shown as "delete {R} -> target"
 * back-references.  Triples not reachable from the root through expansion
 * (deletion targets whose own parent closed early) are listed afterwards.
 */
inline std::string render(const Scheme &s) {
  std::ostringstream head;
  head << "enumeration scheme for {" << to_string(s.patterns) << "}";
  if (s.symmetry != Symmetry::identity) {
    head << "  [transformed set, symmetry " << tag(s.symmetry) << "]";
  }
  head << "\n"
       << "prefixes: " << s.triples.size() << "   depth: " << s.depth()
       << "   clearance: " << clearance(s).str()
       << "   verified to n = " << s.verification_bound << "\n";
  std::string out = head.str();
  std::map<Perm, bool> seen;
  detail::render_subtree(s, Perm(), "", true, seen, out);
  bool headerPrinted = false;
  for (const auto &[p, t] : s.triples) {
    if (!seen.count(p)) {
      if (!headerPrinted) {
        out += "reached only as deletion targets:\n";
        headerPrinted = true;
      }
      out += "  " + (p.empty() ? std::string("e") : to_string(p)) +
             detail::triple_annotation(t) + "\n";
    }
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Deepening.                                                         */
/* ------------------------------------------------------------------ */

/**
 * Default inheritance rule for deepening: the new node takes the deletion
 * set of its longest ancestor prefix that the base scheme tracks.  An
 * ancestor that closed by an all-zero gap vector forces the descendant to
 * contain a pattern too, so the descendant is dead and keeps R = {}.
 */
inline std::vector<int> inherit_rd(const Perm &p, const Scheme &base) {
  for (int len = p.size() - 1; len >= 0; --len) {
    const Word head(p.letters().begin(), p.letters().begin() + len);
    const Perm ancestor = len == 0 ? Perm() : reduce(head);
    const auto it = base.triples.find(ancestor);
    if (it != base.triples.end()) {
      return it->second.rd;
    }
  }
  return {};
}

/** All permutations of {1..k} in lexicographic order. */
inline std::vector<Perm> all_perms(int k) {
  std::vector<Perm> out;
  Word w;
  for (int i = 1; i <= k; ++i) {
    w.push_back(i);
  }
  do {
    out.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

/**
 * Rebuilds a valid scheme of clearance >= extraClearance from a valid
 * scheme of depth K: every prefix of length up to K + extraClearance gets
 * a triple whose gap basis comes from gapOracle and whose deletion set is
 * empty below the new depth and inherited (rdInheritor) at the new depth.
 * The gap oracle is a callable Perm -> vector<GapVector>; the inheritor a
 * callable (Perm, Scheme) -> vector<int>.
 *
 * extraClearance = 0 returns the scheme unchanged.  verificationBound < 0
 * keeps the base scheme's bound; otherwise the smaller of the two is
 * stamped (deepening can only be as trustworthy as its weakest check).
 */
template <typename GapOracle, typename RdInheritor>
Scheme deepen(const Scheme &s, int extraClearance, GapOracle &&gapOracle,
              RdInheritor &&rdInheritor, int verificationBound = -1) {
  if (extraClearance < 0) {
    throw std::invalid_argument("deepen: negative clearance request.");
  }
  if (const auto bad = validate(s)) {
    throw std::invalid_argument("deepen: base scheme is invalid at \"" +
                                to_string(bad->prefix) +
                                "\": " + bad->message);
  }
  if (extraClearance == 0) {
    return s;
  }
  const int newDepth = s.depth() + extraClearance;
  Scheme out;
  out.patterns = s.patterns;
  out.symmetry = s.symmetry;
  out.verification_bound =
      verificationBound < 0 ? s.verification_bound
                            : std::min(s.verification_bound, verificationBound);
  out.triples.emplace(Perm(), SchemeTriple(Perm(), {}, {}));
  for (int len = 1; len <= newDepth; ++len) {
    for (const auto &p : all_perms(len)) {
      std::vector<GapVector> gaps = gapOracle(p);
      std::vector<int> rd;
      if (len == newDepth) {
        bool dead = false;
        for (const auto &v : gaps) {
          if (is_zero(v)) {
            dead = true;
          }
        }
        if (!dead) {
          rd = rdInheritor(p, s);
        }
      }
      out.triples.emplace(p, SchemeTriple(p, std::move(gaps), std::move(rd)));
    }
  }
  return out;
}

} // namespace eschemes

#endif // ESCHEMES_SCHEME_HPP
