#ifndef ESCHEMES_POLYNOMIAL_HPP
#define ESCHEMES_POLYNOMIAL_HPP

/**
 * Sparse multivariate polynomials with arbitrary-precision integer
 * coefficients, used for statistic distributions such as
 * 42q^4 + 1770q^5 + ... over a class of pattern-avoiding permutations.
 *
 * Exponents are signed: scheme reading multiplies by statistic increments
 * that can be negative at intermediate steps, and only the final
 * distribution is required to be exponent-nonnegative (the evaluator
 * checks this invariant).  There is no division; multiplication is only
 * ever by monomials, which keeps the representation exact and cheap.
 */

#include <cstddef>
#include <gmpxx.h>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace eschemes {

/** One exponent per indeterminate. */
using Exponents = std::vector<int>;

class Polynomial {
public:
  /** The zero polynomial in `arity` indeterminates. */
  explicit Polynomial(int arity = 0) : arity_(arity) {
    if (arity < 0) {
      throw std::invalid_argument("Polynomial: negative arity.");
    }
  }

  /** c * x1^e1 ... xm^em. */
  static Polynomial monomial(const Exponents &exponents,
                             const mpz_class &coefficient) {
    Polynomial p(static_cast<int>(exponents.size()));
    if (coefficient != 0) {
      p.terms_[exponents] = coefficient;
    }
    return p;
  }

  /** The constant 1 (all exponents zero). */
  static Polynomial one(int arity) {
    return monomial(Exponents(static_cast<std::size_t>(arity), 0), 1);
  }

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /** Coefficient of the given exponent vector (zero if absent). */
  mpz_class coefficient(const Exponents &exponents) const {
    check_arity(exponents);
    const auto it = terms_.find(exponents);
    return it == terms_.end() ? mpz_class(0) : it->second;
  }

  /** Terms in lexicographic exponent order; coefficients are nonzero. */
  const std::map<Exponents, mpz_class> &terms() const { return terms_; }

  Polynomial &operator+=(const Polynomial &o) {
    if (o.arity_ != arity_) {
      throw std::invalid_argument("Polynomial: arity mismatch in addition.");
    }
    for (const auto &[e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, c);
      } else {
        it->second += c;
        if (it->second == 0) {
          terms_.erase(it);
        }
      }
    }
    return *this;
  }

  Polynomial operator+(const Polynomial &o) const {
    Polynomial r = *this;
    r += o;
    return r;
  }

  /** Multiplies in place by c * x1^e1 ... xm^em. */
  Polynomial &scale_by_monomial(const Exponents &exponents,
                                const mpz_class &coefficient) {
    check_arity(exponents);
    if (coefficient == 0) {
      terms_.clear();
      return *this;
    }
    std::map<Exponents, mpz_class> shifted;
    for (const auto &[e, c] : terms_) {
      Exponents e2 = e;
      for (std::size_t i = 0; i < e2.size(); ++i) {
        e2[i] += exponents[i];
      }
      shifted.emplace(std::move(e2), c * coefficient);
    }
    terms_ = std::move(shifted);
    return *this;
  }

  /** Sum of all coefficients: every indeterminate specialized to 1. */
  mpz_class at_all_ones() const {
    mpz_class total = 0;
    for (const auto &[e, c] : terms_) {
      (void)e;
      total += c;
    }
    return total;
  }

  /** True if some term has a negative exponent. */
  bool has_negative_exponent() const {
    for (const auto &[e, c] : terms_) {
      (void)c;
      for (int x : e) {
        if (x < 0) {
          return true;
        }
      }
    }
    return false;
  }

  /** Largest exponent of indeterminate i across all terms (0 if zero poly). */
  int max_exponent(int i) const {
    int best = 0;
    for (const auto &[e, c] : terms_) {
      (void)c;
      best = std::max(best, e[static_cast<std::size_t>(i)]);
    }
    return best;
  }

  bool operator==(const Polynomial &o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial &o) const { return !(*this == o); }

  /**
   * Renders with the given indeterminate names ("q", "t", ... by default),
   * terms in ascending lexicographic exponent order: "42q^4 + 1770q^5".
   */
  std::string str(const std::vector<std::string> &names = {}) const {
    if (terms_.empty()) {
      return "0";
    }
    const std::vector<std::string> vars = effective_names(names);
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms_) {
      mpz_class coeff = c;
      if (first) {
        if (coeff < 0) {
          out += "-";
          coeff = -coeff;
        }
      } else {
        out += (coeff < 0) ? " - " : " + ";
        if (coeff < 0) {
          coeff = -coeff;
        }
      }
      first = false;
      std::string factors;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
          continue;
        }
        factors += vars[i];
        if (e[i] != 1) {
          factors += '^' + std::to_string(e[i]);
        }
      }
      if (factors.empty() || coeff != 1) {
        out += coeff.get_str();
      }
      out += factors;
    }
    return out;
  }

private:
  void check_arity(const Exponents &exponents) const {
    if (static_cast<int>(exponents.size()) != arity_) {
      throw std::invalid_argument(
          "Polynomial: exponent vector of length " +
          std::to_string(exponents.size()) + " for arity " +
          std::to_string(arity_) + ".");
    }
  }

  std::vector<std::string> effective_names(
      const std::vector<std::string> &names) const {
    if (static_cast<int>(names.size()) >= arity_) {
      return names;
    }
    static const char *defaults[] = {"q", "t", "u", "v"};
    std::vector<std::string> vars;
    for (int i = 0; i < arity_; ++i) {
      if (i < static_cast<int>(names.size())) {
        vars.push_back(names[static_cast<std::size_t>(i)]);
      } else if (arity_ <= 4) {
        vars.push_back(defaults[i]);
      } else {
        vars.push_back("q" + std::to_string(i + 1));
      }
    }
    return vars;
  }

  int arity_ = 0;
  std::map<Exponents, mpz_class> terms_;
};

inline std::string to_string(const Polynomial &p) { return p.str(); }

} // namespace eschemes

#endif // ESCHEMES_POLYNOMIAL_HPP
