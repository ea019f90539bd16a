/**
 * Sparse multivariate Laurent polynomials with big-integer coefficients:
 * arithmetic, monomial scaling (the recurrence's exponent shifts),
 * specialization, and the display format used in reports.
 */

#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>
#include <stdexcept>

#include "eschemes/polynomial.hpp"

using namespace eschemes;

TEST_CASE("monomials and addition", "[polynomial]") {
  Polynomial p = Polynomial::monomial({4}, 42);
  p += Polynomial::monomial({5}, 1770);
  p += Polynomial::monomial({4}, 1);
  CHECK(p.coefficient({4}) == 43);
  CHECK(p.coefficient({5}) == 1770);
  CHECK(p.coefficient({6}) == 0);
  CHECK(p.terms().size() == 2);

  // Cancellation removes the term entirely.
  p += Polynomial::monomial({5}, -1770);
  CHECK(p.terms().size() == 1);
  CHECK(p.coefficient({5}) == 0);
}

TEST_CASE("zero and one", "[polynomial]") {
  const Polynomial zero(1);
  CHECK(zero.terms().empty());
  CHECK(zero.at_all_ones() == 0);
  const Polynomial one = Polynomial::one(2);
  CHECK(one.coefficient({0, 0}) == 1);
  CHECK(one.at_all_ones() == 1);
  // Arity 0 is the scalar case used for plain counting.
  const Polynomial scalar = Polynomial::monomial({}, 14);
  CHECK(scalar.at_all_ones() == 14);
}

TEST_CASE("monomial scaling shifts exponents", "[polynomial]") {
  Polynomial p = Polynomial::monomial({1, 0}, 2);
  p += Polynomial::monomial({0, 3}, 5);
  p.scale_by_monomial({2, -1}, 3);
  CHECK(p.coefficient({3, -1}) == 6);
  CHECK(p.coefficient({2, 2}) == 15);
  CHECK(p.has_negative_exponent());
  p.scale_by_monomial({0, 1}, 1);
  CHECK_FALSE(p.has_negative_exponent());
}

TEST_CASE("specialization at all ones", "[polynomial]") {
  Polynomial p = Polynomial::monomial({4}, 42);
  p += Polynomial::monomial({9}, 1);
  p += Polynomial::monomial({-2}, 7); // Laurent terms count too
  CHECK(p.at_all_ones() == 50);
}

TEST_CASE("max exponent per variable", "[polynomial]") {
  Polynomial p = Polynomial::monomial({1, 5}, 1);
  p += Polynomial::monomial({3, 0}, 1);
  CHECK(p.max_exponent(0) == 3);
  CHECK(p.max_exponent(1) == 5);
}

TEST_CASE("equality is structural", "[polynomial]") {
  Polynomial a = Polynomial::monomial({2}, 3);
  Polynomial b = Polynomial::monomial({2}, 2);
  b += Polynomial::monomial({2}, 1);
  CHECK(a == b);
  b += Polynomial::monomial({0}, 1);
  CHECK_FALSE(a == b);
}

TEST_CASE("display format", "[polynomial]") {
  Polynomial p = Polynomial::monomial({4}, 42);
  p += Polynomial::monomial({5}, 1770);
  CHECK(p.str({"q"}) == "42q^4 + 1770q^5");

  const Polynomial constant = Polynomial::one(1);
  CHECK(constant.str({"q"}) == "1");

  Polynomial mixed = Polynomial::monomial({1}, 1);
  mixed += Polynomial::monomial({2}, -3);
  CHECK(mixed.str({"q"}) == "q - 3q^2");

  Polynomial bivariate = Polynomial::monomial({1, 1}, 1);
  bivariate += Polynomial::monomial({0, 0}, 1);
  CHECK(bivariate.str({"q", "t"}) == "1 + qt");

  CHECK(Polynomial(2).str({"q", "t"}) == "0");
}

TEST_CASE("mismatched arity is rejected", "[polynomial]") {
  Polynomial p(1);
  CHECK_THROWS_AS(p += Polynomial::monomial({1, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::monomial({1}, 1).scale_by_monomial({1, 2}, 1),
                  std::invalid_argument);
}
