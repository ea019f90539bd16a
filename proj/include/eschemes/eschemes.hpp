#ifndef ESCHEMES_ESCHEMES_HPP
#define ESCHEMES_ESCHEMES_HPP

/**
 * Umbrella header: the whole enumeration-scheme toolkit.
 *
 *  - perm.hpp        permutations, words, reductions, spacing vectors
 *  - pattern.hpp     vincular patterns, containment, symmetries
 *  - polynomial.hpp  multivariate Laurent polynomials over big integers
 *  - oracle.hpp      brute-force avoider enumeration and counting
 *  - statistic.hpp   permutation statistics and their prefix increments
 *  - scheme.hpp      the scheme data model: triples, validity, clearance
 *  - discover.hpp    automatic scheme discovery and deepening
 *  - evaluate.hpp    reading schemes: counts and distributions
 */

#include "eschemes/perm.hpp"
#include "eschemes/pattern.hpp"
#include "eschemes/polynomial.hpp"
#include "eschemes/oracle.hpp"
#include "eschemes/statistic.hpp"
#include "eschemes/scheme.hpp"
#include "eschemes/discover.hpp"
#include "eschemes/evaluate.hpp"

#endif // ESCHEMES_ESCHEMES_HPP
