#pragma once

/**
 * @file simple_function.hpp
 * Simple functions over a pre-measure space: finite rational combinations
 * of characteristic functions of indexed complemented subsets.
 *
 * A term list (a_1,i_1),...,(a_n,i_n) denotes the partial function
 *     f_v = sum_k a_k * chi_k
 * on the common domain F of the characteristic functions involved (F is
 * the whole ground set when the list is empty). Equality of simple
 * functions is equality of (domain, values) — not of term lists — and the
 * exact integral sum_k a_k * mu(i_k) respects it; that the integral is
 * well defined is a theorem exercised by the checkers here, never an
 * assumption.
 */

#include "exmeasure/ground_set.hpp"
#include "exmeasure/premeasure.hpp"
#include "exmeasure/rational.hpp"
#include "exmeasure/report.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace exm {

struct SimpleTerm {
    Rational coeff;
    Index index = 0;
};

class SimpleFunction {
public:
    // Validates that every index belongs to the space; throws otherwise.
    SimpleFunction(SpacePtr space, std::vector<SimpleTerm> terms);

    const SpacePtr& space() const { return space_; }
    const std::vector<SimpleTerm>& terms() const { return terms_; }

    // F: the intersection of the term domains; full for the empty list.
    Mask domain() const;

private:
    SpacePtr space_;
    std::vector<SimpleTerm> terms_;
};

// Exact value at ground element x. Throws std::out_of_range off the domain.
Rational eval(const SimpleFunction& v, std::size_t x);

// f_v as a partial rational function on F.
PartialRationalFn sf_function(const SimpleFunction& v);

// Same domain and same values there. Throws std::invalid_argument when the
// two functions live over different space objects.
bool sf_equal(const SimpleFunction& v, const SimpleFunction& w);

// Short display form, e.g. "3/2*chi#5 + -1*chi#3" ("0" for no terms).
std::string sf_str(const SimpleFunction& v);

// A simple function whose terms sit on pairwise disjoint complemented
// subsets (chi-product zero on the shared domain), every term cut to the
// input's domain F.
struct DisjointRep {
    SimpleFunction fn;
};

// Rewrites v over the 2^n - 1 nonzero boolean profiles of its n terms:
// profile f receives coefficient sum_{f(k)=1} a_k on the piece lying
// inside every i_k with f(k)=1 and outside every i_k with f(k)=0. The
// all-zero profile carries no value and is omitted; instead every output
// term is restricted to F by subtracting the measure-zero index
// z = join_k (i_k ~ i_k), which also stands in for the empty join when a
// profile has no zero positions. The result is sf_equal to the input.
// Term counts above 16 are rejected (the enumeration is exponential).
DisjointRep disjrep(const SimpleFunction& v);

// integral(v) = sum_k a_k * mu(i_k), exact.
Rational integral(const SimpleFunction& v);

// Term-wise scalar multiple and term-list concatenation; these realize
// a*f_v and f_v + f_w on the appropriate domains.
SimpleFunction scalar_mul(const Rational& a, const SimpleFunction& v);
SimpleFunction add(const SimpleFunction& v, const SimpleFunction& w);

// |f_v| and f_v /\ 1. Computed on the disjoint representation, where both
// act coefficient-wise; applying them to raw terms would be wrong.
SimpleFunction abs_sf(const SimpleFunction& v);
SimpleFunction meet_one(const SimpleFunction& v);

// Pointwise max / min via the lattice identities
//   v \/ w = w + (v - w + |v - w|) / 2,   v /\ w = -((-v) \/ (-w)).
SimpleFunction sf_join(const SimpleFunction& v, const SimpleFunction& w);
SimpleFunction sf_meet(const SimpleFunction& v, const SimpleFunction& w);

// For nonnegative v (checked by enumeration; std::domain_error otherwise)
// selects the index of a "f_v is not small" set: writing d for the
// disjoint representation of v, the pieces with coefficient >= 1/N are
// joined (more precisely: every piece with coefficient > 1/(2N), the
// maximal choice) unless all of them have coefficient < 1/N, in which
// case the empty set over F is returned. Only pieces whose positive part
// is inhabited participate: an empty piece realizes no value of f_v and
// its coefficient depends on the chosen term list, so admitting it would
// make the result depend on the representation. Guarantees: pos/neg
// parts lie inside F, f_v < 1/N on the negative part, and
// mu(phi_N(v)) <= 2N * integral(v).
Index phi_N(const SimpleFunction& v, long N);

// A randomly rewritten simple function with the same (domain, values):
// term splitting, reordering, zero-padding on an already-present index,
// and replacement by the disjoint representation. Drives the
// well-definedness checks.
SimpleFunction equivalent_variant(std::mt19937_64& rng, const SimpleFunction& v);

// The four axioms of a pre-integration space for (X, S(I), integral):
// pointwise identities and integral linearity (exhaustive over a small
// coefficient grid, then sampled on longer term lists), the series
// witness property, the unit integral, the two stabilization limits, plus
// integral well-definedness and the phi_N selector contract.
Report check_pis_simple(const SpacePtr& space, const CheckConfig& config = {});

// Consequences of the axioms as tested properties: |integral(v)| bounded
// by integral(|v|), nonnegative functions have nonnegative integrals,
// pointwise order implies integral order, and the positive-sum witness
// property.
Report pis_basic_lemmas(const SpacePtr& space, const CheckConfig& config = {});

}  // namespace exm
