#pragma once

#include "exmeasure/rational.hpp"
#include "exmeasure/report.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exm {

// Ground sets are small finite enumerations, so subsets fit in a word.
using Mask = std::uint64_t;

class GroundSet {
public:
    // Labels must be pairwise distinct; at most 64 of them.
    explicit GroundSet(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const;
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    Mask full() const;
    // Canonical textual form, elements in enumeration order: "{a,c}".
    std::string mask_str(Mask m) const;

private:
    std::vector<std::string> labels_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

// Two handles address the same ground set if they are the same object or
// carry identical label lists.
bool same_ground(const GroundPtr& a, const GroundPtr& b);

// A pair of subsets that cannot meet: pos holds the members, neg the
// points positively known to be outside. Everything in between is
// undecided.
class ComplementedSubset {
public:
    ComplementedSubset(GroundPtr ground, Mask pos, Mask neg);

    const GroundPtr& ground() const { return ground_; }
    Mask pos() const { return pos_; }
    Mask neg() const { return neg_; }
    Mask domain() const { return pos_ | neg_; }
    std::string str() const;

private:
    GroundPtr ground_;
    Mask pos_;
    Mask neg_;
};

// Lattice operations. The negative part of a meet (dually, the positive
// part of a join) only keeps points where both arguments are decided:
//   A /\ B = (A1 & B1, (A1 & B0) | (A0 & B1) | (A0 & B0))
//   A \/ B = ((A1 & B0) | (A0 & B1) | (A1 & B1), A0 & B0)
// All throw std::invalid_argument on a ground-set mismatch.
ComplementedSubset cs_meet(const ComplementedSubset& a, const ComplementedSubset& b);
ComplementedSubset cs_join(const ComplementedSubset& a, const ComplementedSubset& b);
ComplementedSubset cs_not(const ComplementedSubset& a);
ComplementedSubset cs_minus(const ComplementedSubset& a, const ComplementedSubset& b);

// Partial order: a.pos within b.pos and b.neg within a.neg.
bool cs_leq(const ComplementedSubset& a, const ComplementedSubset& b);
bool cs_eq(const ComplementedSubset& a, const ComplementedSubset& b);

// Total {0,1}-valued function on the ground set.
struct IndicatorFn {
    GroundPtr ground;
    Mask ones = 0;
};

// Rational-valued function defined exactly on `domain`.
class PartialRationalFn {
public:
    // values must have one slot per ground element; slots outside the
    // domain are normalised to zero so equality stays structural.
    PartialRationalFn(GroundPtr ground, Mask domain, std::vector<Rational> values);

    const GroundPtr& ground() const { return ground_; }
    Mask domain() const { return domain_; }
    const Rational& at(std::size_t i) const;  // throws outside the domain

private:
    GroundPtr ground_;
    Mask domain_;
    std::vector<Rational> values_;
};

// Pointwise operations on the intersection of the domains.
PartialRationalFn pf_add(const PartialRationalFn& f, const PartialRationalFn& g);
PartialRationalFn pf_sub(const PartialRationalFn& f, const PartialRationalFn& g);
PartialRationalFn pf_mul(const PartialRationalFn& f, const PartialRationalFn& g);
PartialRationalFn pf_min(const PartialRationalFn& f, const PartialRationalFn& g);
PartialRationalFn pf_max(const PartialRationalFn& f, const PartialRationalFn& g);
// Scalar multiple and value-map keep the domain unchanged.
PartialRationalFn pf_scale(const Rational& a, const PartialRationalFn& f);
PartialRationalFn pf_map(const PartialRationalFn& f, const std::function<Rational(const Rational&)>& fn);
// Domain equality plus pointwise value equality.
bool pf_eq(const PartialRationalFn& f, const PartialRationalFn& g);

// 1 on pos, 0 on neg, undefined elsewhere.
PartialRationalFn characteristic(const ComplementedSubset& a);

// The complemented subset ({f = 1}, {f = 0}); its domain is all of X and
// its characteristic function is f again.
ComplementedSubset detachable(const IndicatorFn& f);

// Every complemented subset of the ground set (3^size of them, each point
// independently in / out / undecided). Guarded against large ground sets.
std::vector<ComplementedSubset> all_complemented(const GroundPtr& gs);

// Positive inequality: some {0,1}-valued function takes different values
// at i and j. Returns a witnessed answer (the singleton indicator at i).
bool separated(const GroundSet& gs, std::size_t i, std::size_t j);

// Exhaustive verification of the complemented-set algebra over one ground
// set: commutativity, associativity, double complement, De Morgan, both
// distributive laws, the characteristic-function identities, the order
// axioms, the indicator/detachable bijection, and the apartness axioms
// for `separated`. Sizes above 5 are rejected (the sweeps are cubic in
// 3^size).
Report check_complemented_algebra(const GroundPtr& gs);

}  // namespace exm
