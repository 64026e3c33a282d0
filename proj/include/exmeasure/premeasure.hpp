#pragma once

#include "exmeasure/ground_set.hpp"
#include "exmeasure/report.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace exm {

// Position of a complemented subset in a space's index enumeration.
using Index = std::uint32_t;

/**
 * A finite pre-measure space: an enumerated family of complemented
 * subsets of a ground set, closed under meet, join and complement, with
 * a nonnegative rational measure on the indices.
 *
 * The index set doubles as its own ambient family (identity embedding);
 * the binary difference is the derived operation i ~ j := i /\ (~ j),
 * so its compatibility with the set-level difference holds by
 * construction and the axiom checker verifies the meet/join/complement
 * identities.
 */
class PreMeasureSpace {
public:
    const std::string& name() const { return name_; }
    const GroundPtr& ground() const { return ground_; }
    std::size_t index_count() const { return family_.size(); }

    const ComplementedSubset& family(Index i) const;
    const Rational& measure(Index i) const;

    Index op_meet(Index i, Index j) const;
    Index op_join(Index i, Index j) const;
    Index op_compl(Index i) const;
    Index op_diff(Index i, Index j) const { return op_meet(i, op_compl(j)); }

    // Factories below are the only way to build a space.
    PreMeasureSpace(const PreMeasureSpace&) = delete;
    PreMeasureSpace& operator=(const PreMeasureSpace&) = delete;

private:
    PreMeasureSpace() = default;
    static void fill_indicator_structure(PreMeasureSpace& s, const GroundPtr& ground);

    std::string name_;
    GroundPtr ground_;
    std::vector<ComplementedSubset> family_;
    std::vector<Rational> measure_;
    std::function<Index(Index, Index)> meet_, join_;
    std::function<Index(Index)> compl_;

    friend std::shared_ptr<const PreMeasureSpace> dirac(GroundPtr ground, std::string_view point);
    friend std::shared_ptr<const PreMeasureSpace> weighted_counting(GroundPtr ground,
                                                                    std::vector<Rational> weights);
    friend std::shared_ptr<const PreMeasureSpace> table_space(GroundPtr ground,
                                                              std::vector<ComplementedSubset> family,
                                                              std::vector<Rational> measure,
                                                              std::string name);
};

using SpacePtr = std::shared_ptr<const PreMeasureSpace>;

/**
 * The point measure concentrated at `point`: indices are all 2^|X|
 * indicator functions, the family is their detachable sets, the measure
 * of an index is the indicator's value at the point. Meet is pointwise
 * product, join is f+g-fg, complement is 1-f — on indicator bitmasks
 * these are and / or / not. Ground sets above 16 elements are rejected
 * (the index family is materialised eagerly).
 */
SpacePtr dirac(GroundPtr ground, std::string_view point);

/**
 * Same index structure as dirac, with measure Σ_{f(x)=1} weights(x).
 * Weights must be nonnegative with at least one positive entry (an
 * everywhere-zero measure would have no positive index).
 */
SpacePtr weighted_counting(GroundPtr ground, std::vector<Rational> weights);

/**
 * A space given literally: an explicit family with an explicit measure
 * per index. The family must be duplicate-free and closed under the
 * set-level meet, join and complement (the operations are realised by
 * lookup); the measure must be nonnegative. No axiom beyond that is
 * enforced here — run check_pms to find out what the table satisfies,
 * which is exactly the point of hand-built tables.
 */
SpacePtr table_space(GroundPtr ground, std::vector<ComplementedSubset> family,
                     std::vector<Rational> measure, std::string name = "table");

/**
 * The four pre-measure axioms plus structural sanity, each as one report
 * entry with a counterexample on failure:
 *
 *   measure-nonnegative, family-injective — structural invariants;
 *   pms1-meet/join/complement-compatible — index ops match set ops;
 *   pms1-modular — mu(i) + mu(j) = mu(i v j) + mu(i ^ j);
 *   pms2-difference-split — mu(i) = mu(k) + mu(l) for witnesses k, l of
 *     i ^ j and i ~ j (witnesses searched by family equality);
 *   pms3-positive-index — some index has positive measure;
 *   pms4-positive-meets-inhabited — every index of positive measure has
 *     an inhabited positive part. Over a finite index set closed under
 *     meet, the partial meets of any sequence have shrinking positive
 *     parts and domains, so they stabilise at an index and the general
 *     sequence condition reduces to this per-index one.
 *
 * Throws if the ground set exceeds config.max_ground (sweeps are
 * quadratic in the 2^|X| indices).
 */
Report check_pms(const SpacePtr& space, const CheckConfig& config = {});

// Indices whose positive part is empty must have measure zero, and
// self-difference always produces such an index.
Report empty_positive_zero(const SpacePtr& space);

// Restricting an index to the common domain F of a tuple of indices
// (via j ~ (i_1 ~ i_1 v ... v i_n ~ i_n)) intersects its parts with F
// and preserves its measure. Sampled over random tuples.
Report restrict_measure_invariance(const SpacePtr& space, const CheckConfig& config = {});

// If chi_i <= chi_j pointwise on the common (optionally tuple-restricted)
// domain, then mu(i) <= mu(j). Full pair sweep plus sampled tuples.
Report monotonicity_check(const SpacePtr& space, const CheckConfig& config = {});

}  // namespace exm
