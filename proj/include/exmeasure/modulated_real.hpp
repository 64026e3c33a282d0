#pragma once

/**
 * @file modulated_real.hpp
 * Cauchy reals with explicit moduli of convergence.
 *
 * A real is a pair ((a_n)_{n>=1}, M) of a rational approximation sequence
 * and a strictly increasing modulus M : precisions -> indices such that
 *
 *     for all p and all n, m >= M(p):   |a_n - a_m| <= 2^-p.
 *
 * Precisions p are 0-based (radius 2^-p), indices are 1-based. Every
 * operation here propagates a sound modulus; nothing is ever searched
 * for at runtime and no operation can diverge hunting for precision.
 * Series are only admitted together with a caller-supplied certificate
 * for their absolute tails (sum_series below).
 */

#include "exmeasure/rational.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace exm {

/// Rational approximation sequence, defined for every index n >= 1.
using Approx = std::function<Rational(long)>;

/// Convergence modulus: precision p >= 0 to index, strictly increasing in p.
using Modulus = std::function<long(long)>;

/// Wrap a modulus so the result is provably strictly increasing and >= lo:
/// values are computed once, cached, and lifted to max(raw(p), prev+1, lo).
/// Sound whenever larger indices are allowed (true for Cauchy indices and
/// for series tail cutoffs alike).
Modulus strictify(Modulus raw, long lo = 1);

class ModulatedReal {
public:
    /// The modulus is spot-checked for strict increase on construction.
    ModulatedReal(Approx approx, Modulus modulus,
                  std::optional<Rational> exact = std::nullopt);

    static ModulatedReal from_rational(Rational q);

    Rational approx(long n) const { return approx_(n); }
    long modulus(long p) const;

    /// Exact rational value when the real is known to be one (constants and
    /// arithmetic over constants). Approximation paths never consult this;
    /// it exists so callers can print exact answers when they have them.
    const std::optional<Rational>& exact() const { return exact_; }

private:
    Approx approx_;
    Modulus modulus_;
    std::optional<Rational> exact_;
};

ModulatedReal add(const ModulatedReal& x, const ModulatedReal& y);
ModulatedReal sub(const ModulatedReal& x, const ModulatedReal& y);
ModulatedReal neg(const ModulatedReal& x);
ModulatedReal mul(const ModulatedReal& x, const ModulatedReal& y);
ModulatedReal abs(const ModulatedReal& x);
ModulatedReal min(const ModulatedReal& x, const ModulatedReal& y);
ModulatedReal max(const ModulatedReal& x, const ModulatedReal& y);

/// a_{M(p)}: within 2^-p of every later term, hence of the real itself.
Rational approx_to(const ModulatedReal& x, long p);

/// Three-way bounded comparison at precision p.
enum class Cmp {
    less,     ///< x < y holds exactly
    within,   ///< |x - y| <= 2^-p
    greater,  ///< x > y holds exactly
};
Cmp compare_at(const ModulatedReal& x, const ModulatedReal& y, long p);

/// Bounded equality test: |a_{M(p+1)} - b_{N(p+1)}| <= 2^-p.
/// True at every p iff the two reals are equal.
bool eq_at(const ModulatedReal& x, const ModulatedReal& y, long p);

/// Sum of the series term(1) + term(2) + ... .
///
/// abs_tail certifies absolute convergence and is the only admission
/// ticket: for every p and every N >= abs_tail(p),
///     sum_{n > N} |term(n)| <= 2^-p.
/// The partial sum with abs_tail(p) terms is then within 2^-p of the
/// result. Prefixes are memoised internally (thread-safe), so walking a
/// series to increasing precisions costs each term only once when the
/// terms are exact rationals.
ModulatedReal sum_series(std::function<ModulatedReal(long)> term, Modulus abs_tail);

}  // namespace exm
