#pragma once

/**
 * @file completion.hpp
 * The metric completion of the simple-function integration space:
 * certified absolutely-summable streams of simple functions, their
 * pointwise and integral calculus, compression, summation of series of
 * streams, and limits of Cauchy sequences in the 1-norm.
 *
 * Everything is certificate-in, certificate-out. A stream is admitted
 * only together with a tail modulus for its absolute integrals, every
 * operation combines the incoming certificates into a sound certificate
 * for its result, and nothing ever searches for precision at runtime.
 */

#include "exmeasure/modulated_real.hpp"
#include "exmeasure/premeasure.hpp"
#include "exmeasure/rational.hpp"
#include "exmeasure/report.hpp"
#include "exmeasure/simple_function.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace exm {

/**
 * A stream alpha(1), alpha(2), ... of simple functions over one space,
 * together with a certificate for its absolute integral tails:
 *
 *     for every p >= 0 and every N >= tail_modulus(p):
 *         sum_{n > N} integral(|alpha(n)|) <= 2^-p
 *
 * with tail_modulus strictly increasing and >= 1. The stream denotes
 * the partial function g(x) = sum_n f_{alpha(n)}(x) on the points of
 * the common term domain where the series converges absolutely, and
 * carries the integral sum_n integral(alpha(n)), which the certificate
 * turns into a modulated real.
 *
 * support_hint = N promises that alpha(n) is the zero function for all
 * n > N (identically zero on its domain, not necessarily an empty term
 * list) and that the domain of every term beyond N contains the common
 * domain of the first N terms. Streams with a hint evaluate and
 * integrate to exact rationals. All constructors and operations here
 * preserve the hint contract.
 */
struct Representation {
    SpacePtr space;
    std::function<SimpleFunction(long)> term;  // defined for every n >= 1
    Modulus tail_modulus;
    std::optional<long> support_hint;
};

// -- Constructors ----------------------------------------------------------

// Finite support: the listed terms (over the given space) followed by
// zero functions on the full ground set.
Representation rep_from_terms(SpacePtr space, std::vector<SimpleFunction> terms);

// alpha(n) = ratio^n * base with |ratio| < 1 (throws otherwise); the
// tail certificate comes from the closed form of the geometric series.
// With ratio 1/2 the stream sums to exactly the integral of base.
Representation rep_geometric(const SimpleFunction& base, const Rational& ratio);

// The canonical embedding of a simple function: (v, 0*v, 0*v, ...).
// Integral, norm and evaluation agree exactly with the simple function.
Representation embed(const SimpleFunction& v);

// -- Pointwise operations --------------------------------------------------

// Interleaving (a(1), b(1), a(2), b(2), ...): realizes g_a + g_b.
Representation rep_add(const Representation& a, const Representation& b);

// Termwise scalar multiple: realizes c * g_a.
Representation rep_scale(const Rational& c, const Representation& a);

// Blocks of three, (|s_n| - |s_{n-1}|, a(n), -a(n)) with s_n the n-th
// prefix sum of the stream: the increments telescope to |s_n| while the
// paired terms cancel, so the stream realizes |g_a|. Each increment has
// absolute integral at most integral(|a(n)|), which yields the tail
// modulus p -> 3 * tail_a(p+2) + 3.
Representation rep_abs(const Representation& a);

// The same telescoping pattern for s -> s /\ 1: realizes g_a /\ 1.
Representation rep_meet_one(const Representation& a);

// -- Integration, evaluation, norm ----------------------------------------

// sum_n integral(a(n)); exact (with the exact field set) when the stream
// has a support hint, otherwise summed under the tail certificate.
ModulatedReal integral_rep(const Representation& a);

// Exact integral of a finite-support stream. Throws std::invalid_argument
// without a support hint.
Rational integral_exact(const Representation& a);

// Common domain mask of a finite-support stream (the intersection of the
// first support_hint term domains; full for hint 0). Throws without a hint.
Mask rep_domain(const Representation& a);

// g(x) for a finite-support stream, exact. Throws std::invalid_argument
// without a hint and std::out_of_range off the domain.
Rational eval_exact(const Representation& a, std::size_t x);

// g(x) as a modulated real. The one-argument form requires a support
// hint. The general form needs a caller-supplied certificate:
//     for every p and N >= pointwise_tail(p):
//         sum_{n > N} |f_{a(n)}(x)| <= 2^-p;
// terms are evaluated lazily, so an x outside some term's domain throws
// when that term is first realized.
ModulatedReal eval_rep(const Representation& a, std::size_t x);
ModulatedReal eval_rep(const Representation& a, std::size_t x, Modulus pointwise_tail);

// ||a||_1 = integral of |a|; approximations are clamped at zero, so they
// are nonnegative at every precision.
ModulatedReal norm1(const Representation& a);

// Exact 1-norm of a finite-support stream (throws without a hint).
Rational norm1_exact(const Representation& a);

// A stream bundled with its 1-norm, computed once at packaging time.
// Useful when the same norm is consulted at many precisions.
struct NormedClass {
    Representation rep;
    ModulatedReal cached_norm;
};

NormedClass with_norm(Representation a);

// Semi-decision of the metric identification at radius 2^-p:
// `distinct` implies integral(|a - b|) > 0 exactly; `equal_within`
// implies integral(|a - b|) <= 2^-p. Finite-support pairs resolve the
// norm exactly, so for them `equal_within` means exactly zero.
enum class EqInt { equal_within, distinct };
EqInt eq_int(const Representation& a, const Representation& b, long p);

// -- Compression, series of streams, limits --------------------------------

// Front-loading: with N = tail_modulus(n+1), the result is
// (a(1)+...+a(N), a(N+1), a(N+2), ...). It denotes the same partial
// function and the same integral, and its absolute integrals sum to at
// most norm1(a) + 2^-n: all mass beyond the collapsed prefix was already
// certified below 2^-(n+1).
Representation compress(const Representation& a, long n);

// Sum of a series of streams. outer_tail certifies the outer series:
//     for every p and N >= outer_tail(p):
//         sum_{n > N} ||gamma(n)||_1 <= 2^-p.
// Each gamma(n) is compressed at level n and the rows are flattened
// along the diagonal enumeration; the result g sums sum_n g_gamma(n)
// where that series converges absolutely, and
//     || result - gamma(1) - ... - gamma(N) ||_1
//         <= sum_{n>N} (||gamma(n)||_1 + 2^-n)  -> 0.
Representation lebesgue_sum(std::function<Representation(long)> gamma, Modulus outer_tail);

// Limit of a Cauchy sequence: cauchy_modulus (strictly increasing)
// certifies ||gamma(n) - gamma(m)||_1 <= 2^-p for n, m >= M(p). The
// limit is the series sum of the increment stream gamma(M(1)),
// gamma(M(2)) - gamma(M(1)), ...; the returned modulus certifies
//     ||limit - gamma(m)||_1 <= 2^-p  for m >= modulus(p).
// The input modulus is spot-checked at the coarsest precision; a
// detected violation throws std::invalid_argument.
struct CauchyLimit {
    Representation limit;
    Modulus modulus;
};
CauchyLimit limit_of_cauchy(std::function<Representation(long)> gamma, Modulus cauchy_modulus);

// -- Checker ---------------------------------------------------------------

// The pre-integration axioms for the stream space over a finite base
// space, plus the supporting lemmas: pointwise and integral identities
// of the stream operations, the series witness property, the embedded
// unit, both truncation limits, the norm axioms, the integral bounds
// |integral| <= norm and nonnegativity/monotonicity, compression
// soundness, partial-sum convergence, density of the embedded simple
// functions, and the lebesgue-sum and Cauchy-limit contracts on small
// concrete streams. Entries are exact where finite support permits and
// precision-bounded (at config.precision) elsewhere.
Report check_pis_completion(const SpacePtr& space, const CheckConfig& config = {});

}  // namespace exm
