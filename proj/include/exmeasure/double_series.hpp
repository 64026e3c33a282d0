#pragma once

/**
 * @file double_series.hpp
 * Rearranging an absolutely convergent double series x_{n,k} into a
 * single series along the Cantor diagonal enumeration, with an explicit
 * convergence modulus for the flattened partial sums -- and the converse
 * reconstruction of row sums from a flattened series.
 *
 * Everything here is certificate-in, certificate-out: the caller hands
 * over row and outer moduli (for the signed series and for the series of
 * absolute values), and gets back a modulus for the flat enumeration.
 * The constructions mirror the inequalities they were proved with; in
 * particular the flat modulus routes through m_phi, the position bound
 * for the N x N initial block of the enumeration.
 */

#include "exmeasure/modulated_real.hpp"
#include "exmeasure/report.hpp"

#include <functional>
#include <vector>

namespace exm {

struct DoubleSeq {
    /// x_{n,k}, both indices >= 1.
    std::function<ModulatedReal(long, long)> entry;
    /// (n,p) -> K: |sum_{k<=K'} x_{n,k} - row_n| <= 2^-p for all K' >= K.
    std::function<long(long, long)> row_modulus;
    /// |sum_{n<=N} row_n - total| <= 2^-p for all N >= outer_modulus(p).
    Modulus outer_modulus;
    /// The same two certificates for the series of |x_{n,k}|.
    std::function<long(long, long)> abs_row_modulus;
    Modulus abs_outer_modulus;
};

struct FlatSeries {
    /// y_m = x at the m-th position of the diagonal enumeration (m >= 1).
    std::function<ModulatedReal(long)> term;
    /// |sum_{m<=N} y_m - total| <= 2^-p for all N >= modulus(p).
    Modulus modulus;
    /// Same for sum_{m<=N} |y_m|; doubles as an absolute-tail certificate.
    Modulus abs_modulus;
};

/// Flatten a double series. With nonnegative=true the entries must be
/// >= 0 and the leaner nonnegative-case modulus is produced; otherwise
/// the signed-case modulus is built, which first constructs the absolute
/// flat modulus from the abs certificates and replaces the outer modulus
/// by the pointwise max of the two ("the outer modulus may be assumed to
/// dominate the absolute one" step, made explicit).
FlatSeries rearrange_double(const DoubleSeq& d, bool nonnegative);

struct UnflattenResult {
    /// n -> sum_k y at position (n,k); a real with a sound modulus.
    std::function<ModulatedReal(long)> row_sum;
    ModulatedReal flat_sum;    ///< sum_m y_m
    ModulatedReal double_sum;  ///< sum_n row_sum(n)
    Report report;             ///< flat_sum = double_sum at each precision
};

/// Converse direction: given a flat series with an absolute-convergence
/// modulus (|sum_{m<=N} |y_m| - L| <= 2^-p for N >= abs_modulus(p)),
/// rebuild the rows through the enumeration and check that summing rows
/// agrees with summing the flat series, at each requested precision.
/// Row tails inherit the flat certificate because position (n,k) is >= k
/// and >= n in the enumeration.
UnflattenResult unflatten_check(std::function<ModulatedReal(long)> term, Modulus abs_modulus,
                                const std::vector<long>& precisions);

}  // namespace exm
