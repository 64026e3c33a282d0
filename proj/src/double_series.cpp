#include "exmeasure/double_series.hpp"

#include "exmeasure/pairing.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace exm {

namespace {

// Nonnegative-case flat modulus:
//   p |-> m_phi( max( M(p+1), max_{n <= M(p+1)} M_n(M(p+1)+p+1) ) ).
// The first M(p+1) rows each truncated at precision M(p+1)+p+1 leave a
// total row error below 2^-(p+1) (there are at most 2^{M(p+1)} of them),
// the outer truncation another 2^-(p+1), and m_phi converts the block
// bound into a position bound.
Modulus flat_modulus_nonneg(std::function<long(long, long)> row_mod, Modulus outer_mod, long shift) {
    return strictify([row_mod = std::move(row_mod), outer_mod = std::move(outer_mod), shift](long p) {
        const long n0 = outer_mod(p + shift);
        long k = n0;
        for (long n = 1; n <= n0; ++n) k = std::max(k, row_mod(n, n0 + p + shift));
        return m_phi(k);
    });
}

}  // namespace

FlatSeries rearrange_double(const DoubleSeq& d, bool nonnegative) {
    if (!d.entry || !d.row_modulus || !d.outer_modulus || !d.abs_row_modulus || !d.abs_outer_modulus)
        throw std::invalid_argument("rearrange_double: incomplete double sequence");

    auto entry = d.entry;
    std::function<ModulatedReal(long)> term = [entry](long m) {
        const auto [n, k] = unpair1(m);
        return entry(n, k);
    };

    // Flat modulus for the absolute values; in the nonnegative case the
    // two series coincide.
    Modulus abs_flat = flat_modulus_nonneg(d.abs_row_modulus, d.abs_outer_modulus, 1);
    if (nonnegative)
        return {std::move(term), abs_flat, abs_flat};

    // Signed case: the same shape one precision deeper, with the outer
    // modulus lifted to dominate the absolute flat modulus.
    Modulus outer = d.outer_modulus;
    Modulus outer_eff = strictify([outer, abs_flat](long p) { return std::max(outer(p), abs_flat(p)); });
    Modulus flat = flat_modulus_nonneg(d.row_modulus, outer_eff, 2);
    return {std::move(term), std::move(flat), std::move(abs_flat)};
}

UnflattenResult unflatten_check(std::function<ModulatedReal(long)> term, Modulus abs_modulus,
                                const std::vector<long>& precisions) {
    if (!term || !abs_modulus) throw std::invalid_argument("unflatten_check: empty function");
    Modulus tail = strictify(std::move(abs_modulus), 0);

    // Row and outer tails can be far sharper than the flat certificate
    // itself: position (n,k) is T(n+k-2)+k with T the triangular numbers,
    // so every entry of row n past column K, and every entry of any row
    // past row N, sits at a position > K^2/2 (resp. > N^2/2). Cutting at
    // ceil(sqrt(2*tail(p))) therefore drops only entries beyond the flat
    // certificate's own cutoff, whose absolute sum is at most 2^-p. This
    // keeps nested evaluation depth near sqrt of the flat depth.
    Modulus sharp = strictify([tail](long p) {
        const mpz_class v = mpz_class(tail(p)) * 2;
        mpz_class r = sqrt(v);
        if (r * r < v) r += 1;
        return static_cast<long>(r.get_si());
    }, 0);

    auto row_sum = [term, sharp](long n) {
        return sum_series([term, n](long k) { return term(pair1(n, k)); }, sharp);
    };
    ModulatedReal double_sum = sum_series(row_sum, sharp);
    ModulatedReal flat_sum = sum_series(term, tail);

    Report rep;
    rep.suite = "unflatten";
    for (long p : precisions) {
        if (eq_at(flat_sum, double_sum, p))
            rep.add_pass("rows-equal-flat@p=" + std::to_string(p));
        else
            rep.add_fail("rows-equal-flat@p=" + std::to_string(p),
                         "summing by rows disagrees with the flat sum",
                         {{"flat", approx_to(flat_sum, p + 1).str()},
                          {"by-rows", approx_to(double_sum, p + 1).str()}});
    }
    return {std::move(row_sum), std::move(flat_sum), std::move(double_sum), std::move(rep)};
}

}  // namespace exm
