#include "doctest.h"
#include "exmeasure/double_series.hpp"
#include "exmeasure/pairing.hpp"

#include <vector>

using namespace exm;

namespace {

// --- Oracles -------------------------------------------------------------
// Brute-force block sums computed before anything below touches the
// library's moduli; the expected totals (1 and -1/3) are pinned by these.

Rational brute_block(long size, bool signed_version) {
    Rational s(0);
    for (long n = 1; n <= size; ++n)
        for (long k = 1; k <= size; ++k) {
            Rational t = Rational::pow2(-(n + k));
            s += (signed_version && k % 2 == 1) ? -t : t;
        }
    return s;
}

// x_{n,k} = 2^-(n+k): rows sum to 2^-n, total 1.
DoubleSeq geometric_double() {
    return {
        [](long n, long k) { return ModulatedReal::from_rational(Rational::pow2(-(n + k))); },
        [](long, long p) { return p; },  // row tail after K is 2^-(n+K) <= 2^-(1+K)
        [](long p) { return p; },        // outer tail after N is exactly 2^-N
        [](long, long p) { return p; },
        [](long p) { return p; },
    };
}

// x_{n,k} = (-1)^k 2^-(n+k): rows sum to -2^-n/3, total -1/3.
DoubleSeq alternating_double() {
    return {
        [](long n, long k) {
            Rational t = Rational::pow2(-(n + k));
            return ModulatedReal::from_rational(k % 2 == 1 ? -t : t);
        },
        [](long, long p) { return p; },  // |row tail after K| <= 2^-(n+K)
        [](long p) { return p; },        // |outer tail after N| = 2^-N/3
        [](long, long p) { return p; },  // absolute version is the geometric one
        [](long p) { return p; },
    };
}

Rational flat_partial(const FlatSeries& f, long count) {
    Rational s(0);
    for (long m = 1; m <= count; ++m) {
        const auto e = f.term(m).exact();
        REQUIRE(e.has_value());  // these examples have rational entries
        s += *e;
    }
    return s;
}

}  // namespace

TEST_SUITE("double_series") {

TEST_CASE("oracle: block sums pin the two example totals") {
    CHECK((brute_block(64, false) - Rational(1)).abs() <= Rational::pow2(-62));
    CHECK((brute_block(64, true) + Rational(1, 3)).abs() <= Rational::pow2(-62));
}

TEST_CASE("nonnegative flattening converges at the constructed modulus") {
    const FlatSeries f = rearrange_double(geometric_double(), true);
    // spot-check the enumeration wiring: y_7 = x_{4,1} = 2^-5
    CHECK(*f.term(7).exact() == Rational::pow2(-5));
    CHECK(*f.term(3).exact() == Rational::pow2(-3));  // (1,2)

    for (long p = 0; p <= 12; p += 3) {
        const long n = f.modulus(p);
        CHECK((flat_partial(f, n) - Rational(1)).abs() <= Rational::pow2(-p));
        // partial sums are monotone here, so a few later cutoffs must stay inside too
        CHECK((flat_partial(f, n + 13) - Rational(1)).abs() <= Rational::pow2(-p));
    }
}

TEST_CASE("signed flattening converges at the shifted modulus") {
    const FlatSeries f = rearrange_double(alternating_double(), false);
    CHECK(*f.term(7).exact() == -Rational::pow2(-5));  // (4,1): k odd
    for (long p = 0; p <= 4; ++p) {
        const long n = f.modulus(p);
        CAPTURE(p);
        CAPTURE(n);
        CHECK((flat_partial(f, n) + Rational(1, 3)).abs() <= Rational::pow2(-p));
    }
    // the absolute-value certificate it constructed is sound as well
    for (long p = 0; p <= 8; p += 2) {
        Rational s(0);
        for (long m = 1; m <= f.abs_modulus(p); ++m) s += f.term(m).exact()->abs();
        CHECK((s - Rational(1)).abs() <= Rational::pow2(-p));
    }
}

TEST_CASE("unflatten rebuilds rows of a flat geometric series") {
    // y_m = 2^-m; tail after N is 2^-N, total 1. Rows through the diagonal
    // enumeration are x_{n,k} = 2^-pair1(n,k).
    auto term = [](long m) { return ModulatedReal::from_rational(Rational::pow2(-m)); };
    const auto r = unflatten_check(term, [](long p) { return p; }, {4, 8, 12});
    CHECK(r.report.ok());
    CHECK(eq_at(r.flat_sum, ModulatedReal::from_rational(Rational(1)), 20));

    for (long n = 1; n <= 5; ++n) {
        // direct evaluation with a generous cutoff; the dropped tail is
        // below 2^-60 since positions only grow along a row
        Rational direct(0);
        for (long k = 1; k <= 60; ++k) direct += Rational::pow2(-pair1(n, k));
        const Rational lib = approx_to(r.row_sum(n), 12);
        CHECK((lib - direct).abs() <= Rational::pow2(-12) + Rational::pow2(-55));
    }
}

TEST_CASE("unflatten agrees for a signed flat series") {
    auto term = [](long m) {
        Rational t = Rational::pow2(-m);
        return ModulatedReal::from_rational(m % 2 == 1 ? -t : t);
    };
    const auto r = unflatten_check(term, [](long p) { return p; }, {4, 8, 10});
    CHECK(r.report.ok());
    CHECK(eq_at(r.flat_sum, ModulatedReal::from_rational(Rational(-1, 3)), 20));
    CHECK(eq_at(r.double_sum, ModulatedReal::from_rational(Rational(-1, 3)), 12));
}

TEST_CASE("flatten then unflatten returns the original rows") {
    const FlatSeries f = rearrange_double(geometric_double(), true);
    const auto r = unflatten_check(f.term, f.abs_modulus, {6, 10});
    CHECK(r.report.ok());
    for (long n = 1; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(eq_at(r.row_sum(n), ModulatedReal::from_rational(Rational::pow2(-n)), 10));
    }
}

TEST_CASE("incomplete input is rejected") {
    DoubleSeq d;  // all functions empty
    CHECK_THROWS_AS(rearrange_double(d, true), std::invalid_argument);
    CHECK_THROWS_AS(unflatten_check(nullptr, [](long p) { return p; }, {1}), std::invalid_argument);
}

}  // TEST_SUITE
