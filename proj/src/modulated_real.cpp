#include "exmeasure/modulated_real.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace exm {

namespace {

// Smallest s >= 0 with 2^s >= b. Only called with small bounds, so the
// linear scan is irrelevant next to the bignum work it guards.
long pow2_cover(const Rational& b) {
    long s = 0;
    while (Rational::pow2(s) < b) ++s;
    return s;
}

}  // namespace

Modulus strictify(Modulus raw, long lo) {
    struct State {
        std::mutex mu;
        Modulus raw;
        long lo;
        std::vector<long> cache;  // cache[p] = lifted value at precision p
    };
    auto st = std::make_shared<State>();
    st->raw = std::move(raw);
    st->lo = lo;
    return [st](long p) -> long {
        if (p < 0) throw std::invalid_argument("modulus: negative precision");
        std::lock_guard<std::mutex> lock(st->mu);
        while (static_cast<long>(st->cache.size()) <= p) {
            const long i = static_cast<long>(st->cache.size());
            long v = st->raw(i);
            const long floor_v = i == 0 ? st->lo : st->cache.back() + 1;
            st->cache.push_back(v > floor_v ? v : floor_v);
        }
        return st->cache[p];
    };
}

ModulatedReal::ModulatedReal(Approx approx, Modulus modulus, std::optional<Rational> exact)
    : approx_(std::move(approx)), modulus_(std::move(modulus)), exact_(std::move(exact)) {
    if (!approx_ || !modulus_) throw std::invalid_argument("ModulatedReal: empty function");
    // Spot-check the strict-increase invariant; a full check is impossible
    // and these few adjacent pairs catch every off-by-one we ever produced.
    if (modulus_(0) < 1) throw std::invalid_argument("ModulatedReal: modulus must map into indices >= 1");
    for (long p : {0L, 1L, 2L, 7L, 15L, 31L}) {
        if (modulus_(p) >= modulus_(p + 1))
            throw std::invalid_argument("ModulatedReal: modulus not strictly increasing at p=" + std::to_string(p));
    }
}

long ModulatedReal::modulus(long p) const {
    if (p < 0) throw std::invalid_argument("ModulatedReal: negative precision");
    return modulus_(p);
}

ModulatedReal ModulatedReal::from_rational(Rational q) {
    return ModulatedReal([q](long) { return q; },
                         [](long p) { return p + 1; },
                         q);
}

ModulatedReal add(const ModulatedReal& x, const ModulatedReal& y) {
    std::optional<Rational> e;
    if (x.exact() && y.exact()) e = *x.exact() + *y.exact();
    return ModulatedReal(
        [x, y](long n) { return x.approx(n) + y.approx(n); },
        // |(a_n+b_n)-(a_m+b_m)| <= 2^-(p+1) + 2^-(p+1)
        [x, y](long p) { return std::max(x.modulus(p + 1), y.modulus(p + 1)); },
        std::move(e));
}

ModulatedReal neg(const ModulatedReal& x) {
    std::optional<Rational> e;
    if (x.exact()) e = -*x.exact();
    return ModulatedReal([x](long n) { return -x.approx(n); },
                         [x](long p) { return x.modulus(p); },
                         std::move(e));
}

ModulatedReal sub(const ModulatedReal& x, const ModulatedReal& y) { return add(x, neg(y)); }

ModulatedReal mul(const ModulatedReal& x, const ModulatedReal& y) {
    // |a_n| <= |a_{M(0)}| + 1 for every n >= M(0); product indices below
    // never drop under M(0), so these bounds hold wherever they are used.
    const Rational bx = approx_to(x, 0).abs() + Rational(1);
    const Rational by = approx_to(y, 0).abs() + Rational(1);
    const long sx = pow2_cover(bx);  // 2^sx >= sup |a_n|
    const long sy = pow2_cover(by);
    std::optional<Rational> e;
    if (x.exact() && y.exact()) e = *x.exact() * *y.exact();
    return ModulatedReal(
        [x, y](long n) { return x.approx(n) * y.approx(n); },
        // |a_n b_n - a_m b_m| <= Bx |b_n-b_m| + By |a_n-a_m|; give each
        // factor's increment precision p+1 plus the other's magnitude bits.
        [x, y, sx, sy](long p) { return std::max(x.modulus(p + 1 + sy), y.modulus(p + 1 + sx)); },
        std::move(e));
}

ModulatedReal abs(const ModulatedReal& x) {
    std::optional<Rational> e;
    if (x.exact()) e = x.exact()->abs();
    return ModulatedReal([x](long n) { return x.approx(n).abs(); },
                         [x](long p) { return x.modulus(p); },
                         std::move(e));
}

ModulatedReal min(const ModulatedReal& x, const ModulatedReal& y) {
    std::optional<Rational> e;
    if (x.exact() && y.exact()) e = exm::min(*x.exact(), *y.exact());
    return ModulatedReal(
        [x, y](long n) { return exm::min(x.approx(n), y.approx(n)); },
        // |min(a,b)-min(a',b')| <= max(|a-a'|, |b-b'|), no precision loss
        [x, y](long p) { return std::max(x.modulus(p), y.modulus(p)); },
        std::move(e));
}

ModulatedReal max(const ModulatedReal& x, const ModulatedReal& y) {
    std::optional<Rational> e;
    if (x.exact() && y.exact()) e = exm::max(*x.exact(), *y.exact());
    return ModulatedReal(
        [x, y](long n) { return exm::max(x.approx(n), y.approx(n)); },
        [x, y](long p) { return std::max(x.modulus(p), y.modulus(p)); },
        std::move(e));
}

Rational approx_to(const ModulatedReal& x, long p) { return x.approx(x.modulus(p)); }

Cmp compare_at(const ModulatedReal& x, const ModulatedReal& y, long p) {
    if (p < 0) throw std::invalid_argument("compare_at: negative precision");
    const Rational qx = approx_to(x, p + 2);
    const Rational qy = approx_to(y, p + 2);
    const Rational gap = Rational::pow2(-(p + 1));
    const Rational diff = qx - qy;
    // |qx - x|, |qy - y| <= 2^-(p+2); a gap over 2^-(p+1) survives both.
    if (diff > gap) return Cmp::greater;
    if (-diff > gap) return Cmp::less;
    return Cmp::within;
}

bool eq_at(const ModulatedReal& x, const ModulatedReal& y, long p) {
    if (p < 0) throw std::invalid_argument("eq_at: negative precision");
    return (approx_to(x, p + 1) - approx_to(y, p + 1)).abs() <= Rational::pow2(-p);
}

ModulatedReal sum_series(std::function<ModulatedReal(long)> term, Modulus abs_tail) {
    if (!term || !abs_tail) throw std::invalid_argument("sum_series: empty function");

    // Streams can run long, so the cache keeps one rolling exact prefix
    // (value only), never a vector of materialised terms. Inexact terms
    // fall back to a per-call sweep with a small memo of the terms seen.
    struct State {
        std::mutex mu;
        std::function<ModulatedReal(long)> term;
        long done = 0;    // terms 1..done folded into sum (exact path)
        Rational sum{0};  // exact partial sum S_done
        bool all_exact = true;
        std::map<long, ModulatedReal> inexact;  // generic-path term memo

        const ModulatedReal& at(long k) {
            auto it = inexact.find(k);
            if (it == inexact.end()) it = inexact.emplace(k, term(k)).first;
            return it->second;
        }
    };
    auto st = std::make_shared<State>();
    st->term = std::move(term);
    const Modulus tail = strictify(std::move(abs_tail), 0);

    // approx(m) sums the first tail(m) terms. With exact terms that is the
    // exact partial sum S_N, |S_N - sum| <= 2^-m by the certificate. With
    // inexact terms each gets 2^-(m+k+1), another 2^-(m+1) in total.
    // Either way |approx(m) - sum| < 2^-(m-1), so p -> p+2 is a modulus.
    Approx ap = [st, tail](long m) -> Rational {
        const long n = tail(m);
        std::lock_guard<std::mutex> lock(st->mu);
        while (st->all_exact && st->done < n) {
            const ModulatedReal t = st->term(st->done + 1);
            if (t.exact()) {
                st->sum += *t.exact();
                ++st->done;
            } else {
                st->all_exact = false;
            }
        }
        if (st->all_exact) {
            if (st->done == n) return st->sum;
            Rational s(0);  // rare: asked below an already-folded prefix
            for (long k = 1; k <= n; ++k) s += *st->term(k).exact();
            return s;
        }
        Rational s(0);
        for (long k = 1; k <= n; ++k) s += approx_to(st->at(k), m + k + 1);
        return s;
    };
    return ModulatedReal(std::move(ap), [](long p) { return p + 2; });
}

}  // namespace exm
