/**
 * @file completion.cpp
 * Certified streams of simple functions and their calculus.
 *
 * The recurring pattern: every constructor states, in a comment, the
 * inequality its tail modulus realizes, and the modulus code is a direct
 * transcription of that inequality. Prefix sums of streams are cached
 * and kept in a normal form (like terms merged, removable zero terms
 * dropped) that preserves the denoted partial function exactly; without
 * that, the telescoping streams would accumulate term lists linear in
 * the prefix length and the disjoint-representation machinery behind
 * |.| and /\1 would blow up exponentially.
 */

#include "exmeasure/completion.hpp"

#include "exmeasure/pairing.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exm {

namespace {

void require_stream(const Representation& a, const char* who) {
    if (!a.space || !a.term || !a.tail_modulus)
        throw std::invalid_argument(std::string(who) + ": incomplete stream");
}

void require_same_space(const Representation& a, const Representation& b, const char* who) {
    if (a.space != b.space)
        throw std::invalid_argument(std::string(who) + ": streams live over different spaces");
}

long require_hint(const Representation& a, const char* who) {
    require_stream(a, who);
    if (!a.support_hint)
        throw std::invalid_argument(std::string(who) + ": needs a finite-support stream");
    return *a.support_hint;
}

SimpleFunction zero_fn(const SpacePtr& sp) { return SimpleFunction(sp, {}); }

// Smallest e >= 0 with 2^e >= q.
long ceil_log2(const Rational& q) {
    long e = 0;
    Rational power(1);
    while (power < q) {
        power = power * Rational(2);
        ++e;
    }
    return e;
}

// Merge terms sharing an index and drop zero-coefficient terms whose
// domain constraint is implied by the kept ones. Neither step changes
// the denoted (domain, values) pair: merged terms sum their coefficients
// on the same characteristic function, and a dropped term contributes no
// value while its domain already contains the remaining intersection.
SimpleFunction normalize_terms(const SimpleFunction& v) {
    const auto& sp = *v.space();
    std::vector<SimpleTerm> merged;
    for (const auto& t : v.terms()) {
        bool found = false;
        for (auto& m : merged)
            if (m.index == t.index) {
                m.coeff += t.coeff;
                found = true;
                break;
            }
        if (!found) merged.push_back(t);
    }
    std::vector<SimpleTerm> kept;
    Mask dom = v.space()->ground()->full();
    for (const auto& t : merged)
        if (!t.coeff.is_zero()) {
            dom &= sp.family(t.index).domain();
            kept.push_back(t);
        }
    // A zero term is needed exactly when its domain still cuts something
    // away; since the running intersection only shrinks, one pass settles
    // every term for good and the final domain equals the input's.
    for (const auto& t : merged)
        if (t.coeff.is_zero() && (dom & ~sp.family(t.index).domain()) != 0) {
            dom &= sp.family(t.index).domain();
            kept.push_back(t);
        }
    return SimpleFunction(v.space(), std::move(kept));
}

// Normalized a(from) + ... + a(to); the zero function for an empty range.
SimpleFunction fold_sum(const Representation& a, long from, long to) {
    SimpleFunction acc = zero_fn(a.space);
    for (long n = from; n <= to; ++n) acc = normalize_terms(add(acc, a.term(n)));
    return acc;
}

// Thread-safe cache of normalized prefix sums; sums[n] = a(1)+...+a(n).
struct PrefixCache {
    std::mutex mutex;
    std::vector<SimpleFunction> sums;
};

SimpleFunction prefix_sum(const std::shared_ptr<PrefixCache>& cache, const Representation& a,
                          long n) {
    std::lock_guard<std::mutex> lock(cache->mutex);
    if (cache->sums.empty()) cache->sums.push_back(zero_fn(a.space));
    while (static_cast<long>(cache->sums.size()) <= n) {
        const long next = static_cast<long>(cache->sums.size());
        cache->sums.push_back(normalize_terms(add(cache->sums.back(), a.term(next))));
    }
    return cache->sums[static_cast<std::size_t>(n)];
}

// The shared triple pattern behind |.| and /\1: blocks
//     (shape(s_n) - shape(s_{n-1}),  a(n),  -a(n))
// whose increments telescope to shape(s_n) while the pair cancels. Both
// shapes are 1-Lipschitz pointwise (reverse triangle inequality for |.|,
// min with a constant for /\1), so the increment's absolute integral is
// at most integral(|a(n)|) and a block weighs at most 3 integral(|a(n)|).
// Cutting after block tail_a(p+2)+1 therefore leaves at most
// 3 * 2^-(p+2) < 2^-p, which is the modulus p -> 3*tail_a(p+2) + 3.
Representation telescoped(const Representation& a,
                          const std::function<SimpleFunction(const SimpleFunction&)>& shape,
                          const char* who) {
    require_stream(a, who);
    auto cache = std::make_shared<PrefixCache>();
    const Representation base = a;
    auto term = [base, cache, shape](long m) {
        if (m < 1) throw std::out_of_range("stream index must be >= 1");
        const long n = (m + 2) / 3;
        switch ((m - 1) % 3) {
            case 1:
                return base.term(n);
            case 2:
                return scalar_mul(Rational(-1), base.term(n));
            default: {
                const SimpleFunction sn = prefix_sum(cache, base, n);
                const SimpleFunction sp = prefix_sum(cache, base, n - 1);
                return normalize_terms(add(shape(sn), scalar_mul(Rational(-1), shape(sp))));
            }
        }
    };
    Modulus tail = [base](long p) { return 3 * base.tail_modulus(p + 2) + 3; };
    std::optional<long> hint;
    if (base.support_hint) hint = 3 * *base.support_hint;
    return Representation{base.space, std::move(term), std::move(tail), hint};
}

}  // namespace

Representation rep_from_terms(SpacePtr space, std::vector<SimpleFunction> terms) {
    if (!space) throw std::invalid_argument("rep_from_terms: null space");
    for (const auto& t : terms)
        if (t.space() != space)
            throw std::invalid_argument("rep_from_terms: term over a different space");
    auto held = std::make_shared<const std::vector<SimpleFunction>>(std::move(terms));
    const long count = static_cast<long>(held->size());
    auto term = [space, held, count](long n) {
        if (n < 1) throw std::out_of_range("stream index must be >= 1");
        if (n <= count) return (*held)[static_cast<std::size_t>(n - 1)];
        return zero_fn(space);
    };
    // All mass sits in the listed prefix; every tail past it is exactly
    // zero, so the certificate only needs to clear the listed positions.
    Modulus tail = [count](long p) { return std::max<long>(count, 1) + p; };
    return Representation{std::move(space), std::move(term), std::move(tail), count};
}

Representation rep_geometric(const SimpleFunction& base, const Rational& ratio) {
    const SpacePtr space = base.space();
    const Rational r = ratio.abs();
    if (!(r < Rational(1)))
        throw std::invalid_argument("rep_geometric: |ratio| must be < 1");
    struct Powers {
        std::mutex mutex;
        std::vector<Rational> pw{Rational(1)};
    };
    auto powers = std::make_shared<Powers>();
    const SimpleFunction held = base;
    const Rational q = ratio;
    auto term = [held, q, powers](long n) {
        if (n < 1) throw std::out_of_range("stream index must be >= 1");
        std::lock_guard<std::mutex> lock(powers->mutex);
        while (static_cast<long>(powers->pw.size()) <= n) powers->pw.push_back(powers->pw.back() * q);
        return scalar_mul(powers->pw[static_cast<std::size_t>(n)], held);
    };
    // sum_{n>N} |ratio|^n integral(|base|) = C |ratio|^(N+1) with
    // C = integral(|base|) / (1 - |ratio|); walk N up until the bound
    // drops to 2^-p.
    const Rational weight = integral(abs_sf(base));
    const Rational c = weight / (Rational(1) - r);
    Modulus tail = strictify([c, r](long p) {
        const Rational target = Rational::pow2(-p);
        long n = 0;
        Rational value = c * r;
        while (value > target) {
            value = value * r;
            ++n;
        }
        return std::max<long>(n, 1);
    });
    std::optional<long> hint;
    if (ratio.is_zero()) hint = 1;
    return Representation{space, std::move(term), std::move(tail), hint};
}

Representation embed(const SimpleFunction& v) {
    const SpacePtr space = v.space();
    const SimpleFunction held = v;
    auto term = [held](long n) {
        if (n < 1) throw std::out_of_range("stream index must be >= 1");
        return n == 1 ? held : scalar_mul(Rational(0), held);
    };
    Modulus tail = [](long p) { return p + 1; };
    return Representation{space, std::move(term), std::move(tail), 1};
}

Representation rep_add(const Representation& a, const Representation& b) {
    require_stream(a, "rep_add");
    require_stream(b, "rep_add");
    require_same_space(a, b, "rep_add");
    const Representation left = a, right = b;
    auto term = [left, right](long m) {
        if (m < 1) throw std::out_of_range("stream index must be >= 1");
        return (m % 2 == 1) ? left.term((m + 1) / 2) : right.term(m / 2);
    };
    // Positions past 2*max cover only entries of index > max in either
    // stream, each certified below 2^-(p+1).
    Modulus tail = [left, right](long p) {
        return 2 * std::max(left.tail_modulus(p + 1), right.tail_modulus(p + 1));
    };
    std::optional<long> hint;
    if (left.support_hint && right.support_hint)
        hint = 2 * std::max(*left.support_hint, *right.support_hint);
    return Representation{a.space, std::move(term), std::move(tail), hint};
}

Representation rep_scale(const Rational& c, const Representation& a) {
    require_stream(a, "rep_scale");
    const Representation base = a;
    const Rational factor = c;
    auto term = [base, factor](long n) { return scalar_mul(factor, base.term(n)); };
    // |c| <= 2^s turns the certificate at p+s into one at p.
    const long s = c.is_zero() ? 0 : ceil_log2(c.abs());
    Modulus tail = [base, s](long p) { return base.tail_modulus(p + s); };
    return Representation{a.space, std::move(term), std::move(tail), a.support_hint};
}

Representation rep_abs(const Representation& a) {
    return telescoped(a, [](const SimpleFunction& s) { return abs_sf(s); }, "rep_abs");
}

Representation rep_meet_one(const Representation& a) {
    return telescoped(a, [](const SimpleFunction& s) { return meet_one(s); }, "rep_meet_one");
}

ModulatedReal integral_rep(const Representation& a) {
    require_stream(a, "integral_rep");
    if (a.support_hint) return ModulatedReal::from_rational(integral_exact(a));
    const Representation base = a;
    // |integral(a(n))| <= integral(|a(n)|), so the absolute-integral tail
    // certificate admits the series of exact term integrals directly.
    return sum_series(
        [base](long n) { return ModulatedReal::from_rational(integral(base.term(n))); },
        base.tail_modulus);
}

Rational integral_exact(const Representation& a) {
    const long hint = require_hint(a, "integral_exact");
    Rational total(0);
    for (long n = 1; n <= hint; ++n) total += integral(a.term(n));
    return total;
}

Mask rep_domain(const Representation& a) {
    const long hint = require_hint(a, "rep_domain");
    Mask dom = a.space->ground()->full();
    for (long n = 1; n <= hint; ++n) dom &= a.term(n).domain();
    return dom;
}

Rational eval_exact(const Representation& a, std::size_t x) {
    const long hint = require_hint(a, "eval_exact");
    if (x >= a.space->ground()->size())
        throw std::out_of_range("eval_exact: no such ground element");
    if ((rep_domain(a) >> x & 1) == 0)
        throw std::out_of_range("eval_exact: point outside the stream's domain");
    Rational total(0);
    for (long n = 1; n <= hint; ++n) total += eval(a.term(n), x);
    return total;
}

ModulatedReal eval_rep(const Representation& a, std::size_t x) {
    require_hint(a, "eval_rep");
    return ModulatedReal::from_rational(eval_exact(a, x));
}

ModulatedReal eval_rep(const Representation& a, std::size_t x, Modulus pointwise_tail) {
    require_stream(a, "eval_rep");
    if (x >= a.space->ground()->size())
        throw std::out_of_range("eval_rep: no such ground element");
    const Representation base = a;
    return sum_series(
        [base, x](long n) { return ModulatedReal::from_rational(eval(base.term(n), x)); },
        std::move(pointwise_tail));
}

ModulatedReal norm1(const Representation& a) {
    require_stream(a, "norm1");
    if (a.support_hint) return ModulatedReal::from_rational(norm1_exact(a));
    const ModulatedReal raw = integral_rep(rep_abs(a));
    // The limit is a limit of integrals of absolute values, hence >= 0;
    // clamping the approximants at zero shrinks no distance and makes
    // every reported approximation nonnegative too.
    return ModulatedReal([raw](long n) { return max(raw.approx(n), Rational(0)); },
                         [raw](long p) { return raw.modulus(p); });
}

Rational norm1_exact(const Representation& a) {
    require_hint(a, "norm1_exact");
    return integral_exact(rep_abs(a));
}

NormedClass with_norm(Representation a) {
    require_stream(a, "with_norm");
    ModulatedReal cached = norm1(a);
    return NormedClass{std::move(a), std::move(cached)};
}

EqInt eq_int(const Representation& a, const Representation& b, long p) {
    require_same_space(a, b, "eq_int");
    if (p < 0) throw std::invalid_argument("eq_int: negative precision");
    const Representation diff = rep_add(a, rep_scale(Rational(-1), b));
    if (diff.support_hint)
        return norm1_exact(diff).is_zero() ? EqInt::equal_within : EqInt::distinct;
    // d approximated within 2^-(p+2): above 2^-(p+1) the distance is
    // positive outright, otherwise it is at most 3 * 2^-(p+2) < 2^-p.
    const Rational approx = approx_to(norm1(diff), p + 2);
    return approx > Rational::pow2(-(p + 1)) ? EqInt::distinct : EqInt::equal_within;
}

Representation compress(const Representation& a, long n) {
    require_stream(a, "compress");
    if (n < 0) throw std::invalid_argument("compress: negative level");
    const long cut = a.tail_modulus(n + 1);
    const SimpleFunction head = fold_sum(a, 1, cut);
    const Representation base = a;
    auto term = [base, head, cut](long k) {
        if (k < 1) throw std::out_of_range("stream index must be >= 1");
        return k == 1 ? head : base.term(cut + k - 1);
    };
    // The surviving tail entries are the originals shifted down by cut-1.
    Modulus tail = [base, cut](long p) {
        return std::max(p + 1, base.tail_modulus(p) - cut + 1);
    };
    std::optional<long> hint;
    if (base.support_hint) hint = *base.support_hint <= cut ? 1 : *base.support_hint - cut + 1;
    return Representation{a.space, std::move(term), std::move(tail), hint};
}

Representation lebesgue_sum(std::function<Representation(long)> gamma, Modulus outer_tail) {
    if (!gamma || !outer_tail) throw std::invalid_argument("lebesgue_sum: incomplete input");
    struct Rows {
        std::function<Representation(long)> gamma;
        std::mutex mutex;
        std::map<long, Representation> betas;
        Representation row(long n) {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = betas.find(n);
            if (it == betas.end())
                it = betas.emplace(n, compress(gamma(n), n)).first;
            return it->second;
        }
    };
    auto rows = std::make_shared<Rows>();
    rows->gamma = std::move(gamma);
    const Representation first = rows->row(1);
    const SpacePtr space = first.space;
    auto term = [rows, space](long m) {
        if (m < 1) throw std::out_of_range("stream index must be >= 1");
        const auto [r, c] = unpair1(m);
        const Representation row = rows->row(r);
        if (row.space != space)
            throw std::invalid_argument("lebesgue_sum: streams live over different spaces");
        return row.term(c);
    };
    // Entries beyond every position of the block {n <= n0, k <= k_n} have
    // n > n0 or k > k_n. With n0 = max(outer_tail(p+2), p+2) the rows
    // beyond n0 carry at most 2^-(p+2) + 2^-n0 <= 2^-(p+1) (each row n
    // weighs at most ||gamma(n)||_1 + 2^-n after compression), and with
    // k_n the row tail at p+1+ceil(log2 n0) the rows up to n0 contribute
    // at most n0 * 2^-(p+1)/n0; together at most 2^-p.
    const Modulus outer = std::move(outer_tail);
    Modulus tail = strictify([rows, outer](long p) {
        const long rows_cut = std::max(outer(p + 2), p + 2);
        const long inner_p = p + 1 + ceil_log2(Rational(rows_cut));
        long best = 1;
        for (long n = 1; n <= rows_cut; ++n)
            best = std::max(best, static_cast<long>(pair1(n, rows->row(n).tail_modulus(inner_p))));
        return best;
    });
    return Representation{space, std::move(term), std::move(tail), std::nullopt};
}

CauchyLimit limit_of_cauchy(std::function<Representation(long)> gamma, Modulus cauchy_modulus) {
    if (!gamma || !cauchy_modulus) throw std::invalid_argument("limit_of_cauchy: incomplete input");
    if (cauchy_modulus(0) < 1 || cauchy_modulus(1) <= cauchy_modulus(0))
        throw std::invalid_argument("limit_of_cauchy: modulus must be strictly increasing from >= 1");
    struct Points {
        std::function<Representation(long)> gamma;
        std::mutex mutex;
        std::map<long, Representation> at;
        Representation get(long j) {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = at.find(j);
            if (it == at.end()) it = at.emplace(j, gamma(j)).first;
            return it->second;
        }
    };
    auto points = std::make_shared<Points>();
    points->gamma = std::move(gamma);
    const Modulus m = std::move(cauchy_modulus);

    // Spot-check the claimed modulus at the coarsest precision: the norm
    // distance of neighbours past m(0) must not exceed 2^0 = 1.
    {
        const Representation d =
            rep_add(points->get(m(0)), rep_scale(Rational(-1), points->get(m(0) + 1)));
        if (approx_to(norm1(d), 2) > Rational(1) + Rational(1, 4))
            throw std::invalid_argument("limit_of_cauchy: sequence violates its modulus");
    }

    // Increment stream: delta(1) = gamma(m(1)), delta(n) telescopes two
    // consecutive sampled points, so ||delta(n)||_1 <= 2^-(n-1) and the
    // outer series is certified by p -> p+1.
    auto delta = [points, m](long n) -> Representation {
        if (n < 1) throw std::out_of_range("stream index must be >= 1");
        if (n == 1) return points->get(m(1));
        return rep_add(points->get(m(n)), rep_scale(Rational(-1), points->get(m(n - 1))));
    };
    Representation limit = lebesgue_sum(delta, [](long p) { return p + 1; });

    // ||limit - sum_{k<=N} delta(k)||_1 <= sum_{n>N}(2^-(n-1) + 2^-n)
    // < 2^-(N-2), and sum_{k<=N} delta(k) telescopes to gamma(m(N)); with
    // the Cauchy estimate from m(p+1) on, both pieces fit in 2^-(p+1).
    Modulus converged = [m](long p) { return std::max(p + 3, m(p + 1)); };
    return CauchyLimit{std::move(limit), std::move(converged)};
}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

namespace {

using Example = std::vector<std::pair<std::string, std::string>>;

void require_checkable(const SpacePtr& space, const CheckConfig& config) {
    if (!space) throw std::invalid_argument("axiom check: null space");
    if (space->ground()->size() > static_cast<std::size_t>(config.max_ground))
        throw std::invalid_argument("axiom check: ground set larger than the configured bound");
    if (space->index_count() == 0)
        throw std::invalid_argument("axiom check: space has no indices");
}

Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    return Rational(num(rng), den(rng));
}

Index random_index(std::mt19937_64& rng, const PreMeasureSpace& sp) {
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(sp.index_count() - 1));
    return pick(rng);
}

SimpleFunction random_sf(std::mt19937_64& rng, const SpacePtr& sp, int max_terms) {
    std::uniform_int_distribution<int> len(0, max_terms);
    std::vector<SimpleTerm> ts;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) ts.push_back({random_coeff(rng), random_index(rng, *sp)});
    return SimpleFunction(sp, std::move(ts));
}

Representation random_finite_rep(std::mt19937_64& rng, const SpacePtr& sp, int max_entries) {
    std::uniform_int_distribution<int> len(0, max_entries);
    std::vector<SimpleFunction> entries;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) entries.push_back(random_sf(rng, sp, 2));
    return rep_from_terms(sp, std::move(entries));
}

std::string rep_str(const Representation& a) {
    if (!a.support_hint) return "(infinite stream)";
    std::string out = "(";
    for (long n = 1; n <= *a.support_hint; ++n) {
        if (n > 1) out += " | ";
        out += sf_str(a.term(n));
    }
    return out + ")";
}

// Finite-support streams denote the same partial function iff domains
// and values agree.
bool rep_fn_equal(const Representation& a, const Representation& b) {
    const Mask da = rep_domain(a), db = rep_domain(b);
    if (da != db) return false;
    for (std::size_t x = 0; x < a.space->ground()->size(); ++x)
        if (da >> x & 1)
            if (eval_exact(a, x) != eval_exact(b, x)) return false;
    return true;
}

// A simple function with integral exactly 1 (scaled characteristic of a
// positive-measure index); the base space's positivity axiom makes one.
std::optional<SimpleFunction> unit_simple(const SpacePtr& sp) {
    for (Index i = 0; i < sp->index_count(); ++i)
        if (sp->measure(i) > Rational(0))
            return SimpleFunction(sp, {{Rational(1) / sp->measure(i), i}});
    return std::nullopt;
}

Representation partial_sum_of_embeds(const Representation& a, long upto) {
    Representation acc = rep_from_terms(a.space, {});
    for (long n = 1; n <= upto; ++n) acc = rep_add(acc, embed(a.term(n)));
    return acc;
}

}  // namespace

Report check_pis_completion(const SpacePtr& space, const CheckConfig& config) {
    require_checkable(space, config);
    Report rep;
    rep.suite = "pis-completion";
    const auto& sp = *space;
    const std::size_t ground_size = sp.ground()->size();
    std::mt19937_64 rng(config.seed);
    const int n_exact = config.samples;
    const int n_stream = std::max(8, config.samples / 8);

    // --- The embedding: integral, norm and values survive exactly -------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_exact && ok; ++t) {
            const SimpleFunction v = random_sf(rng, space, 3);
            const Representation e = embed(v);
            if (integral_exact(e) != integral(v) || norm1_exact(e) != integral(abs_sf(v)) ||
                rep_domain(e) != v.domain()) {
                ok = false;
                ce = {{"v", sf_str(v)}};
                break;
            }
            for (std::size_t x = 0; x < ground_size; ++x)
                if (v.domain() >> x & 1)
                    if (eval_exact(e, x) != eval(v, x)) {
                        ok = false;
                        ce = {{"v", sf_str(v)}, {"x", sp.ground()->label(x)}};
                        break;
                    }
        }
        if (ok)
            rep.add_sampled("embed-preserves-integral-and-norm", std::to_string(n_exact) + " functions");
        else
            rep.add_fail("embed-preserves-integral-and-norm", "embedding distorted a value", ce);
    }

    // --- The embedding reflects function equality both ways --------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_exact && ok; ++t) {
            const SimpleFunction v = random_sf(rng, space, 3);
            const SimpleFunction w = equivalent_variant(rng, v);
            if (!rep_fn_equal(embed(v), embed(w))) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"w", sf_str(w)}};
                break;
            }
            const SimpleFunction u = random_sf(rng, space, 3);
            if (sf_equal(v, u) != rep_fn_equal(embed(v), embed(u))) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"u", sf_str(u)}};
                break;
            }
        }
        if (ok)
            rep.add_sampled("embedding-injective", std::to_string(n_exact) + " pairs");
        else
            rep.add_fail("embedding-injective", "embedded equality deviates from function equality", ce);
    }

    // --- Stream operations realize the pointwise calculus ----------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            const Representation b = random_finite_rep(rng, space, 3);
            const Rational c = random_coeff(rng);
            const Representation sum = rep_add(a, b);
            const Representation scaled = rep_scale(c, a);
            const Representation absa = rep_abs(a);
            const Representation meota = rep_meet_one(a);
            const Mask da = rep_domain(a), db = rep_domain(b);
            auto fail = [&](const char* what, std::size_t x) {
                ok = false;
                ce = {{"op", what},
                      {"a", rep_str(a)},
                      {"b", rep_str(b)},
                      {"c", c.str()},
                      {"x", sp.ground()->label(x)}};
            };
            if (rep_domain(sum) != (da & db) || rep_domain(scaled) != da ||
                rep_domain(absa) != da || rep_domain(meota) != da) {
                ok = false;
                ce = {{"a", rep_str(a)}, {"b", rep_str(b)}, {"what", "domain mismatch"}};
                break;
            }
            for (std::size_t x = 0; x < ground_size && ok; ++x) {
                if ((da & db) >> x & 1)
                    if (eval_exact(sum, x) != eval_exact(a, x) + eval_exact(b, x)) fail("add", x);
                if (da >> x & 1) {
                    const Rational va = eval_exact(a, x);
                    if (eval_exact(scaled, x) != c * va) fail("scale", x);
                    if (eval_exact(absa, x) != va.abs()) fail("abs", x);
                    if (eval_exact(meota, x) != min(va, Rational(1))) fail("meet-one", x);
                }
            }
        }
        if (ok)
            rep.add_sampled("rep-ops-pointwise", std::to_string(n_stream) + " streams");
        else
            rep.add_fail("rep-ops-pointwise", "stream operation broke a pointwise identity", ce);
    }

    // --- Integral linearity on streams ------------------------------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            const Representation b = random_finite_rep(rng, space, 3);
            const Rational c = random_coeff(rng);
            if (integral_exact(rep_add(a, b)) != integral_exact(a) + integral_exact(b) ||
                integral_exact(rep_scale(c, a)) != c * integral_exact(a)) {
                ok = false;
                ce = {{"a", rep_str(a)}, {"b", rep_str(b)}, {"c", c.str()}};
            }
        }
        if (ok)
            rep.add_sampled("rep-integral-linear", std::to_string(n_stream) + " pairs");
        else
            rep.add_fail("rep-integral-linear", "stream integral is not linear", ce);
    }

    // --- Series witness property (finite shape) ---------------------------
    {
        bool ok = true;
        Example ce;
        int performed = 0;
        for (int t = 0; t < n_stream && ok; ++t) {
            Representation alpha = rep_from_terms(space, {random_sf(rng, space, 2)});
            Rational ia = integral_exact(alpha);
            for (int tries = 0; tries < 64 && !(ia > Rational(0)); ++tries) {
                alpha = rep_from_terms(space, {random_sf(rng, space, 2), random_sf(rng, space, 2)});
                ia = integral_exact(alpha);
            }
            if (!(ia > Rational(0))) continue;
            std::uniform_int_distribution<int> count(1, 3);
            const int k = count(rng);
            std::vector<Representation> gammas;
            Rational total(0);
            for (int j = 0; j < k; ++j) {
                gammas.push_back(rep_from_terms(space, {abs_sf(random_sf(rng, space, 2))}));
                total += integral_exact(gammas.back());
            }
            if (!(total < ia)) {
                // Scale the sequence until its integral sum sits below ia.
                const Rational shrink = ia / ((total + Rational(1)) * Rational(2));
                total = Rational(0);
                for (auto& g : gammas) {
                    g = rep_scale(shrink, g);
                    total += integral_exact(g);
                }
            }
            if (!(total < ia)) continue;
            ++performed;
            Mask common = rep_domain(alpha);
            for (const auto& g : gammas) common &= rep_domain(g);
            bool found = false;
            for (std::size_t x = 0; x < ground_size && !found; ++x) {
                if ((common >> x & 1) == 0) continue;
                Rational lhs(0);
                for (const auto& g : gammas) lhs += eval_exact(g, x);
                if (lhs < eval_exact(alpha, x)) found = true;
            }
            if (!found) {
                ok = false;
                ce = {{"alpha", rep_str(alpha)},
                      {"sum-integrals", total.str()},
                      {"integral-alpha", ia.str()}};
            }
        }
        if (ok)
            rep.add_sampled("pis2-witness-search",
                            std::to_string(performed) + " instances with a dominating point");
        else
            rep.add_fail("pis2-witness-search",
                         "no point witnesses the strict integral inequality", ce);
    }

    // --- Embedded unit ----------------------------------------------------
    {
        const auto unit = unit_simple(space);
        if (unit && integral_exact(embed(*unit)) == Rational(1))
            rep.add_pass("pis3-embedded-unit", "integral 1 via " + sf_str(*unit));
        else if (unit)
            rep.add_fail("pis3-embedded-unit", "embedded unit lost its integral",
                         {{"v", sf_str(*unit)}});
        else
            rep.add_fail("pis3-embedded-unit", "no index of positive measure", {});
    }

    // --- Truncation from above: integral(a /\ n) climbs to integral(a) ----
    {
        bool ok = true;
        Example ce;
        const int rounds = std::min(n_stream, 24);
        for (int t = 0; t < rounds && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 2);
            const Rational ia = integral_exact(a);
            Rational last_gap;
            bool have_last = false;
            for (long k = 0; k <= 6 && ok; ++k) {
                const Rational m = Rational::pow2(k);
                const Representation capped =
                    rep_scale(m, rep_meet_one(rep_scale(Rational(1) / m, a)));
                const Rational gap = ia - integral_exact(capped);
                if (gap.sgn() < 0 || (have_last && gap > last_gap) || (k == 6 && !gap.is_zero())) {
                    ok = false;
                    ce = {{"a", rep_str(a)}, {"cap", m.str()}, {"gap", gap.str()}};
                }
                last_gap = gap;
                have_last = true;
            }
        }
        if (ok)
            rep.add_sampled("pis4-meet-n-stabilizes", std::to_string(std::min(n_stream, 24)) + " streams");
        else
            rep.add_fail("pis4-meet-n-stabilizes", "integral(a /\\ n) fails to climb to integral(a)", ce);
    }

    // --- Truncation from below: integral(|a| /\ 1/m) decays like 1/m ------
    {
        bool ok = true;
        Example ce;
        const int rounds = std::min(n_stream, 24);
        for (int t = 0; t < rounds && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 2);
            const long hint = *a.support_hint;
            const DisjointRep d = disjrep(fold_sum(a, 1, hint));
            Rational support_mass(0);
            for (const auto& piece : d.fn.terms())
                if (!piece.coeff.is_zero()) support_mass += sp.measure(piece.index);
            Rational last;
            bool have_last = false;
            for (long k = 0; k <= 5 && ok; ++k) {
                const Rational m = Rational::pow2(k);
                const Representation small =
                    rep_scale(Rational(1) / m, rep_meet_one(rep_scale(m, rep_abs(a))));
                const Rational value = integral_exact(small);
                if (value.sgn() < 0 || (have_last && value > last) || m * value > support_mass) {
                    ok = false;
                    ce = {{"a", rep_str(a)}, {"m", m.str()}, {"value", value.str()},
                          {"support-mass", support_mass.str()}};
                }
                last = value;
                have_last = true;
            }
        }
        if (ok)
            rep.add_sampled("pis4-small-meet-decays", std::to_string(std::min(n_stream, 24)) + " streams");
        else
            rep.add_fail("pis4-small-meet-decays", "integral(|a| /\\ 1/m) decays slower than 1/m", ce);
    }

    // --- |integral| <= norm ------------------------------------------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            if (integral_exact(a).abs() > norm1_exact(a)) {
                ok = false;
                ce = {{"a", rep_str(a)},
                      {"integral", integral_exact(a).str()},
                      {"norm", norm1_exact(a).str()}};
            }
        }
        if (ok) {
            const auto unit = unit_simple(space);
            if (unit) {
                const Representation g = rep_geometric(*unit, Rational(1, 2));
                const Rational qi = approx_to(integral_rep(g), config.precision).abs();
                const Rational qn = approx_to(norm1(g), config.precision);
                if (qi > qn + Rational::pow2(-config.precision) * Rational(2)) {
                    ok = false;
                    ce = {{"stream", "geometric"}, {"integral", qi.str()}, {"norm", qn.str()}};
                }
            }
        }
        if (ok)
            rep.add_sampled("integral-abs-bound", std::to_string(n_stream) + " streams + geometric");
        else
            rep.add_fail("integral-abs-bound", "|integral| exceeded the 1-norm", ce);
    }

    // --- Nonnegative values force a nonnegative integral -------------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation nonneg = rep_abs(random_finite_rep(rng, space, 3));
            if (integral_exact(nonneg).sgn() < 0) {
                ok = false;
                ce = {{"a", rep_str(nonneg)}, {"integral", integral_exact(nonneg).str()}};
            }
        }
        if (ok)
            rep.add_sampled("nonneg-integral-nonneg", std::to_string(n_stream) + " streams");
        else
            rep.add_fail("nonneg-integral-nonneg", "nonnegative stream with negative integral", ce);
    }

    // --- Pointwise order forces integral order -----------------------------
    {
        bool ok = true;
        Example ce;
        int applicable = 0;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 2);
            const Representation b = (t % 2 == 0)
                                         ? rep_add(a, rep_abs(random_finite_rep(rng, space, 2)))
                                         : random_finite_rep(rng, space, 2);
            const Mask common = rep_domain(a) & rep_domain(b);
            bool ordered = true;
            for (std::size_t x = 0; x < ground_size && ordered; ++x)
                if (common >> x & 1)
                    if (eval_exact(a, x) > eval_exact(b, x)) ordered = false;
            if (!ordered) continue;
            ++applicable;
            // The order lemma compares the streams through their
            // difference, whose domain is exactly the common domain.
            const Representation diff = rep_add(b, rep_scale(Rational(-1), a));
            if (integral_exact(diff).sgn() < 0) {
                ok = false;
                ce = {{"a", rep_str(a)}, {"b", rep_str(b)}};
            }
        }
        if (ok)
            rep.add_sampled("pointwise-order-integral-order",
                            std::to_string(applicable) + " ordered pairs");
        else
            rep.add_fail("pointwise-order-integral-order", "order of integrals violated", ce);
    }

    // --- Norm axioms --------------------------------------------------------
    {
        bool ok = true;
        Example ce;
        if (approx_to(norm1(rep_from_terms(space, {})), 10) != Rational(0)) {
            ok = false;
            ce = {{"what", "zero stream has nonzero norm"}};
        }
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            const Representation b = random_finite_rep(rng, space, 3);
            const Rational c = random_coeff(rng);
            if (norm1_exact(rep_scale(c, a)) != c.abs() * norm1_exact(a)) {
                ok = false;
                ce = {{"what", "homogeneity"}, {"a", rep_str(a)}, {"c", c.str()}};
            } else if (norm1_exact(rep_add(a, b)) > norm1_exact(a) + norm1_exact(b)) {
                ok = false;
                ce = {{"what", "triangle"}, {"a", rep_str(a)}, {"b", rep_str(b)}};
            } else if (norm1_exact(a).sgn() < 0) {
                ok = false;
                ce = {{"what", "negativity"}, {"a", rep_str(a)}};
            } else if (eq_int(a, a, config.precision) != EqInt::equal_within) {
                ok = false;
                ce = {{"what", "reflexivity"}, {"a", rep_str(a)}};
            }
        }
        if (ok)
            rep.add_sampled("norm-axioms", std::to_string(n_stream) + " streams");
        else
            rep.add_fail("norm-axioms", "a norm axiom failed", ce);
    }

    // --- Partial sums of embedded terms converge in norm --------------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            const long hint = *a.support_hint;
            for (long upto = std::max<long>(0, hint - 1); upto <= hint && ok; ++upto) {
                const Representation partial = partial_sum_of_embeds(a, upto);
                const Rational distance =
                    norm1_exact(rep_add(a, rep_scale(Rational(-1), partial)));
                const Rational expected = integral(abs_sf(fold_sum(a, upto + 1, hint)));
                if (distance != expected) {
                    ok = false;
                    ce = {{"a", rep_str(a)},
                          {"upto", std::to_string(upto)},
                          {"distance", distance.str()},
                          {"expected", expected.str()}};
                }
            }
        }
        if (ok)
            rep.add_sampled("partial-sums-converge", std::to_string(n_stream) + " streams");
        else
            rep.add_fail("partial-sums-converge",
                         "distance to the embedded partial sum is not the tail norm", ce);
    }

    // --- Every finite stream collapses onto an embedded simple function ----
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            const SimpleFunction total = fold_sum(a, 1, *a.support_hint);
            if (!norm1_exact(rep_add(a, rep_scale(Rational(-1), embed(total)))).is_zero() ||
                eq_int(a, embed(total), config.precision) != EqInt::equal_within) {
                ok = false;
                ce = {{"a", rep_str(a)}, {"total", sf_str(total)}};
            }
        }
        if (ok)
            rep.add_sampled("embedded-simple-dense", std::to_string(n_stream) + " streams");
        else
            rep.add_fail("embedded-simple-dense", "stream not at distance zero from its sum", ce);
    }

    // --- Compression preserves the function and bounds its mass -------------
    {
        bool ok = true;
        Example ce;
        for (int t = 0; t < n_stream && ok; ++t) {
            const Representation a = random_finite_rep(rng, space, 3);
            for (long level : {0L, 2L, 4L}) {
                const Representation b = compress(a, level);
                if (!rep_fn_equal(a, b) || integral_exact(b) != integral_exact(a)) {
                    ok = false;
                    ce = {{"a", rep_str(a)}, {"level", std::to_string(level)}};
                    break;
                }
                Rational mass(0);
                for (long k = 1; k <= *b.support_hint; ++k)
                    mass += integral(abs_sf(b.term(k)));
                if (mass > norm1_exact(a) + Rational::pow2(-level)) {
                    ok = false;
                    ce = {{"a", rep_str(a)},
                          {"level", std::to_string(level)},
                          {"mass", mass.str()},
                          {"norm", norm1_exact(a).str()}};
                    break;
                }
            }
        }
        if (ok)
            rep.add_sampled("compress-preserves-function", std::to_string(n_stream) + " streams");
        else
            rep.add_fail("compress-preserves-function", "compression changed the stream", ce);
    }

    // --- Series of streams: the concrete geometric contract -----------------
    {
        bool ok = true;
        Example ce;
        const auto unit = unit_simple(space);
        if (unit) {
            const SimpleFunction v = *unit;
            // gamma(n) = 2^(1-n) v: outer tails sum to 2^(1-N) * norm(v).
            const Rational vnorm = integral(abs_sf(v));
            const long shift = ceil_log2(max(vnorm, Rational(1)));
            auto gamma = [v](long n) { return embed(scalar_mul(Rational::pow2(1 - n), v)); };
            const Representation sum =
                lebesgue_sum(gamma, [shift](long p) { return p + 2 + shift; });

            // Tail certificate spot-check over a finite window.
            for (long p : {2L, 6L}) {
                const long cut = sum.tail_modulus(p);
                Rational window(0);
                for (long m = cut + 1; m <= cut + 40; ++m)
                    window += integral(abs_sf(sum.term(m)));
                if (window > Rational::pow2(-p)) {
                    ok = false;
                    ce = {{"what", "tail certificate"}, {"p", std::to_string(p)}};
                }
            }

            // Pointwise: the series doubles the base value at every point.
            // In the flattened stream row r keeps its mass 2^(1-r)|f_v(x)|
            // in column 1, and that position grows quadratically with r,
            // so the pointwise certificate must clear every column-1 slot
            // up to the row cutoff p+2+log2(max |f_v|).
            Rational peak(0);
            for (std::size_t x = 0; x < ground_size; ++x)
                if (v.domain() >> x & 1) peak = max(peak, eval(v, x).abs());
            const long pshift = ceil_log2(peak + Rational(1));
            const Modulus ptail = strictify([pshift](long p) {
                long best = 1;
                for (long r = 1; r <= p + 2 + pshift; ++r)
                    best = std::max(best, static_cast<long>(pair1(r, 1)));
                return best;
            });
            for (std::size_t x = 0; x < ground_size && ok; ++x) {
                if ((v.domain() >> x & 1) == 0) continue;
                const Rational got = approx_to(eval_rep(sum, x, ptail), config.precision + 2);
                const Rational want = Rational(2) * eval(v, x);
                if ((got - want).abs() > Rational::pow2(-(config.precision + 1))) {
                    ok = false;
                    ce = {{"what", "pointwise value"}, {"x", sp.ground()->label(x)},
                          {"got", got.str()}, {"want", want.str()}};
                }
            }

            // Truncation: distance to the N-th partial sum within the
            // proof's envelope sum_{n>N} (||gamma(n)|| + 2^-n).
            for (long upto : {2L, 4L}) {
                Representation partial = rep_from_terms(space, {});
                for (long n = 1; n <= upto; ++n) partial = rep_add(partial, gamma(n));
                const Rational d =
                    approx_to(norm1(rep_add(sum, rep_scale(Rational(-1), partial))), 8);
                const Rational envelope =
                    Rational::pow2(1 - upto) * vnorm + Rational::pow2(-upto) + Rational::pow2(-7);
                if (d > envelope) {
                    ok = false;
                    ce = {{"what", "truncation distance"}, {"N", std::to_string(upto)},
                          {"distance", d.str()}, {"envelope", envelope.str()}};
                }
            }

            // Degenerate series: all-zero rows sum to the zero stream, a
            // single nonzero row reproduces itself.
            const Representation zero_sum = lebesgue_sum(
                [space](long) { return rep_from_terms(space, {}); }, [](long p) { return p + 1; });
            if (approx_to(norm1(zero_sum), 6) > Rational::pow2(-5)) {
                ok = false;
                ce = {{"what", "zero series"}};
            }
            const Representation single = lebesgue_sum(
                [space, v](long n) {
                    return n == 1 ? embed(v) : rep_from_terms(space, {});
                },
                [](long p) { return p + 1; });
            if (ok && eq_int(single, embed(v), 8) != EqInt::equal_within) {
                ok = false;
                ce = {{"what", "single-row series"}};
            }
        }
        if (ok)
            rep.add_pass("lebesgue-sum-contract", "geometric series over the unit");
        else
            rep.add_fail("lebesgue-sum-contract", "series of streams broke its contract", ce);
    }

    // --- Cauchy limits -------------------------------------------------------
    {
        bool ok = true;
        Example ce;
        const auto unit = unit_simple(space);
        if (unit) {
            const SimpleFunction v = *unit;
            auto gamma = [v](long n) {
                return embed(scalar_mul(Rational(1) - Rational::pow2(-n), v));
            };
            // ||gamma(n) - gamma(m)|| = |2^-m - 2^-n| * norm(v) <= 2^-min;
            // norm(v) may exceed 1, so shift the modulus accordingly.
            const Rational vnorm = integral(abs_sf(v));
            const long shift = ceil_log2(max(vnorm, Rational(1)));
            const Modulus m = [shift](long p) { return p + 1 + shift; };
            const CauchyLimit cl = limit_of_cauchy(gamma, m);

            for (long p : {2L, 5L}) {
                const long at = cl.modulus(p);
                const Rational d = approx_to(
                    norm1(rep_add(cl.limit, rep_scale(Rational(-1), gamma(at)))), p + 2);
                if (d > Rational::pow2(-p) + Rational::pow2(-(p + 1))) {
                    ok = false;
                    ce = {{"what", "returned modulus"}, {"p", std::to_string(p)},
                          {"distance", d.str()}};
                }
            }
            if (ok && eq_int(cl.limit, embed(v), 7) != EqInt::equal_within) {
                ok = false;
                ce = {{"what", "limit misses the target"}};
            }
            if (ok) {
                const CauchyLimit constant = limit_of_cauchy(
                    [v](long) { return embed(v); }, [](long p) { return p + 1; });
                if (eq_int(constant.limit, embed(v), 7) != EqInt::equal_within) {
                    ok = false;
                    ce = {{"what", "constant sequence"}};
                }
            }
            if (ok) {
                const CauchyLimit coarser =
                    limit_of_cauchy(gamma, [shift](long p) { return p + 3 + shift; });
                if (eq_int(cl.limit, coarser.limit, 5) != EqInt::equal_within) {
                    ok = false;
                    ce = {{"what", "modulus independence"}};
                }
            }
        }
        if (ok)
            rep.add_pass("cauchy-limit-contract", "telescoping sequence over the unit");
        else
            rep.add_fail("cauchy-limit-contract", "Cauchy limit broke its contract", ce);
    }

    return rep;
}

}  // namespace exm
