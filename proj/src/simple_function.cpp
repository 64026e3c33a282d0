#include "exmeasure/simple_function.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace exm {

SimpleFunction::SimpleFunction(SpacePtr space, std::vector<SimpleTerm> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
    if (!space_) throw std::invalid_argument("SimpleFunction: null space");
    for (const auto& t : terms_)
        if (t.index >= space_->index_count())
            throw std::invalid_argument("SimpleFunction: index outside the space");
}

Mask SimpleFunction::domain() const {
    Mask f = space_->ground()->full();
    for (const auto& t : terms_) f &= space_->family(t.index).domain();
    return f;
}

Rational eval(const SimpleFunction& v, std::size_t x) {
    const auto& sp = *v.space();
    if (x >= sp.ground()->size()) throw std::out_of_range("eval: no such ground element");
    if (!(v.domain() >> x & 1))
        throw std::out_of_range("eval: point outside the domain of the simple function");
    Rational sum(0);
    for (const auto& t : v.terms())
        if (sp.family(t.index).pos() >> x & 1) sum += t.coeff;
    return sum;
}

PartialRationalFn sf_function(const SimpleFunction& v) {
    const auto& sp = *v.space();
    const auto& g = sp.ground();
    const Mask f = v.domain();
    std::vector<Rational> values(g->size(), Rational(0));
    for (const auto& t : v.terms()) {
        const Mask hit = f & sp.family(t.index).pos();
        for (std::size_t x = 0; x < g->size(); ++x)
            if (hit >> x & 1) values[x] += t.coeff;
    }
    return PartialRationalFn(g, f, std::move(values));
}

namespace {

void require_same_space(const SimpleFunction& v, const SimpleFunction& w) {
    if (v.space().get() != w.space().get())
        throw std::invalid_argument("simple functions live over different spaces");
}

}  // namespace

bool sf_equal(const SimpleFunction& v, const SimpleFunction& w) {
    require_same_space(v, w);
    return pf_eq(sf_function(v), sf_function(w));
}

std::string sf_str(const SimpleFunction& v) {
    if (v.terms().empty()) return "0";
    std::string out;
    for (const auto& t : v.terms()) {
        if (!out.empty()) out += " + ";
        out += t.coeff.str() + "*chi#" + std::to_string(t.index);
    }
    return out;
}

DisjointRep disjrep(const SimpleFunction& v) {
    const auto& terms = v.terms();
    const std::size_t n = terms.size();
    if (n == 0) return DisjointRep{SimpleFunction(v.space(), {})};
    if (n > 16) throw std::invalid_argument("disjrep: more than 16 terms");
    const auto& sp = *v.space();

    // z carries the family (empty, F): subtracting it cuts a set down to
    // the common domain without changing its members.
    Index z = sp.op_diff(terms[0].index, terms[0].index);
    for (std::size_t k = 1; k < n; ++k)
        z = sp.op_join(z, sp.op_diff(terms[k].index, terms[k].index));

    std::vector<SimpleTerm> out;
    out.reserve((std::size_t{1} << n) - 1);
    for (std::uint32_t profile = 1; profile < (std::uint32_t{1} << n); ++profile) {
        Rational coeff(0);
        std::optional<Index> inside;   // meet over the profile's 1 positions
        std::optional<Index> outside;  // join over its 0 positions
        for (std::size_t k = 0; k < n; ++k) {
            if (profile >> k & 1) {
                coeff += terms[k].coeff;
                inside = inside ? sp.op_meet(*inside, terms[k].index) : terms[k].index;
            } else {
                outside = outside ? sp.op_join(*outside, terms[k].index) : terms[k].index;
            }
        }
        Index j = *inside;
        if (outside) j = sp.op_diff(j, *outside);
        j = sp.op_diff(j, z);  // normalise the domain to F
        out.push_back({std::move(coeff), j});
    }
    return DisjointRep{SimpleFunction(v.space(), std::move(out))};
}

Rational integral(const SimpleFunction& v) {
    Rational sum(0);
    for (const auto& t : v.terms()) sum += t.coeff * v.space()->measure(t.index);
    return sum;
}

SimpleFunction scalar_mul(const Rational& a, const SimpleFunction& v) {
    auto terms = v.terms();
    for (auto& t : terms) t.coeff *= a;
    return SimpleFunction(v.space(), std::move(terms));
}

SimpleFunction add(const SimpleFunction& v, const SimpleFunction& w) {
    require_same_space(v, w);
    auto terms = v.terms();
    terms.insert(terms.end(), w.terms().begin(), w.terms().end());
    return SimpleFunction(v.space(), std::move(terms));
}

SimpleFunction abs_sf(const SimpleFunction& v) {
    auto terms = disjrep(v).fn.terms();
    for (auto& t : terms) t.coeff = t.coeff.abs();
    return SimpleFunction(v.space(), std::move(terms));
}

SimpleFunction meet_one(const SimpleFunction& v) {
    auto terms = disjrep(v).fn.terms();
    for (auto& t : terms) t.coeff = min(t.coeff, Rational(1));
    return SimpleFunction(v.space(), std::move(terms));
}

SimpleFunction sf_join(const SimpleFunction& v, const SimpleFunction& w) {
    require_same_space(v, w);
    const SimpleFunction d = add(v, scalar_mul(Rational(-1), w));
    return add(w, scalar_mul(Rational(1, 2), add(d, abs_sf(d))));
}

SimpleFunction sf_meet(const SimpleFunction& v, const SimpleFunction& w) {
    return scalar_mul(Rational(-1),
                      sf_join(scalar_mul(Rational(-1), v), scalar_mul(Rational(-1), w)));
}

Index phi_N(const SimpleFunction& v, long N) {
    if (N < 1) throw std::invalid_argument("phi_N: N must be positive");
    const auto& sp = *v.space();
    const auto& g = *sp.ground();
    const Mask f = v.domain();
    for (std::size_t x = 0; x < g.size(); ++x)
        if ((f >> x & 1) && eval(v, x).sgn() < 0)
            throw std::domain_error("phi_N: function is negative at " + g.label(x));

    const DisjointRep d = disjrep(v);
    const auto& ts = d.fn.terms();
    if (ts.empty()) {
        // v is zero on the whole ground set; the selected set must be empty
        // with the widest domain the family can express, so that equal
        // inputs keep giving equal outputs.
        for (Index i = 0; i < sp.index_count(); ++i)
            if (sp.family(i).domain() == g.full()) return sp.op_diff(i, i);
        return sp.op_diff(0, 0);
    }

    const Rational small = Rational(1) / Rational(N);       // coefficients below: ignorable
    const Rational keep = Rational(1, 2) / Rational(N);     // coefficients above: selected
    Index z = sp.op_diff(ts[0].index, ts[0].index);
    for (std::size_t k = 1; k < ts.size(); ++k)
        z = sp.op_join(z, sp.op_diff(ts[k].index, ts[k].index));

    bool all_small = true;
    std::optional<Index> selected;
    for (const auto& t : ts) {
        // Only pieces with an inhabited positive part carry values of the
        // function; a coefficient on an empty piece is representation
        // noise and differs between equal inputs, so it must not steer
        // the selection.
        if (sp.family(t.index).pos() == 0) continue;
        if (!(t.coeff < small)) all_small = false;
        if (t.coeff > keep)
            selected = selected ? sp.op_join(*selected, t.index) : t.index;
    }
    if (all_small) return z;
    // not all small means some coefficient >= 1/N > 1/(2N), so the
    // selection is inhabited
    return sp.op_diff(*selected, z);
}

// ---------------------------------------------------------------------------
// checkers

namespace {

void require_checkable(const SpacePtr& space, const CheckConfig& config) {
    if (!space) throw std::invalid_argument("axiom check: null space");
    if (space->ground()->size() > static_cast<std::size_t>(config.max_ground))
        throw std::invalid_argument("axiom check: ground set larger than the configured bound");
    if (space->index_count() == 0)
        throw std::invalid_argument("axiom check: space has no indices");
}

constexpr long kGrid[] = {-2, -1, 0, 1, 2};

Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    return Rational(num(rng), den(rng));
}

Index random_index(std::mt19937_64& rng, const PreMeasureSpace& sp) {
    return static_cast<Index>(rng() % sp.index_count());
}

SimpleFunction random_sf(std::mt19937_64& rng, const SpacePtr& sp, int max_terms) {
    const auto n = rng() % static_cast<unsigned long>(max_terms + 1);
    std::vector<SimpleTerm> ts;
    ts.reserve(n);
    for (unsigned long k = 0; k < n; ++k) ts.push_back({random_coeff(rng), random_index(rng, *sp)});
    return SimpleFunction(sp, std::move(ts));
}

SimpleFunction random_nonneg_sf(std::mt19937_64& rng, const SpacePtr& sp, int max_terms) {
    return abs_sf(random_sf(rng, sp, max_terms));
}

// Every single-term function with a grid coefficient, plus the empty one.
std::vector<SimpleFunction> grid_singles(const SpacePtr& sp) {
    std::vector<SimpleFunction> out;
    out.emplace_back(sp, std::vector<SimpleTerm>{});
    for (const long c : kGrid)
        for (Index i = 0; i < sp->index_count(); ++i)
            out.emplace_back(sp, std::vector<SimpleTerm>{{Rational(c), i}});
    return out;
}

using Example = std::vector<std::pair<std::string, std::string>>;

PartialRationalFn pf_abs(const PartialRationalFn& f) {
    return pf_map(f, [](const Rational& r) { return r.abs(); });
}

PartialRationalFn pf_cap_one(const PartialRationalFn& f) {
    return pf_map(f, [](const Rational& r) { return min(r, Rational(1)); });
}

}  // namespace

Report check_pis_simple(const SpacePtr& space, const CheckConfig& config) {
    require_checkable(space, config);
    Report rep;
    rep.suite = "pis-simple";
    const auto& sp = *space;
    const std::size_t ground_size = sp.ground()->size();
    std::mt19937_64 rng(config.seed);

    // --- PIS1, exhaustive over the single-term grid --------------------
    {
        const auto singles = grid_singles(space);
        bool ok = true;
        Example ce;
        for (const auto& v : singles) {
            const auto fv = sf_function(v);
            for (const long a : kGrid)
                if (!pf_eq(sf_function(scalar_mul(Rational(a), v)), pf_scale(Rational(a), fv))) {
                    ok = false;
                    ce = {{"v", sf_str(v)}, {"a", std::to_string(a)}, {"identity", "scalar"}};
                }
            if (!pf_eq(sf_function(abs_sf(v)), pf_abs(fv))) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"identity", "abs"}};
            }
            if (!pf_eq(sf_function(meet_one(v)), pf_cap_one(fv))) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"identity", "meet-one"}};
            }
            if (!ok) break;
        }
        for (std::size_t a = 0; ok && a < singles.size(); ++a)
            for (std::size_t b = 0; ok && b < singles.size(); ++b)
                if (!pf_eq(sf_function(add(singles[a], singles[b])),
                           pf_add(sf_function(singles[a]), sf_function(singles[b])))) {
                    ok = false;
                    ce = {{"v", sf_str(singles[a])}, {"w", sf_str(singles[b])}, {"identity", "add"}};
                }
        if (ok)
            rep.add_pass("pis1-pointwise-grid",
                         std::to_string(singles.size()) + " single-term functions, coefficients -2..2");
        else
            rep.add_fail("pis1-pointwise-grid", "pointwise identity broken", ce);
    }

    {
        const auto singles = grid_singles(space);
        std::vector<Rational> ints;
        ints.reserve(singles.size());
        for (const auto& v : singles) ints.push_back(integral(v));
        bool ok = true;
        Example ce;
        for (std::size_t x = 0; ok && x < singles.size(); ++x)
            for (std::size_t y = 0; ok && y < singles.size(); ++y)
                for (const long a : kGrid) {
                    const long b = -a + 1;  // one slope per pair keeps the sweep quadratic
                    const SimpleFunction combo =
                        add(scalar_mul(Rational(a), singles[x]), scalar_mul(Rational(b), singles[y]));
                    if (integral(combo) != Rational(a) * ints[x] + Rational(b) * ints[y]) {
                        ok = false;
                        ce = {{"v", sf_str(singles[x])},
                              {"w", sf_str(singles[y])},
                              {"a", std::to_string(a)},
                              {"b", std::to_string(b)}};
                        break;
                    }
                }
        if (ok)
            rep.add_pass("pis1-linearity-grid", "all grid pairs, 5 coefficient slopes each");
        else
            rep.add_fail("pis1-linearity-grid", "integral is not linear", ce);
    }

    // --- PIS1 on longer random term lists ------------------------------
    {
        bool ok = true;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_sf(rng, space, 3);
            const SimpleFunction w = random_sf(rng, space, 3);
            const Rational a = random_coeff(rng), b = random_coeff(rng);
            const auto fv = sf_function(v), fw = sf_function(w);
            if (!pf_eq(sf_function(scalar_mul(a, v)), pf_scale(a, fv)) ||
                !pf_eq(sf_function(add(v, w)), pf_add(fv, fw)) ||
                !pf_eq(sf_function(abs_sf(v)), pf_abs(fv)) ||
                !pf_eq(sf_function(meet_one(v)), pf_cap_one(fv)) ||
                integral(add(scalar_mul(a, v), scalar_mul(b, w))) !=
                    a * integral(v) + b * integral(w)) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"w", sf_str(w)}, {"a", a.str()}, {"b", b.str()}};
            }
        }
        if (ok)
            rep.add_sampled("pis1-sampled", std::to_string(config.samples) + " random term lists");
        else
            rep.add_fail("pis1-sampled", "identity or linearity broken", ce);
    }

    // --- PIS2: witness search ------------------------------------------
    {
        bool ok = true;
        int instances = 0;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            // a function with positive integral
            std::optional<SimpleFunction> v;
            for (int tries = 0; tries < 64 && !v; ++tries) {
                SimpleFunction cand = random_sf(rng, space, 3);
                if (integral(cand).sgn() > 0) v = std::move(cand);
            }
            if (!v) {
                ok = false;
                ce = {{"note", "could not sample a function with positive integral"}};
                break;
            }
            // a finitely supported nonnegative sequence with sum of
            // integrals strictly below integral(v)
            std::vector<SimpleFunction> alpha;
            const auto len = rng() % 4;
            Rational total(0);
            for (unsigned long j = 0; j < len; ++j) {
                alpha.push_back(random_nonneg_sf(rng, space, 2));
                total += integral(alpha.back());
            }
            const Rational target = integral(*v);
            if (total >= target) {
                const Rational shrink = target / (total * Rational(2));
                total = Rational(0);
                for (auto& a : alpha) {
                    a = scalar_mul(shrink, a);
                    total += integral(a);
                }
            }
            Mask dom = v->domain();
            for (const auto& a : alpha) dom &= a.domain();
            bool found = false;
            for (std::size_t x = 0; x < ground_size && !found; ++x) {
                if (!(dom >> x & 1)) continue;
                Rational partial(0);
                for (const auto& a : alpha) partial += eval(a, x);
                if (partial < eval(*v, x)) found = true;
            }
            if (!found) {
                ok = false;
                ce = {{"v", sf_str(*v)},
                      {"alpha-count", std::to_string(alpha.size())},
                      {"sum-of-integrals", total.str()},
                      {"integral-v", target.str()}};
                for (std::size_t j = 0; j < alpha.size(); ++j)
                    ce.push_back({"alpha" + std::to_string(j), sf_str(alpha[j])});
            }
            ++instances;
        }
        if (ok)
            rep.add_sampled("pis2-witness-search",
                            std::to_string(instances) + " instances, witness found in each");
        else
            rep.add_fail("pis2-witness-search", "no ground element beats the series", ce);
    }

    // --- PIS2 on the constant-one function -----------------------------
    {
        std::optional<Index> everywhere;
        for (Index i = 0; i < sp.index_count(); ++i)
            if (sp.family(i).pos() == sp.ground()->full()) {
                everywhere = i;
                break;
            }
        if (!everywhere) {
            rep.add_pass("pis2-constant-one", "family has no everywhere-positive set; nothing to check");
        } else {
            const SimpleFunction one(space, {{Rational(1), *everywhere}});
            const SimpleFunction half = scalar_mul(Rational(1, 2), one);
            std::size_t witnesses = 0;
            for (std::size_t x = 0; x < ground_size; ++x)
                if (eval(half, x) < eval(one, x)) ++witnesses;
            if (integral(half) < integral(one) && witnesses == ground_size)
                rep.add_pass("pis2-constant-one", "1/2 < 1 at every ground element");
            else
                rep.add_fail("pis2-constant-one", "constant function lost to its own half",
                             {{"witnesses", std::to_string(witnesses)}});
        }
    }

    // --- PIS3 -----------------------------------------------------------
    {
        bool done = false;
        for (Index i = 0; i < sp.index_count() && !done; ++i) {
            if (sp.measure(i).sgn() <= 0) continue;
            const SimpleFunction unit(space, {{Rational(1) / sp.measure(i), i}});
            if (integral(unit) == Rational(1)) {
                rep.add_pass("pis3-unit-integral", "index #" + std::to_string(i) + " rescales to 1");
            } else {
                rep.add_fail("pis3-unit-integral", "rescaled integral misses 1",
                             {{"index", std::to_string(i)}, {"integral", integral(unit).str()}});
            }
            done = true;
        }
        if (!done)
            rep.add_fail("pis3-unit-integral", "no index has positive measure", {});
    }

    // --- PIS4: rescaled meet-one stabilizes to v exactly ----------------
    {
        bool ok = true;
        Example ce;
        long deepest = 1;
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_sf(rng, space, 3);
            Rational top(0);
            const DisjointRep dv = disjrep(v);
            for (const auto& t : dv.fn.terms()) top = max(top, t.coeff);
            const long start = static_cast<long>(top.floor().get_si()) + 1;
            deepest = std::max(deepest, start);
            for (long m = start; m <= 64 && ok; ++m) {
                const SimpleFunction am =
                    scalar_mul(Rational(m), meet_one(scalar_mul(Rational(1, m), v)));
                if (!sf_equal(am, v) || integral(am) != integral(v)) {
                    ok = false;
                    ce = {{"v", sf_str(v)}, {"m", std::to_string(m)}};
                }
            }
        }
        if (ok)
            rep.add_sampled("pis4-alpha-stabilizes",
                            std::to_string(config.samples) + " functions, every m up to 64 (stabilization from " +
                                std::to_string(deepest) + " at the latest)");
        else
            rep.add_fail("pis4-alpha-stabilizes", "m*(m^-1*v /\\ 1) differs from v", ce);
    }

    // --- PIS4: the beta sequence decays like 1/m ------------------------
    {
        bool ok = true;
        Example ce;
        const int samples = std::min(config.samples, 50);
        for (int s = 0; ok && s < samples; ++s) {
            const SimpleFunction v = random_sf(rng, space, 3);
            const DisjointRep dv = disjrep(v);
            const auto& pieces = dv.fn.terms();
            const SimpleFunction va = abs_sf(v);
            Rational cap(0);  // sum of the measures under the nonzero pieces
            for (const auto& t : pieces)
                if (!t.coeff.is_zero()) cap += sp.measure(t.index);
            for (long m = 1; m <= 64 && ok; ++m) {
                const SimpleFunction bm =
                    scalar_mul(Rational(1, m), meet_one(scalar_mul(Rational(m), va)));
                Rational expect(0);
                for (const auto& t : pieces)
                    expect += Rational(1, m) * min(Rational(m) * t.coeff.abs(), Rational(1)) *
                              sp.measure(t.index);
                const Rational got = integral(bm);
                if (got != expect || got > cap * Rational(1, m)) {
                    ok = false;
                    ce = {{"v", sf_str(v)},
                          {"m", std::to_string(m)},
                          {"integral", got.str()},
                          {"closed-form", expect.str()},
                          {"cap", (cap * Rational(1, m)).str()}};
                }
            }
        }
        if (ok)
            rep.add_sampled("pis4-beta-decay",
                            std::to_string(std::min(config.samples, 50)) +
                                " functions, integral matches the closed form and sits under cap/m for m <= 64");
        else
            rep.add_fail("pis4-beta-decay", "m^-1*(m|v| /\\ 1) misbehaves", ce);
    }

    // --- the integral respects simple-function equality -----------------
    {
        bool ok = true;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_sf(rng, space, 3);
            const SimpleFunction w = equivalent_variant(rng, v);
            if (!sf_equal(v, w)) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"w", sf_str(w)}, {"note", "rewrite changed the function"}};
            } else if (integral(v) != integral(w)) {
                ok = false;
                ce = {{"v", sf_str(v)},
                      {"w", sf_str(w)},
                      {"integral-v", integral(v).str()},
                      {"integral-w", integral(w).str()}};
            }
        }
        if (ok)
            rep.add_sampled("integral-well-defined",
                            std::to_string(config.samples) + " equal pairs by rewriting");
        else
            rep.add_fail("integral-well-defined", "equal functions, different integrals", ce);
    }

    // --- the phi_N selector contract ------------------------------------
    {
        bool ok = true;
        Example ce;
        Rational sharpest(0);  // largest observed mu(phi) / (N * integral)
        const long ns[] = {1, 2, 3, 5, 8};
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_nonneg_sf(rng, space, 2);
            const long n = ns[s % 5];
            const Index j = phi_N(v, n);
            const auto& cs = sp.family(j);
            const Mask f = v.domain();
            bool good = (cs.domain() & ~f) == 0;
            for (std::size_t x = 0; good && x < ground_size; ++x)
                if (cs.neg() >> x & 1)
                    if (!(eval(v, x) < Rational(1) / Rational(n))) good = false;
            const Rational bound = Rational(2 * n) * integral(v);
            if (sp.measure(j) > bound) good = false;
            if (integral(v).sgn() > 0)
                sharpest = max(sharpest, sp.measure(j) / (Rational(n) * integral(v)));
            if (!good) {
                ok = false;
                ce = {{"v", sf_str(v)},
                      {"N", std::to_string(n)},
                      {"selected", cs.str()},
                      {"measure", sp.measure(j).str()},
                      {"2N-integral", bound.str()}};
            }
        }
        if (ok)
            rep.add_sampled("phi-selector-contract",
                            "sharpest observed measure/(N*integral) = " + sharpest.str() +
                                " against the stated bound 2");
        else
            rep.add_fail("phi-selector-contract", "selector contract broken", ce);
    }

    {
        bool ok = true;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_nonneg_sf(rng, space, 2);
            const SimpleFunction w = equivalent_variant(rng, v);
            for (const long n : {1L, 2L, 4L}) {
                if (!cs_eq(sp.family(phi_N(v, n)), sp.family(phi_N(w, n)))) {
                    ok = false;
                    ce = {{"v", sf_str(v)}, {"w", sf_str(w)}, {"N", std::to_string(n)}};
                    break;
                }
            }
        }
        if (ok)
            rep.add_sampled("phi-respects-equality",
                            std::to_string(config.samples) + " rewritten pairs, N in {1,2,4}");
        else
            rep.add_fail("phi-respects-equality", "equal functions select different sets", ce);
    }

    return rep;
}

SimpleFunction equivalent_variant(std::mt19937_64& rng, const SimpleFunction& v) {
    SimpleFunction w = v;
    const int rounds = 1 + static_cast<int>(rng() % 3);
    for (int r = 0; r < rounds; ++r) {
        auto ts = w.terms();
        switch (rng() % 4) {
        case 0: {  // split one coefficient in two
            if (ts.empty()) break;
            auto& t = ts[rng() % ts.size()];
            const Rational part = random_coeff(rng);
            const Index i = t.index;
            t.coeff -= part;
            ts.push_back({part, i});
            w = SimpleFunction(w.space(), std::move(ts));
            break;
        }
        case 1: {  // reorder
            std::shuffle(ts.begin(), ts.end(), rng);
            w = SimpleFunction(w.space(), std::move(ts));
            break;
        }
        case 2: {  // pad with a zero coefficient on a present index
            if (ts.empty()) break;
            ts.push_back({Rational(0), ts[rng() % ts.size()].index});
            w = SimpleFunction(w.space(), std::move(ts));
            break;
        }
        default: {  // disjoint representation (bounded to avoid blow-up)
            if (ts.size() <= 4) w = disjrep(w).fn;
            break;
        }
        }
    }
    return w;
}

Report pis_basic_lemmas(const SpacePtr& space, const CheckConfig& config) {
    require_checkable(space, config);
    Report rep;
    rep.suite = "pis-lemmas";
    const std::size_t ground_size = space->ground()->size();
    std::mt19937_64 rng(config.seed);

    {
        bool ok = true;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_sf(rng, space, 3);
            if (integral(v).abs() > integral(abs_sf(v))) {
                ok = false;
                ce = {{"v", sf_str(v)},
                      {"integral", integral(v).str()},
                      {"integral-abs", integral(abs_sf(v)).str()}};
            }
        }
        if (ok)
            rep.add_sampled("abs-integral-bound", std::to_string(config.samples) + " functions");
        else
            rep.add_fail("abs-integral-bound", "|integral| exceeds the integral of ||", ce);
    }

    {
        bool ok = true;
        int applicable = 0;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            // alternate constructed-nonnegative and filtered-random inputs
            SimpleFunction v = (s % 2 == 0) ? random_nonneg_sf(rng, space, 3)
                                            : random_sf(rng, space, 3);
            bool nonneg = true;
            const Mask f = v.domain();
            for (std::size_t x = 0; nonneg && x < ground_size; ++x)
                if ((f >> x & 1) && eval(v, x).sgn() < 0) nonneg = false;
            if (!nonneg) continue;
            ++applicable;
            if (integral(v).sgn() < 0) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"integral", integral(v).str()}};
            }
        }
        if (ok)
            rep.add_sampled("nonneg-integral-nonneg",
                            std::to_string(applicable) + " nonnegative functions");
        else
            rep.add_fail("nonneg-integral-nonneg", "nonnegative function, negative integral", ce);
    }

    {
        bool ok = true;
        int applicable = 0;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            SimpleFunction v = random_sf(rng, space, 2);
            SimpleFunction w = (s % 2 == 0)
                                   ? add(v, random_nonneg_sf(rng, space, 2))  // order by construction
                                   : random_sf(rng, space, 2);
            const Mask dom = v.domain() & w.domain();
            bool leq = true;
            for (std::size_t x = 0; leq && x < ground_size; ++x)
                if ((dom >> x & 1) && eval(v, x) > eval(w, x)) leq = false;
            if (!leq) continue;
            ++applicable;
            if (integral(v) > integral(w)) {
                ok = false;
                ce = {{"v", sf_str(v)},
                      {"w", sf_str(w)},
                      {"integral-v", integral(v).str()},
                      {"integral-w", integral(w).str()}};
            }
        }
        if (ok)
            rep.add_sampled("pointwise-order-integral-order",
                            std::to_string(applicable) + " ordered pairs");
        else
            rep.add_fail("pointwise-order-integral-order", "order of integrals reversed", ce);
    }

    {
        bool ok = true;
        int applicable = 0;
        Example ce;
        for (int s = 0; ok && s < config.samples; ++s) {
            const SimpleFunction v = random_sf(rng, space, 2);
            std::vector<SimpleFunction> alpha;
            Rational total = integral(v);
            for (unsigned long j = rng() % 4; j > 0; --j) {
                alpha.push_back(random_nonneg_sf(rng, space, 2));
                total += integral(alpha.back());
            }
            if (!(total.sgn() > 0)) continue;
            ++applicable;
            Mask dom = v.domain();
            for (const auto& a : alpha) dom &= a.domain();
            bool found = false;
            for (std::size_t x = 0; x < ground_size && !found; ++x) {
                if (!(dom >> x & 1)) continue;
                Rational at = eval(v, x);
                for (const auto& a : alpha) at += eval(a, x);
                if (at.sgn() > 0) found = true;
            }
            if (!found) {
                ok = false;
                ce = {{"v", sf_str(v)}, {"total-integral", total.str()}};
                for (std::size_t j = 0; j < alpha.size(); ++j)
                    ce.push_back({"alpha" + std::to_string(j), sf_str(alpha[j])});
            }
        }
        if (ok)
            rep.add_sampled("positive-sum-witness", std::to_string(applicable) + " instances");
        else
            rep.add_fail("positive-sum-witness",
                         "positive integral sum without a pointwise-positive element", ce);
    }

    return rep;
}

}  // namespace exm
