#include "exmeasure/ground_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace exm {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() > 64) throw std::invalid_argument("GroundSet: more than 64 elements");
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) throw std::invalid_argument("GroundSet: duplicate label '" + l + "'");
}

const std::string& GroundSet::label(std::size_t i) const {
    if (i >= labels_.size()) throw std::out_of_range("GroundSet::label: index out of range");
    return labels_[i];
}

std::optional<std::size_t> GroundSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == name) return i;
    return std::nullopt;
}

Mask GroundSet::full() const {
    return labels_.size() == 64 ? ~Mask{0} : (Mask{1} << labels_.size()) - 1;
}

std::string GroundSet::mask_str(Mask m) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!(m >> i & 1)) continue;
        if (!first) out += ",";
        out += labels_[i];
        first = false;
    }
    out += "}";
    return out;
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) {
    if (!a || !b) return false;
    return a == b || a->labels() == b->labels();
}

namespace {

const GroundPtr& require_same(const GroundPtr& a, const GroundPtr& b, const char* op) {
    if (!same_ground(a, b)) throw std::invalid_argument(std::string(op) + ": ground-set mismatch");
    return a;
}

}  // namespace

ComplementedSubset::ComplementedSubset(GroundPtr ground, Mask pos, Mask neg)
    : ground_(std::move(ground)), pos_(pos), neg_(neg) {
    if (!ground_) throw std::invalid_argument("ComplementedSubset: null ground set");
    const Mask full = ground_->full();
    if ((pos_ | neg_) & ~full) throw std::invalid_argument("ComplementedSubset: bits outside the ground set");
    if (pos_ & neg_)
        throw std::invalid_argument("ComplementedSubset: parts overlap on " + ground_->mask_str(pos_ & neg_));
}

std::string ComplementedSubset::str() const {
    return "(" + ground_->mask_str(pos_) + "," + ground_->mask_str(neg_) + ")";
}

ComplementedSubset cs_meet(const ComplementedSubset& a, const ComplementedSubset& b) {
    const auto& g = require_same(a.ground(), b.ground(), "cs_meet");
    return {g, a.pos() & b.pos(), (a.pos() & b.neg()) | (a.neg() & b.pos()) | (a.neg() & b.neg())};
}

ComplementedSubset cs_join(const ComplementedSubset& a, const ComplementedSubset& b) {
    const auto& g = require_same(a.ground(), b.ground(), "cs_join");
    return {g, (a.pos() & b.neg()) | (a.neg() & b.pos()) | (a.pos() & b.pos()), a.neg() & b.neg()};
}

ComplementedSubset cs_not(const ComplementedSubset& a) {
    return {a.ground(), a.neg(), a.pos()};
}

ComplementedSubset cs_minus(const ComplementedSubset& a, const ComplementedSubset& b) {
    require_same(a.ground(), b.ground(), "cs_minus");
    return cs_meet(a, cs_not(b));
}

bool cs_leq(const ComplementedSubset& a, const ComplementedSubset& b) {
    require_same(a.ground(), b.ground(), "cs_leq");
    return (a.pos() & ~b.pos()) == 0 && (b.neg() & ~a.neg()) == 0;
}

bool cs_eq(const ComplementedSubset& a, const ComplementedSubset& b) {
    require_same(a.ground(), b.ground(), "cs_eq");
    return a.pos() == b.pos() && a.neg() == b.neg();
}

PartialRationalFn::PartialRationalFn(GroundPtr ground, Mask domain, std::vector<Rational> values)
    : ground_(std::move(ground)), domain_(domain), values_(std::move(values)) {
    if (!ground_) throw std::invalid_argument("PartialRationalFn: null ground set");
    if (domain_ & ~ground_->full()) throw std::invalid_argument("PartialRationalFn: domain outside the ground set");
    if (values_.size() != ground_->size())
        throw std::invalid_argument("PartialRationalFn: one value slot per ground element expected");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!(domain_ >> i & 1)) values_[i] = Rational(0);
}

const Rational& PartialRationalFn::at(std::size_t i) const {
    if (i >= ground_->size() || !(domain_ >> i & 1))
        throw std::out_of_range("PartialRationalFn::at: " +
                                (i < ground_->size() ? ground_->label(i) : std::to_string(i)) +
                                " is outside the domain");
    return values_[i];
}

namespace {

template <typename F>
PartialRationalFn pf_combine(const PartialRationalFn& f, const PartialRationalFn& g, const char* op, F fn) {
    const auto& gr = require_same(f.ground(), g.ground(), op);
    const Mask dom = f.domain() & g.domain();
    std::vector<Rational> vals(gr->size(), Rational(0));
    for (std::size_t i = 0; i < gr->size(); ++i)
        if (dom >> i & 1) vals[i] = fn(f.at(i), g.at(i));
    return {gr, dom, std::move(vals)};
}

}  // namespace

PartialRationalFn pf_add(const PartialRationalFn& f, const PartialRationalFn& g) {
    return pf_combine(f, g, "pf_add", [](const Rational& x, const Rational& y) { return x + y; });
}
PartialRationalFn pf_sub(const PartialRationalFn& f, const PartialRationalFn& g) {
    return pf_combine(f, g, "pf_sub", [](const Rational& x, const Rational& y) { return x - y; });
}
PartialRationalFn pf_mul(const PartialRationalFn& f, const PartialRationalFn& g) {
    return pf_combine(f, g, "pf_mul", [](const Rational& x, const Rational& y) { return x * y; });
}
PartialRationalFn pf_min(const PartialRationalFn& f, const PartialRationalFn& g) {
    return pf_combine(f, g, "pf_min", [](const Rational& x, const Rational& y) { return std::min(x, y); });
}
PartialRationalFn pf_max(const PartialRationalFn& f, const PartialRationalFn& g) {
    return pf_combine(f, g, "pf_max", [](const Rational& x, const Rational& y) { return std::max(x, y); });
}

PartialRationalFn pf_scale(const Rational& a, const PartialRationalFn& f) {
    return pf_map(f, [&a](const Rational& x) { return a * x; });
}

PartialRationalFn pf_map(const PartialRationalFn& f, const std::function<Rational(const Rational&)>& fn) {
    if (!fn) throw std::invalid_argument("pf_map: empty function");
    const auto& gr = f.ground();
    std::vector<Rational> vals(gr->size(), Rational(0));
    for (std::size_t i = 0; i < gr->size(); ++i)
        if (f.domain() >> i & 1) vals[i] = fn(f.at(i));
    return {gr, f.domain(), std::move(vals)};
}

bool pf_eq(const PartialRationalFn& f, const PartialRationalFn& g) {
    require_same(f.ground(), g.ground(), "pf_eq");
    if (f.domain() != g.domain()) return false;
    for (std::size_t i = 0; i < f.ground()->size(); ++i)
        if ((f.domain() >> i & 1) && f.at(i) != g.at(i)) return false;
    return true;
}

PartialRationalFn characteristic(const ComplementedSubset& a) {
    const auto& gr = a.ground();
    std::vector<Rational> vals(gr->size(), Rational(0));
    for (std::size_t i = 0; i < gr->size(); ++i)
        if (a.pos() >> i & 1) vals[i] = Rational(1);
    return {gr, a.domain(), std::move(vals)};
}

ComplementedSubset detachable(const IndicatorFn& f) {
    if (!f.ground) throw std::invalid_argument("detachable: null ground set");
    if (f.ones & ~f.ground->full()) throw std::invalid_argument("detachable: bits outside the ground set");
    return {f.ground, f.ones, f.ground->full() & ~f.ones};
}

std::vector<ComplementedSubset> all_complemented(const GroundPtr& gs) {
    if (!gs) throw std::invalid_argument("all_complemented: null ground set");
    if (gs->size() > 12) throw std::invalid_argument("all_complemented: ground set too large to enumerate");
    std::vector<ComplementedSubset> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < gs->size(); ++i) count *= 3;
    out.reserve(count);
    // Each element independently lands in pos, in neg, or stays undecided.
    for (std::size_t n = 0; n < count; ++n) {
        Mask pos = 0, neg = 0;
        std::size_t v = n;
        for (std::size_t i = 0; i < gs->size(); ++i, v /= 3) {
            if (v % 3 == 1) pos |= Mask{1} << i;
            if (v % 3 == 2) neg |= Mask{1} << i;
        }
        out.emplace_back(gs, pos, neg);
    }
    return out;
}

bool separated(const GroundSet& gs, std::size_t i, std::size_t j) {
    if (i >= gs.size() || j >= gs.size()) throw std::out_of_range("separated: index out of range");
    if (i == j) return false;
    // The singleton indicator at i is a separating witness: it takes 1 at
    // i and 0 at j.
    return true;
}

Report check_complemented_algebra(const GroundPtr& gs) {
    if (!gs) throw std::invalid_argument("check_complemented_algebra: null ground set");
    if (gs->size() > 5)
        throw std::invalid_argument("check_complemented_algebra: ground set too large for exhaustive sweeps");

    Report rep;
    rep.suite = "algebra";
    const auto all = all_complemented(gs);
    const std::string count_note = std::to_string(all.size()) + " complemented subsets";

    struct PairLaw {
        const char* id;
        std::function<bool(const ComplementedSubset&, const ComplementedSubset&)> holds;
    };
    const PairLaw pair_laws[] = {
        {"meet-commutative", [](auto& a, auto& b) { return cs_eq(cs_meet(a, b), cs_meet(b, a)); }},
        {"join-commutative", [](auto& a, auto& b) { return cs_eq(cs_join(a, b), cs_join(b, a)); }},
        {"de-morgan-meet", [](auto& a, auto& b) { return cs_eq(cs_not(cs_meet(a, b)), cs_join(cs_not(a), cs_not(b))); }},
        {"de-morgan-join", [](auto& a, auto& b) { return cs_eq(cs_not(cs_join(a, b)), cs_meet(cs_not(a), cs_not(b))); }},
        {"minus-is-meet-complement", [](auto& a, auto& b) { return cs_eq(cs_minus(a, b), cs_meet(a, cs_not(b))); }},
        {"leq-antisymmetric", [](auto& a, auto& b) { return !(cs_leq(a, b) && cs_leq(b, a)) || cs_eq(a, b); }},
        {"chi-of-meet", [](auto& a, auto& b) {
             return pf_eq(characteristic(cs_meet(a, b)), pf_min(characteristic(a), characteristic(b)));
         }},
        {"chi-of-join", [](auto& a, auto& b) {
             return pf_eq(characteristic(cs_join(a, b)), pf_max(characteristic(a), characteristic(b)));
         }},
    };
    for (const auto& law : pair_laws) {
        const CheckEntry* failed = nullptr;
        for (const auto& a : all) {
            for (const auto& b : all)
                if (!law.holds(a, b)) {
                    rep.add_fail(law.id, "law fails", {{"A", a.str()}, {"B", b.str()}});
                    failed = &rep.entries.back();
                    break;
                }
            if (failed) break;
        }
        if (!failed) rep.add_pass(law.id, count_note);
    }

    {
        bool ok = true;
        for (const auto& a : all) {
            if (!cs_eq(cs_not(cs_not(a)), a)) {
                rep.add_fail("double-complement", "--A differs from A", {{"A", a.str()}});
                ok = false;
                break;
            }
            if (!cs_leq(a, a)) {
                rep.add_fail("leq-reflexive", "A is not below itself", {{"A", a.str()}});
                ok = false;
                break;
            }
            if (!pf_eq(characteristic(cs_not(a)),
                       pf_map(characteristic(a), [](const Rational& v) { return Rational(1) - v; }))) {
                rep.add_fail("chi-of-complement", "1 - chi_A differs from chi_(-A)", {{"A", a.str()}});
                ok = false;
                break;
            }
        }
        if (ok) rep.add_pass("double-complement", count_note);
        if (ok) rep.add_pass("leq-reflexive", count_note);
        if (ok) rep.add_pass("chi-of-complement", count_note);
    }

    struct TripleLaw {
        const char* id;
        std::function<bool(const ComplementedSubset&, const ComplementedSubset&, const ComplementedSubset&)> holds;
    };
    const TripleLaw triple_laws[] = {
        {"meet-associative",
         [](auto& a, auto& b, auto& c) { return cs_eq(cs_meet(cs_meet(a, b), c), cs_meet(a, cs_meet(b, c))); }},
        {"join-associative",
         [](auto& a, auto& b, auto& c) { return cs_eq(cs_join(cs_join(a, b), c), cs_join(a, cs_join(b, c))); }},
        {"meet-distributes",
         [](auto& a, auto& b, auto& c) {
             return cs_eq(cs_meet(a, cs_join(b, c)), cs_join(cs_meet(a, b), cs_meet(a, c)));
         }},
        {"join-distributes",
         [](auto& a, auto& b, auto& c) {
             return cs_eq(cs_join(a, cs_meet(b, c)), cs_meet(cs_join(a, b), cs_join(a, c)));
         }},
        {"leq-transitive",
         [](auto& a, auto& b, auto& c) { return !(cs_leq(a, b) && cs_leq(b, c)) || cs_leq(a, c); }},
    };
    for (const auto& law : triple_laws) {
        bool ok = true;
        for (const auto& a : all) {
            for (const auto& b : all) {
                for (const auto& c : all)
                    if (!law.holds(a, b, c)) {
                        rep.add_fail(law.id, "law fails", {{"A", a.str()}, {"B", b.str()}, {"C", c.str()}});
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (!ok) break;
        }
        if (ok) rep.add_pass(law.id, std::to_string(all.size() * all.size() * all.size()) + " triples");
    }

    // Indicator functions correspond one-to-one with the complemented
    // subsets whose domain is everything, and taking the characteristic
    // function gives the indicator back.
    {
        bool ok = true;
        std::size_t everywhere_decided = 0;
        for (const auto& a : all)
            if (a.domain() == gs->full()) ++everywhere_decided;
        const Mask full = gs->full();
        std::size_t indicators = 0;
        for (Mask ones = 0;; ++ones) {
            const ComplementedSubset d = detachable(IndicatorFn{gs, ones});
            const PartialRationalFn back = characteristic(d);
            if (d.domain() != full || back.domain() != full) {
                rep.add_fail("detachable-total", "detachable set is not decided everywhere",
                             {{"ones", gs->mask_str(ones)}});
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < gs->size(); ++i)
                if (back.at(i) != Rational((ones >> i & 1) ? 1 : 0)) {
                    rep.add_fail("detachable-roundtrip", "characteristic does not return the indicator",
                                 {{"ones", gs->mask_str(ones)}});
                    ok = false;
                    break;
                }
            if (!ok) break;
            ++indicators;
            if (ones == full) break;
        }
        if (ok && indicators != everywhere_decided) {
            rep.add_fail("detachable-bijection", "indicator count differs from everywhere-decided count",
                         {{"indicators", std::to_string(indicators)},
                          {"decided", std::to_string(everywhere_decided)}});
            ok = false;
        }
        if (ok) rep.add_pass("detachable-bijection", std::to_string(indicators) + " indicator functions");
    }

    // Apartness axioms for the separation inequality, plus the recorded
    // fact that on a finite enumeration it collapses to index inequality.
    {
        bool ok = true;
        const std::size_t n = gs->size();
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (separated(*gs, i, i)) {
                rep.add_fail("apartness-irreflexive", "element apart from itself", {{"x", gs->label(i)}});
                ok = false;
            }
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (separated(*gs, i, j) != separated(*gs, j, i)) {
                    rep.add_fail("apartness-symmetric", "asymmetric answer",
                                 {{"x", gs->label(i)}, {"y", gs->label(j)}});
                    ok = false;
                }
                if (separated(*gs, i, j) != (i != j)) {
                    rep.add_fail("apartness-is-inequality", "separation differs from index inequality",
                                 {{"x", gs->label(i)}, {"y", gs->label(j)}});
                    ok = false;
                }
                if (!separated(*gs, i, j)) continue;
                for (std::size_t k = 0; k < n; ++k)
                    if (!separated(*gs, i, k) && !separated(*gs, j, k)) {
                        rep.add_fail("apartness-cotransitive", "no side separates the third point",
                                     {{"x", gs->label(i)}, {"y", gs->label(j)}, {"z", gs->label(k)}});
                        ok = false;
                        break;
                    }
            }
        }
        if (ok) rep.add_pass("apartness-axioms", std::to_string(n) + " elements");
    }

    return rep;
}

}  // namespace exm
