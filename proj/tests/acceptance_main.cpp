#include "exmeasure/completion.hpp"
#include "exmeasure/double_series.hpp"
#include "exmeasure/pairing.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

// Acceptance gate for the whole library: eleven criteria, one PASS/FAIL
// line each, nonzero exit when any criterion fails. Every tolerance and
// runtime budget is pinned here in the code; nothing is derived from
// observed behavior at run time.

namespace {

using namespace exm;

GroundPtr make_ground(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
    return std::make_shared<GroundSet>(labels);
}

SpacePtr dirac3() {
    static const SpacePtr s = dirac(make_ground(3), "a");
    return s;
}

SpacePtr weighted3() {
    static const SpacePtr s =
        weighted_counting(make_ground(3), {Rational(1), Rational(1, 3), Rational(5, 2)});
    return s;
}

Rational q(long n, long d = 1) { return Rational(n, d); }

struct Outcome {
    bool pass = true;
    std::string reason;
};

Outcome fail(std::string reason) { return {false, std::move(reason)}; }

// ---------------------------------------------------------------------------
// 1. Complemented-subset algebra, exhaustive over small ground sets.

Outcome criterion_algebra() {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Report r = check_complemented_algebra(make_ground(n));
        if (!r.ok()) return fail("algebra checker failed at " + std::to_string(n) + " elements: " + r.summary());
    }
    return {};
}

// ---------------------------------------------------------------------------
// 2. Point-mass spaces satisfy the measure axioms exhaustively.

Outcome criterion_dirac_axioms() {
    for (std::size_t n = 1; n <= 4; ++n) {
        const GroundPtr g = make_ground(n);
        for (std::size_t x = 0; x < n; ++x) {
            const Report r = check_pms(dirac(g, g->label(x)));
            if (!r.ok())
                return fail("measure axioms failed for the point mass at '" + g->label(x) +
                            "' over " + std::to_string(n) + " elements: " + r.summary());
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// 3. The integral only depends on the function, not on the term list.

SimpleFunction random_simple(std::mt19937_64& rng, const SpacePtr& s, int max_terms) {
    std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
    std::vector<SimpleTerm> terms;
    const auto count = rng() % static_cast<unsigned long>(max_terms + 1);
    for (unsigned long t = 0; t < count; ++t)
        terms.push_back({Rational(num(rng), den(rng)), static_cast<Index>(rng() % s->index_count())});
    return SimpleFunction(s, std::move(terms));
}

Outcome criterion_integral_well_defined() {
    std::mt19937_64 rng(20260822);
    const SpacePtr spaces[2] = {dirac3(), weighted3()};
    std::uniform_int_distribution<long> num(-2, 2), den(1, 2);
    for (int i = 0; i < 500; ++i) {
        const SpacePtr s = spaces[i % 2];
        const SimpleFunction v = random_simple(rng, s, 4);
        SimpleFunction w = v;
        const int steps = 1 + static_cast<int>(rng() % 3);
        for (int step = 0; step < steps; ++step) {
            auto terms = w.terms();
            switch (rng() % 4) {
                case 0:
                    std::shuffle(terms.begin(), terms.end(), rng);
                    w = SimpleFunction(s, std::move(terms));
                    break;
                case 1:
                    if (!terms.empty()) {
                        const auto pick = rng() % terms.size();
                        const Rational part(num(rng), den(rng));
                        const Index idx = terms[pick].index;
                        terms[pick].coeff = terms[pick].coeff - part;
                        terms.push_back({part, idx});
                        w = SimpleFunction(s, std::move(terms));
                    }
                    break;
                case 2:
                    terms.push_back({Rational(0), static_cast<Index>(rng() % s->index_count())});
                    w = SimpleFunction(s, std::move(terms));
                    break;
                default:
                    w = disjrep(w).fn;
                    break;
            }
        }
        if (!sf_equal(v, w))
            return fail("pair " + std::to_string(i) + ": rewriting changed the function: " +
                        sf_str(v) + " vs " + sf_str(w));
        if (integral(v) != integral(w))
            return fail("pair " + std::to_string(i) + ": integrals differ: " + integral(v).str() +
                        " vs " + integral(w).str() + " for " + sf_str(v) + " vs " + sf_str(w));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 4. Disjoint representation: full sweep over three-element ground sets.

Outcome criterion_disjrep() {
    const SpacePtr s = dirac3();
    const long coeffs[] = {-2, -1, 0, 1, 2};
    const std::size_t indices = s->index_count();  // 8
    const std::size_t options = 5 * indices;       // one (coeff, index) choice

    std::vector<SimpleTerm> terms;
    std::function<Outcome(std::size_t)> sweep = [&](std::size_t remaining) -> Outcome {
        const SimpleFunction v(s, terms);
        const DisjointRep d = disjrep(v);
        if (!sf_equal(v, d.fn))
            return fail("disjoint rewrite changed the function for " + sf_str(v));
        const auto& out = d.fn.terms();
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                const ComplementedSubset meet =
                    cs_meet(s->family(out[i].index), s->family(out[j].index));
                if (meet.pos() != 0)
                    return fail("pieces overlap in the disjoint rewrite of " + sf_str(v));
            }
        Rational sum(0);
        for (const auto& t : out) sum += t.coeff * s->measure(t.index);
        if (sum != integral(v))
            return fail("measure sum " + sum.str() + " differs from the integral " +
                        integral(v).str() + " for " + sf_str(v));
        if (remaining == 0) return {};
        for (std::size_t pick = 0; pick < options; ++pick) {
            terms.push_back({Rational(coeffs[pick % 5]), static_cast<Index>(pick / 5)});
            const Outcome r = sweep(remaining - 1);
            terms.pop_back();
            if (!r.pass) return r;
        }
        return {};
    };
    return sweep(3);
}

// ---------------------------------------------------------------------------
// 5. Simple-function integration axioms on point-mass and weighted spaces.

Outcome criterion_pis_simple() {
    CheckConfig config;  // 200 samples, precision 16
    for (const SpacePtr& s : {dirac3(), weighted3()}) {
        const Report r = check_pis_simple(s, config);
        if (!r.ok()) return fail("integration axioms failed on " + s->name() + ": " + r.summary());
        for (const char* prefix : {"pis1", "pis2", "pis3", "pis4"}) {
            const bool present = std::any_of(r.entries.begin(), r.entries.end(), [&](const auto& e) {
                return e.id.rfind(prefix, 0) == 0;
            });
            if (!present) return fail(std::string("no ") + prefix + " entry in the report for " + s->name());
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// 6. Double-series rearrangement with certified moduli.

Outcome criterion_double_series() {
    // series A: x(n,k) = 2^-(n+k), total 1, row n sums to 2^-n
    // series B: x(n,k) = (-1)^k 2^-(n+k), total -1/3, row n sums to -2^-n/3
    auto entry_a = [](long n, long k) { return ModulatedReal::from_rational(Rational::pow2(-(n + k))); };
    auto entry_b = [](long n, long k) {
        const Rational v = Rational::pow2(-(n + k));
        return ModulatedReal::from_rational(k % 2 == 0 ? v : -v);
    };
    auto rational_a = [](long n, long k) { return Rational::pow2(-(n + k)); };
    auto rational_b = [](long n, long k) {
        const Rational v = Rational::pow2(-(n + k));
        return k % 2 == 0 ? v : -v;
    };
    const auto row_mod = [](long, long p) { return std::max<long>(p, 0) + 1; };
    const Modulus outer_mod = [](long p) { return std::max<long>(p, 0) + 1; };

    const DoubleSeq series_a{entry_a, row_mod, outer_mod, row_mod, outer_mod};
    const DoubleSeq series_b{entry_b, row_mod, outer_mod, row_mod, outer_mod};
    const FlatSeries flat_a = rearrange_double(series_a, true);
    const FlatSeries flat_b = rearrange_double(series_b, false);

    const Rational total_a(1);
    const Rational total_b(-1, 3);

    auto direct_partial = [](long upto, const std::function<Rational(long, long)>& x) {
        Rational sum(0);
        for (long m = 1; m <= upto; ++m) {
            const auto [n, k] = unpair1(m);
            sum += x(n, k);
        }
        return sum;
    };

    // the constructed modulus certifies the flattened partial sums
    long prev_a = 0, prev_b = 0;
    for (long p = 0; p <= 20; ++p) {
        const long na = flat_a.modulus(p);
        const long nb = flat_b.modulus(p);
        if (na <= prev_a || nb <= prev_b) return fail("flat modulus is not strictly increasing");
        prev_a = na;
        prev_b = nb;
        const Rational da = (direct_partial(na, rational_a) - total_a).abs();
        const Rational db = (direct_partial(nb, rational_b) - total_b).abs();
        if (da > Rational::pow2(-p))
            return fail("positive series: partial at the modulus for p=" + std::to_string(p) +
                        " is off by " + da.str());
        if (db > Rational::pow2(-p))
            return fail("alternating series: partial at the modulus for p=" + std::to_string(p) +
                        " is off by " + db.str());
    }

    // independently derived diagonal closed forms pin the enumeration order:
    // summing every complete diagonal up to s gives 1 - (s+1)*2^-s for the
    // positive series and -(1/3)*(1 - 4^-floor(s/2)) for the alternating one.
    for (long s = 2; s <= 30; ++s) {
        const long upto = s * (s - 1) / 2;
        const Rational closed_a = Rational(1) - Rational(s + 1) * Rational::pow2(-s);
        const Rational closed_b =
            Rational(-1, 3) * (Rational(1) - Rational::pow2(-2 * (s / 2)));
        if (direct_partial(upto, rational_a) != closed_a)
            return fail("diagonal closed form mismatch in the positive series at s=" + std::to_string(s));
        if (direct_partial(upto, rational_b) != closed_b)
            return fail("diagonal closed form mismatch in the alternating series at s=" + std::to_string(s));
    }

    // converse direction: rebuild rows from the flat series
    const std::vector<long> precisions{10, 12};
    const auto check_rows = [&](const FlatSeries& flat, std::function<ModulatedReal(long)> term,
                                const Rational& total, const Rational& row_scale,
                                const char* label) -> Outcome {
        const UnflattenResult u = unflatten_check(std::move(term), flat.abs_modulus, precisions);
        if (!u.report.ok())
            return fail(std::string(label) + ": flat and double sums disagree: " + u.report.summary());
        const Rational tol = Rational::pow2(-12);
        if ((approx_to(u.flat_sum, 14) - total).abs() > tol)
            return fail(std::string(label) + ": flat sum misses the closed form");
        if ((approx_to(u.double_sum, 14) - total).abs() > tol)
            return fail(std::string(label) + ": double sum misses the closed form");
        for (long n = 1; n <= 6; ++n) {
            const Rational row = approx_to(u.row_sum(n), 14);
            const Rational closed = row_scale * Rational::pow2(-n);
            if ((row - closed).abs() > tol)
                return fail(std::string(label) + ": row " + std::to_string(n) +
                            " reconstructs to " + row.str() + " instead of " + closed.str());
        }
        return {};
    };
    if (Outcome r = check_rows(flat_a, flat_a.term, total_a, Rational(1), "positive series"); !r.pass)
        return r;
    if (Outcome r = check_rows(flat_b, flat_b.term, total_b, Rational(-1, 3), "alternating series");
        !r.pass)
        return r;
    return {};
}

// ---------------------------------------------------------------------------
// 7. Norm axioms on finite-support representations, exact arithmetic.

Representation random_finite(std::mt19937_64& rng, const SpacePtr& s) {
    std::vector<SimpleFunction> terms;
    const auto count = rng() % 4;
    for (unsigned long t = 0; t < count; ++t) terms.push_back(random_simple(rng, s, 3));
    return rep_from_terms(s, std::move(terms));
}

Outcome criterion_norm_axioms() {
    const SpacePtr s = dirac3();
    std::mt19937_64 rng(7052);
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    const Representation zero = rep_from_terms(s, {});
    if (!norm1_exact(zero).is_zero()) return fail("the zero representation has nonzero norm");
    for (int i = 0; i < 500; ++i) {
        const Representation a = random_finite(rng, s);
        const Representation b = random_finite(rng, s);
        const Rational c(num(rng), den(rng));
        const Rational na = norm1_exact(a);
        const Rational nb = norm1_exact(b);
        if (na.sgn() < 0) return fail("negative norm on triple " + std::to_string(i));
        if (na.is_zero() && eq_int(a, zero, 20) != EqInt::equal_within)
            return fail("norm zero but not identified with zero on triple " + std::to_string(i));
        if (norm1_exact(rep_scale(c, a)) != c.abs() * na)
            return fail("absolute homogeneity fails for c=" + c.str() + " on triple " +
                        std::to_string(i));
        if (norm1_exact(rep_add(a, b)) > na + nb)
            return fail("triangle inequality fails on triple " + std::to_string(i));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 8. Compression keeps the function and controls the absolute mass.

Outcome criterion_compression() {
    const SpacePtr s = weighted3();
    const SimpleFunction bases[] = {
        SimpleFunction(s, {{q(1), 0b001}}),
        SimpleFunction(s, {{q(3, 2), 0b011}, {q(-2), 0b110}}),
        SimpleFunction(s, {{q(1), 0b111}}),
    };
    const Rational ratios[] = {q(1, 2), q(1, 3), q(-2, 3), q(3, 4)};
    const long probes[] = {4, 10, 16, 20};

    for (const auto& base : bases) {
        for (const auto& ratio : ratios) {
            const Representation alpha = rep_geometric(base, ratio);
            const Rational r = ratio.abs();
            // exact closed forms for the series of (absolute) integrals
            const Rational series_norm = integral(abs_sf(base)) * r / (Rational(1) - r);
            const Rational series_value = integral(base) * ratio / (Rational(1) - ratio);

            for (long level = 0; level <= 16; ++level) {
                const Representation beta = compress(alpha, level);
                const long upto = beta.tail_modulus(21);
                Rational mass(0);
                for (long k = 1; k <= upto; ++k) mass += integral(abs_sf(beta.term(k)));
                // the full series exceeds this partial mass by at most 2^-21
                if (mass + Rational::pow2(-21) >
                    series_norm + Rational::pow2(-level) + Rational::pow2(-20))
                    return fail("mass bound fails at level " + std::to_string(level) + ", ratio " +
                                ratio.str() + ": " + mass.str() + " vs " + series_norm.str());
                for (const long p : probes) {
                    const Rational approx = approx_to(integral_rep(beta), p);
                    if ((approx - series_value).abs() > Rational::pow2(-p))
                        return fail("integral drifts after compression at level " +
                                    std::to_string(level) + ", precision " + std::to_string(p));
                }
            }
            for (const long p : probes) {
                const Rational approx = approx_to(integral_rep(alpha), p);
                if ((approx - series_value).abs() > Rational::pow2(-p))
                    return fail("integral of the uncompressed stream drifts at precision " +
                                std::to_string(p));
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// 9. Limits of Cauchy sequences land at the expected representation.

Outcome criterion_cauchy_limit() {
    const SpacePtr s = weighted3();
    const SimpleFunction v(s, {{q(3, 2), 0b011}, {q(-2), 0b110}});
    const Rational vnorm = integral(abs_sf(v));  // 20/3
    // distance between terms n,m >= N is |2^-n - 2^-m| * vnorm <= 2^-(N+4) * 20/3
    auto gamma = [&](long n) {
        return embed(scalar_mul(Rational(1) - Rational::pow2(-n), v));
    };
    const Modulus modulus = [](long p) { return std::max<long>(p, 0) + 4; };
    const CauchyLimit result = limit_of_cauchy(gamma, modulus);

    for (long p = 0; p <= 16; ++p) {
        const long n = result.modulus(p);
        // exact: the sequence itself is within 2^-p of its limit function
        const Rational gap = Rational::pow2(-n) * vnorm;
        if (gap > Rational::pow2(-p))
            return fail("returned modulus too weak at p=" + std::to_string(p) + ": residual " +
                        gap.str());
        // approximate: the constructed limit is at distance zero from embed(v)
        const Representation diff =
            rep_add(result.limit, rep_scale(Rational(-1), embed(v)));
        const Rational d = approx_to(norm1(diff), p);
        if (d.abs() > Rational::pow2(-p))
            return fail("limit sits " + d.str() + " away from the target at p=" + std::to_string(p));
    }

    // constant sequences come back exactly
    auto constant = [&](long) { return embed(v); };
    const CauchyLimit fixed = limit_of_cauchy(constant, [](long p) { return std::max<long>(p, 0) + 1; });
    const Representation cdiff = rep_add(fixed.limit, rep_scale(Rational(-1), embed(v)));
    if (!approx_to(norm1(cdiff), 30).is_zero())
        return fail("constant sequence does not return its value exactly");
    if (approx_to(integral_rep(fixed.limit), 30) != integral(v))
        return fail("constant sequence integral is not preserved exactly");
    return {};
}

// ---------------------------------------------------------------------------
// 10. The completion checker accepts the point-mass base space.

Outcome criterion_completion_checker() {
    CheckConfig config;  // precision 16
    const Report r = check_pis_completion(dirac3(), config);
    if (!r.ok()) return fail("completion checker failed: " + r.summary());
    for (const char* id : {"partial-sums-converge", "embedded-simple-dense"}) {
        const bool present = std::any_of(r.entries.begin(), r.entries.end(),
                                         [&](const auto& e) { return e.id == id; });
        if (!present) return fail(std::string("report lacks the '") + id + "' check");
    }
    return {};
}

// ---------------------------------------------------------------------------
// 11. The command line tool end to end.

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& dir, const std::string& args) {
    RunResult r;
    const std::string command = std::string(EXM_BINARY) + " " + args + " 2>" + dir + "/err.txt";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return r;
    char chunk[4096];
    std::size_t got = 0;
    while ((got = fread(chunk, 1, sizeof chunk, pipe)) > 0) r.out.append(chunk, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

Outcome criterion_cli() {
    std::string dir = (std::filesystem::temp_directory_path() / "exm_accept_XXXXXX").string();
    if (!mkdtemp(dir.data())) return fail("cannot create a scratch directory");
    const auto write = [&](const char* name, const std::string& text) {
        std::ofstream out(dir + "/" + name);
        out << text;
        return dir + "/" + name;
    };
    const std::string dirac_file = write("dirac.json",
        R"({"ground_set": ["a", "b", "c"], "measure": {"type": "dirac", "point": "a"}})");
    const std::string weighted_file = write("weighted.json",
        R"({"ground_set": ["a", "b", "c"],
            "measure": {"type": "weighted", "weights": {"a": "1", "b": "1/3", "c": "5/2"}}})");
    const std::string broken_file = write("broken.json",
        R"({"ground_set": ["a", "b"],
            "measure": {"type": "weighted", "weights": {"a": "1", "b": "-1/3"}}})");
    const std::string mutant_file = write("mutant.json",
        R"({"ground_set": ["a"],
            "measure": {"type": "table", "family": [["1", "0"], ["0", "1"]], "values": ["1", "1"]}})");

    struct Expect {
        std::string args;
        int code;
        std::string out;  // empty: only the exit code matters
    };
    const Expect cases[] = {
        {"integrate " + dirac_file + R"( --simple '[["2", "100"], ["3", "010"]]')", 0, "2\n"},
        {"integrate " + dirac_file + " --simple '[]'", 0, "0\n"},
        {"integrate " + weighted_file +
             R"( --rep '{"geometric": {"base": [["1", "100"]], "ratio": "1/2"}}')",
         0, "1 ± 2^-16\n"},
        {"pair 4 1", 0, "7\n"},
        {"pair --inverse 1", 0, "(1,1)\n"},
        {"norm " + weighted_file + R"( --rep '{"support": []}')", 0, "0\n"},
        {"integrate " + broken_file + " --simple '[]'", 2, ""},
        {"check " + dirac_file, 0, ""},
    };
    for (const auto& c : cases) {
        const RunResult r = run_cli(dir, c.args);
        if (r.code != c.code)
            return fail("'" + c.args + "' exited " + std::to_string(r.code) + ", expected " +
                        std::to_string(c.code));
        if (!c.out.empty() && r.out != c.out)
            return fail("'" + c.args + "' printed \"" + r.out + "\", expected \"" + c.out + "\"");
    }

    const RunResult mutant = run_cli(dir, "check " + mutant_file + " --suite pms");
    if (mutant.code != 1)
        return fail("the broken-measure space exited " + std::to_string(mutant.code) +
                    ", expected 1");
    if (mutant.out.find("\"fail\"") == std::string::npos ||
        mutant.out.find("counterexample") == std::string::npos)
        return fail("the failing report carries no counterexample");
    return {};
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* label;
        double budget_seconds;  // 0: no budget
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "complemented-subset laws and characteristic identities, exhaustive to four elements",
         30.0, criterion_algebra},
        {2, "point-mass spaces pass the measure axioms for every point up to four elements", 60.0,
         criterion_dirac_axioms},
        {3, "rewritten term lists keep bit-identical integrals (500 seeded pairs)", 0,
         criterion_integral_well_defined},
        {4, "disjoint representation contract, full sweep over three-element spaces", 0,
         criterion_disjrep},
        {5, "simple-function integration axioms on point-mass and weighted spaces", 0,
         criterion_pis_simple},
        {6, "double-series rearrangement moduli and row reconstruction", 10.0,
         criterion_double_series},
        {7, "norm axioms on finite-support representations (500 seeded triples)", 0,
         criterion_norm_axioms},
        {8, "compression bounds the absolute mass and keeps the integral", 0,
         criterion_compression},
        {9, "Cauchy sequences converge to their limit with the returned modulus", 0,
         criterion_cauchy_limit},
        {10, "completion checker passes on the point-mass base space", 0,
         criterion_completion_checker},
        {11, "command line end to end: printed values and exit codes", 0, criterion_cli},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& ex) {
            outcome = fail(std::string("unexpected exception: ") + ex.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.pass && c.budget_seconds > 0 && elapsed > c.budget_seconds)
            outcome = fail("runtime budget of " + std::to_string(c.budget_seconds) +
                           "s exceeded");
        std::ostringstream line;
        line << (outcome.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.number << "  "
             << c.label << "  [" << std::fixed << std::setprecision(2) << elapsed << "s]";
        if (!outcome.pass) line << "  -- " << outcome.reason;
        std::cout << line.str() << "\n";
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) {
        std::cout << failures << " of 11 criteria failed\n";
        return 1;
    }
    std::cout << "all 11 criteria passed\n";
    return 0;
}
