#include "exmeasure/rational.hpp"

#include <cctype>

namespace exm {

Rational Rational::parse(std::string_view s) {
    // Accepted grammar: ['-'] digits ['/' ['-'] digits]. GMP would also accept
    // whitespace and other bases; we deliberately do not.
    auto valid_part = [](std::string_view t) {
        if (!t.empty() && t.front() == '-') t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = s.find('/');
    const std::string_view num_part = s.substr(0, slash);
    if (!valid_part(num_part)) throw std::invalid_argument("Rational::parse: bad numerator in '" + std::string(s) + "'");
    mpz_class num(std::string(num_part), 10);
    mpz_class den(1);
    if (slash != std::string_view::npos) {
        const std::string_view den_part = s.substr(slash + 1);
        if (!valid_part(den_part)) throw std::invalid_argument("Rational::parse: bad denominator in '" + std::string(s) + "'");
        den = mpz_class(std::string(den_part), 10);
        if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + std::string(s) + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::pow2(long e) {
    mpz_class p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    mpq_class q = e < 0 ? mpq_class(1, p) : mpq_class(p, 1);
    q.canonicalize();
    return Rational(std::move(q));
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

std::string Rational::str() const {
    return is_integer() ? v_.get_num().get_str() : v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

namespace {

// Stern-Brocot walk for the simplest rational in [lo, hi], 0 < lo <= hi.
Rational simplest_positive(const Rational& lo, const Rational& hi) {
    const mpz_class fl = lo.floor();
    if (Rational(mpq_class(lo.ceil())) <= hi) return Rational(mpq_class(lo.ceil()));
    // lo and hi share the integer part fl; recurse on the reciprocal tail.
    const Rational flq{mpq_class(fl)};
    const Rational tail = simplest_positive(Rational(1) / (hi - flq), Rational(1) / (lo - flq));
    return flq + Rational(1) / tail;
}

}  // namespace

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_in_interval: empty interval");
    if (lo.sgn() <= 0 && hi.sgn() >= 0) return Rational(0);
    if (hi.sgn() < 0) return -simplest_positive(-hi, -lo);
    return simplest_positive(lo, hi);
}

}  // namespace exm
