#pragma once

/**
 * @file rational.hpp
 * Exact rational arithmetic used throughout the kernel.
 *
 * Thin value wrapper around GMP's mpq_class that keeps every value in
 * canonical form: numerator and denominator coprime, denominator > 0.
 * All measure values, coefficients and approximation terms in this
 * library are of this type; no floating point enters any computation.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exm {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int -> Q
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) {
        if (v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }

    /// Parse "p", "-p" or "p/q" (arbitrary precision). Throws std::invalid_argument.
    static Rational parse(std::string_view s);

    /// 2^e for any integer e (negative exponents give 1/2^-e).
    static Rational pow2(long e);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    int sgn() const { return ::sgn(v_); }
    bool is_zero() const { return sgn() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// Largest integer <= value / smallest integer >= value.
    mpz_class floor() const;
    mpz_class ceil() const;

    /// "p" when the denominator is 1, else "p/q".
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return ::cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = ::cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_;  // canonical: gcd(num,den)=1, den>0
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

/// The (unique) simplest rational in the closed interval [lo, hi]:
/// minimal denominator, and among those minimal |numerator|.
/// Used when printing approximations so that e.g. an interval around
/// 0.9999999 containing 1 prints as "1".
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

}  // namespace exm
