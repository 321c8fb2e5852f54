#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "cramer/errors.hpp"

namespace cramer {

/// Arbitrary-precision rational scalar.
///
/// Thin value wrapper around GMP's mpq_class that keeps every instance
/// canonical: lowest terms, positive denominator, zero stored as 0/1.
/// All arithmetic in the library goes through this type; there is no
/// floating point anywhere in the core.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : value_(num, den) {
        if (den == 0) throw ParameterError("Rational: zero denominator");
        value_.canonicalize();
    }
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    /// Parses "p" or "p/q" (arbitrary precision).
    static Rational from_string(const std::string& text) {
        mpq_class v;
        if (v.set_str(text, 10) != 0)
            throw ParameterError("Rational: cannot parse '" + text + "'");
        if (v.get_den() == 0) throw ParameterError("Rational: zero denominator");
        v.canonicalize();
        return Rational(std::move(v));
    }

    const mpq_class& raw() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    int sign() const { return sgn(value_); }

    /// True when the value is an integer (denominator 1).
    bool is_integer() const { return value_.get_den() == 1; }

    /// Canonical text form: "p" when the denominator is 1, else "p/q".
    std::string str() const { return value_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw SingularMatrixError("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
        return os << q.value_.get_str();
    }

    /// Integer power; negative exponents require a nonzero base.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        Rational base = *this;
        if (e < 0) {
            if (is_zero()) throw SingularMatrixError("Rational: 0 to a negative power");
            base = Rational(1) / base;
            e = -e;
        }
        Rational acc(1);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Canonical-form invariant check (used by tests).
    bool is_canonical() const {
        if (sgn(value_.get_den()) <= 0) return false;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), value_.get_num().get_mpz_t(), value_.get_den().get_mpz_t());
        if (sgn(value_.get_num()) == 0) return value_.get_den() == 1;
        return g == 1;
    }

private:
    mpq_class value_;
};

} // namespace cramer
