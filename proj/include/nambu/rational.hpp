#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace nambu {

/// Exact rational scalar over arbitrary-precision integers.
///
/// Invariants: always reduced to lowest terms, denominator > 0, zero is
/// stored uniquely as 0/1. Arithmetic never leaves canonical form.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}

    Rational(long num, long den) {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Parses "a" or "a/b" with optional leading '-'. No decimals.
    static Rational parse(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("Rational: bad literal '" + text + "'");
        if (q.get_den() == 0)
            throw std::domain_error("Rational: zero denominator in '" + text + "'");
        q.canonicalize();
        return Rational(std::move(q), raw_t{});
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    /// "a" or "a/b", denominator omitted when 1.
    std::string str() const { return v_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-v_), raw_t{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_), raw_t{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_), raw_t{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_), raw_t{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero())
            throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_), raw_t{});
    }

    Rational& operator+=(const Rational& o) {
        v_ += o.v_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        v_ -= o.v_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        v_ *= o.v_;
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

private:
    struct raw_t {};
    Rational(mpq_class q, raw_t) : v_(std::move(q)) {}

    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace nambu
