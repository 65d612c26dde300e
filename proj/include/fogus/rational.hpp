#pragma once

// Exact rational numbers backed by GMP.  Values are always kept in lowest
// terms with a positive denominator.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace fogus {

class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}                                   // NOLINT
    Rational(int n) : v_(n) {}                                    // NOLINT
    Rational(long long n) : v_(static_cast<long>(n)) {}           // NOLINT
    Rational(long num, long den);
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "a", "-a", "a/b" (b != 0).  The result is reduced.
    static Rational parse(std::string_view text);
    /// Exact value of a finite double.
    static Rational from_double(double d);

    /// Canonical text: "a" for integers, "a/b" otherwise.
    std::string to_string() const;
    double to_double() const { return v_.get_d(); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    mpq_class v_{0};
};

Rational abs(const Rational& r);
/// r^e for any integer exponent (r != 0 when e < 0).
Rational pow(const Rational& r, long e);
/// floor(r) as an integer.
mpz_class floor(const Rational& r);
/// Nearest multiple of 2^-bits (ties rounded up).
Rational round_dyadic(const Rational& r, unsigned bits);
/// Rational lower / upper bounds of sqrt(r), r >= 0, within 2^-bits.
Rational sqrt_lower(const Rational& r, unsigned bits);
Rational sqrt_upper(const Rational& r, unsigned bits);

}  // namespace fogus
