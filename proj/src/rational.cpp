#include "fogus/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace fogus {

namespace {

bool valid_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer_text(text))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        return Rational(parse_integer(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_integer_text(num) || den.empty() || !valid_integer_text(den) || den.front() == '-' ||
        den.front() == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    const mpz_class d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) throw std::domain_error("non-finite double");
    return Rational(mpq_class(d));
}

std::string Rational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, long e) {
    if (e < 0) {
        if (r.is_zero()) throw std::domain_error("zero to a negative power");
        return Rational(1) / pow(r, -e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);
}

mpz_class floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
    return q;
}

Rational round_dyadic(const Rational& r, unsigned bits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    const mpz_class n = floor(r * Rational(scale) + Rational(1, 2));
    return Rational(n, scale);
}

Rational sqrt_lower(const Rational& r, unsigned bits) {
    if (r.sign() < 0) throw std::domain_error("sqrt of negative rational");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    const mpz_class x = floor(r * Rational(mpz_class(scale * scale)));
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
    return Rational(s, scale);
}

Rational sqrt_upper(const Rational& r, unsigned bits) {
    if (r.sign() < 0) throw std::domain_error("sqrt of negative rational");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    const Rational scaled = r * Rational(mpz_class(scale * scale));
    mpz_class x = floor(scaled);
    if (Rational(x) != scaled) x += 1;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
    if (s * s < x) s += 1;
    return Rational(s, scale);
}

}  // namespace fogus
