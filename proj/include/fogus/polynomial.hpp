#pragma once

#include "fogus/matrix.hpp"
#include "fogus/rational.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace fogus {

/// Univariate polynomial over Q, coefficients lowest degree first.  The zero
/// polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    /// x - r
    static Polynomial linear_root(const Rational& r);
    static Polynomial monomial(const Rational& c, std::size_t degree);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

    Rational operator()(const Rational& x) const;
    Polynomial derivative() const;
    Polynomial monic() const;
    /// x^d P(c/x) with d = deg P.
    Polynomial reversal(const Rational& c) const;
    /// P(c x)
    Polynomial scale_argument(const Rational& c) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder of a / b, b nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// P / gcd(P, P'), monic.
Polynomial squarefree_part(const Polynomial& p);
/// Yun decomposition: pairs (Q_k, k) with P = lc * prod Q_k^k, Q_k monic,
/// squarefree, pairwise coprime and nonconstant.
std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p);

/// det(x I - A) by Faddeev-LeVerrier.
Polynomial charpoly(const Matrix& a);
/// Companion matrix of a monic polynomial of degree >= 1.
Matrix companion(const Polynomial& monic);

/// Sturm sequence of a squarefree polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& squarefree);
    int variations_at(const Rational& x) const;
    int variations_at_plus_infinity() const;
    int variations_at_minus_infinity() const;
    /// Number of distinct real roots.
    int real_roots() const { return variations_at_minus_infinity() - variations_at_plus_infinity(); }
    /// Number of distinct real roots in (a, +inf).
    int roots_above(const Rational& a) const { return variations_at(a) - variations_at_plus_infinity(); }

private:
    std::vector<Polynomial> seq_;
};

}  // namespace fogus
