#include "fogus/polynomial.hpp"

#include "fogus/errors.hpp"

#include <stdexcept>

namespace fogus {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::linear_root(const Rational& r) { return Polynomial({-r, Rational(1)}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
}

Polynomial Polynomial::reversal(const Rational& c) const {
    // x^d P(c/x) = sum a_k c^k x^{d-k}
    if (is_zero()) return {};
    const std::size_t d = c_.size() - 1;
    std::vector<Rational> r(d + 1);
    Rational ck = 1;
    for (std::size_t k = 0; k <= d; ++k) {
        r[d - k] = c_[k] * ck;
        ck *= c;
    }
    return Polynomial(std::move(r));
}

Polynomial Polynomial::scale_argument(const Rational& c) const {
    std::vector<Rational> r = c_;
    Rational ck = 1;
    for (auto& a : r) {
        a *= ck;
        ck *= c;
    }
    return Polynomial(std::move(r));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial operator*(Polynomial a, const Rational& s) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational& a = p.c_[static_cast<std::size_t>(k)];
        if (a.is_zero()) continue;
        if (!first) os << (a.sign() < 0 ? " - " : " + ");
        else if (a.sign() < 0) os << "-";
        first = false;
        const Rational m = abs(a);
        if (k == 0 || m != Rational(1)) os << m;
        if (k >= 1) os << (k == 0 || m != Rational(1) ? "*x" : "x");
        if (k >= 2) os << "^" << k;
    }
    return os;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational inv = Rational(1) / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        const Rational f = rem[static_cast<std::size_t>(k)] * inv;
        q[static_cast<std::size_t>(k - db)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.degree() <= 0) return p.is_zero() ? p : Polynomial({Rational(1)});
    return divmod(p, gcd(p, p.derivative())).first.monic();
}

std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p) {
    std::vector<std::pair<Polynomial, unsigned>> out;
    if (p.degree() <= 0) return out;
    const Polynomial f = p.monic();
    const Polynomial fp = f.derivative();
    Polynomial a = gcd(f, fp);
    Polynomial b = divmod(f, a).first;
    Polynomial c = divmod(fp, a).first;
    Polynomial d = c - b.derivative();
    unsigned k = 1;
    while (b.degree() > 0) {
        Polynomial g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, k);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
        ++k;
    }
    return out;
}

Polynomial charpoly(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("charpoly of a non-square matrix");
    const std::size_t n = a.rows();
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        const Matrix am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return Polynomial(std::move(c));
}

Matrix companion(const Polynomial& p) {
    if (!p.is_monic() || p.degree() < 1) throw NonMonic();
    const auto n = static_cast<std::size_t>(p.degree());
    Matrix c(n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(i);
    return c;
}

SturmSequence::SturmSequence(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("Sturm sequence of zero polynomial");
    seq_.push_back(p);
    Polynomial prev = p, cur = p.derivative();
    while (!cur.is_zero()) {
        seq_.push_back(cur);
        Polynomial r = divmod(prev, cur).second * Rational(-1);
        prev = std::move(cur);
        cur = std::move(r);
    }
}

namespace {

int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

int SturmSequence::variations_at(const Rational& x) const {
    std::vector<int> s;
    s.reserve(seq_.size());
    for (const auto& q : seq_) s.push_back(q(x).sign());
    return count_variations(s);
}

int SturmSequence::variations_at_plus_infinity() const {
    std::vector<int> s;
    for (const auto& q : seq_) s.push_back(q.leading().sign());
    return count_variations(s);
}

int SturmSequence::variations_at_minus_infinity() const {
    std::vector<int> s;
    for (const auto& q : seq_) s.push_back(q.degree() % 2 == 0 ? q.leading().sign() : -q.leading().sign());
    return count_variations(s);
}

}  // namespace fogus
