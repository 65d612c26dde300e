#include "fogus/root_moduli.hpp"

#include "fogus/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace fogus {

bool ModulusInterval::contains_sqrt_of(const Rational& c) const {
    return lower * lower <= c && c <= upper * upper;
}

Rational default_precision() { return pow(Rational(10), -20); }

namespace {

struct Gauss {
    Rational re, im;
};

Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
Gauss operator*(const Gauss& a, const Gauss& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rational norm2(const Gauss& a) { return a.re * a.re + a.im * a.im; }
bool is_zero(const Gauss& a) { return a.re.is_zero() && a.im.is_zero(); }
bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
Gauss divide(const Gauss& a, const Gauss& b) {
    const Rational n = norm2(b);
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Gauss round(const Gauss& a, unsigned bits) { return {round_dyadic(a.re, bits), round_dyadic(a.im, bits)}; }

// Value and derivative of p at z (Horner).
std::pair<Gauss, Gauss> evaluate(const Polynomial& p, const Gauss& z) {
    Gauss v{0, 0}, d{0, 0};
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + v;
        v = v * z + Gauss{*it, 0};
    }
    return {v, d};
}

// Aberth iteration in double precision from points spread on a circle
// enclosing the roots.  Only used for starting values.
std::vector<std::complex<double>> floating_start(const Polynomial& q) {
    const std::size_t m = static_cast<std::size_t>(q.degree());
    std::vector<std::complex<double>> coef(m + 1);
    double bound = 0;
    for (std::size_t k = 0; k <= m; ++k) {
        coef[k] = q.coeff(k).to_double();
        if (k < m) bound = std::max(bound, std::abs(coef[k].real()));
    }
    double radius = 1 + bound;
    if (!std::isfinite(radius)) radius = 1;
    // a tighter scale: geometric mean of |a_0|^(1/m)
    const double g = std::pow(std::abs(coef[0].real()), 1.0 / static_cast<double>(m));
    if (std::isfinite(g) && g > 0) radius = std::min(radius, 2 * g + 1e-3);
    std::vector<std::complex<double>> z(m);
    for (std::size_t k = 0; k < m; ++k)
        z[k] = std::polar(radius, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) + 0.4);

    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0, d = 0;
        for (std::size_t k = m + 1; k-- > 0;) {
            d = d * x + v;
            v = v * x + coef[k];
        }
        return std::pair{v, d};
    };
    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0;
        for (std::size_t i = 0; i < m; ++i) {
            auto [v, d] = eval(z[i]);
            if (v == 0.0) continue;
            const std::complex<double> w = v / d;
            std::complex<double> s = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            const std::complex<double> step = w / (1.0 - w * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-15 * (1 + radius)) break;
    }
    for (auto& x : z)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) x = {0.5, 0.5};
    return z;
}

struct Component {
    Rational lower, upper;
    unsigned count;
};

// Smith's inclusion theorem for monic squarefree q with distinct
// approximations z: disks D(z_i, m |q(z_i)| / prod_{j!=i} |z_i - z_j|).
std::vector<Component> smith_components(const Polynomial& q, const std::vector<Gauss>& z, unsigned bits) {
    const std::size_t m = z.size();
    std::vector<Rational> radius(m), mod_lo(m), mod_hi(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational denom = 1;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) denom *= norm2(z[i] - z[j]);
        const Rational num = norm2(evaluate(q, z[i]).first) * Rational(static_cast<long>(m * m));
        radius[i] = sqrt_upper(num / denom, bits);
        const Rational n2 = norm2(z[i]);
        mod_lo[i] = sqrt_lower(n2, bits);
        mod_hi[i] = sqrt_upper(n2, bits);
    }
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Rational reach = radius[i] + radius[j];
            if (norm2(z[i] - z[j]) <= reach * reach) parent[find(i)] = find(j);
        }
    std::vector<Component> out;
    std::vector<long> slot(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = find(i);
        Rational lo = mod_lo[i] - radius[i];
        if (lo.sign() < 0) lo = 0;
        const Rational hi = mod_hi[i] + radius[i];
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(out.size());
            out.push_back({lo, hi, 1});
        } else {
            auto& c = out[static_cast<std::size_t>(slot[r])];
            c.lower = std::min(c.lower, lo);
            c.upper = std::max(c.upper, hi);
            ++c.count;
        }
    }
    return out;
}

// Root-modulus components of a monic squarefree polynomial of degree >= 2,
// each of width <= target.
std::vector<Component> isolate(const Polynomial& q, const Rational& target) {
    const std::size_t m = static_cast<std::size_t>(q.degree());
    std::vector<Gauss> z;
    z.reserve(m);
    for (const auto& c : floating_start(q))
        z.push_back({Rational::from_double(c.real()), Rational::from_double(c.imag())});

    for (unsigned bits = 64; bits <= (1u << 14); bits *= 2) {
        const Rational tiny = pow(Rational(2), -static_cast<long>(bits));
        const Rational nudge = pow(Rational(2), -static_cast<long>(bits / 2));
        for (int iter = 0; iter < 60; ++iter) {
            std::vector<Gauss> next = z;
            Rational max_step = 0;
            for (std::size_t i = 0; i < m; ++i) {
                auto [v, d] = evaluate(q, z[i]);
                if (is_zero(v)) continue;
                if (is_zero(d)) {
                    next[i] = z[i] + Gauss{nudge, nudge};
                    max_step = std::max(max_step, nudge);
                    continue;
                }
                const Gauss w = divide(v, d);
                Gauss s{0, 0};
                bool clash = false;
                for (std::size_t j = 0; j < m && !clash; ++j) {
                    if (j == i) continue;
                    const Gauss diff = z[i] - z[j];
                    if (is_zero(diff)) clash = true;
                    else s = s + divide(Gauss{1, 0}, diff);
                }
                if (clash) {
                    next[i] = z[i] + Gauss{nudge, -nudge};
                    max_step = std::max(max_step, nudge);
                    continue;
                }
                const Gauss denom = Gauss{1, 0} - w * s;
                const Gauss step = is_zero(denom) ? w : divide(w, denom);
                next[i] = round(z[i] - step, bits);
                max_step = std::max(max_step, norm2(step));
            }
            z = std::move(next);
            if (max_step <= tiny * tiny) break;
        }
        bool distinct = true;
        for (std::size_t i = 0; i < m && distinct; ++i)
            for (std::size_t j = i + 1; j < m && distinct; ++j)
                if (z[i] == z[j]) distinct = false;
        if (!distinct) continue;
        auto comps = smith_components(q, z, bits + 8);
        const bool ok = std::all_of(comps.begin(), comps.end(),
                                    [&](const Component& c) { return c.upper - c.lower <= target; });
        if (ok) return comps;
    }
    throw Error("certified_root_moduli: refinement did not reach the requested precision");
}

std::vector<ModulusInterval> merge(std::vector<ModulusInterval> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.lower < b.lower || (a.lower == b.lower && a.upper < b.upper);
    });
    std::vector<ModulusInterval> out;
    for (auto& iv : v) {
        if (!out.empty() && iv.lower <= out.back().upper) {
            out.back().upper = std::max(out.back().upper, iv.upper);
            out.back().multiplicity += iv.multiplicity;
        } else {
            out.push_back(std::move(iv));
        }
    }
    return out;
}

}  // namespace

std::vector<ModulusInterval> certified_root_moduli(const Polynomial& p, const Rational& precision) {
    if (p.is_zero()) throw std::invalid_argument("certified_root_moduli: zero polynomial");
    if (precision.sign() <= 0) throw std::invalid_argument("certified_root_moduli: precision must be positive");
    std::vector<ModulusInterval> exact;
    Polynomial rest = p.monic();
    unsigned zeros = 0;
    while (rest.degree() > 0 && rest.coeff(0).is_zero()) {
        rest = divmod(rest, Polynomial::monomial(1, 1)).first;
        ++zeros;
    }
    if (zeros) exact.push_back({0, 0, zeros});
    const auto factors = squarefree_decomposition(rest);

    Rational target = precision;
    for (int round = 0; round < 24; ++round) {
        std::vector<ModulusInterval> all = exact;
        for (const auto& [q, mult] : factors) {
            if (q.degree() == 1) {
                const Rational r = abs(q.coeff(0));
                all.push_back({r, r, mult});
                continue;
            }
            for (const auto& c : isolate(q, target)) all.push_back({c.lower, c.upper, c.count * mult});
        }
        auto merged = merge(std::move(all));
        const bool ok = std::all_of(merged.begin(), merged.end(),
                                    [&](const ModulusInterval& iv) { return iv.width() <= precision; });
        if (ok) return merged;
        target /= Rational(16);
    }
    throw Error("certified_root_moduli: could not separate root moduli at the requested precision");
}

bool all_roots_on_circle(const Polynomial& p, const Rational& c) {
    if (!p.is_monic()) throw NonMonic();
    if (c.sign() <= 0) throw std::invalid_argument("circle radius squared must be positive");
    if (p.degree() == 0) return true;
    if (p.coeff(0).is_zero()) return false;
    const Matrix comp = companion(p);
    const Polynomial y = charpoly(comp + inverse(comp) * c);
    const Polynomial s = squarefree_part(y);
    if (SturmSequence(s).real_roots() != s.degree()) return false;
    // U(w) = S(sqrt w) S(-sqrt w) = E(w)^2 - w O(w)^2 has roots y_k^2
    std::vector<Rational> even, odd;
    for (std::size_t k = 0; k < s.coefficients().size(); ++k)
        (k % 2 == 0 ? even : odd).push_back(s.coeff(k));
    const Polynomial e(even), o(odd);
    const Polynomial u = e * e - Polynomial::monomial(1, 1) * o * o;
    return SturmSequence(squarefree_part(u)).roots_above(c * Rational(4)) == 0;
}

}  // namespace fogus
