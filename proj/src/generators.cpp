#include "fogus/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fogus {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Rational random_rational(Rng& rng, long num_bound, long den_bound) {
    return Rational(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long num_bound, long den_bound) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, num_bound, den_bound);
    return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        Matrix m = random_matrix(rng, n, n);
        if (!determinant(m).is_zero()) return m;
    }
}

Matrix random_element(Rng& rng, const Subspace& s) {
    Matrix c(s.dim(), 1);
    for (std::size_t k = 0; k < s.dim(); ++k) c(k, 0) = random_rational(rng);
    return s.basis() * c;
}

Matrix pure_block(Rng& rng, long p, int weight, std::size_t size) {
    const Rational q = pow(Rational(p), weight);
    if (size == 1) {
        if (weight % 2 != 0) throw std::invalid_argument("pure_block: odd weight needs a 2x2 block");
        Rational r = pow(Rational(p), weight / 2);
        return Matrix::diagonal(std::vector<Rational>{uniform(rng, 0, 1) ? r : -r});
    }
    if (size != 2) throw std::invalid_argument("pure_block: size must be 1 or 2");
    // x^2 - t x + q with t^2 < 4q has two conjugate roots of modulus sqrt(q)
    Rational t;
    do {
        t = Rational(uniform(rng, -7, 7), 4) * sqrt_lower(q, 8);
    } while (t * t >= q * 4);
    return Matrix::from_rows({{t, -q}, {1, 0}});
}

std::vector<int> random_weights(Rng& rng, std::size_t max_dim, const std::vector<int>& choices) {
    std::vector<int> w(static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_dim))));
    for (auto& x : w) x = choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(choices.size()) - 1))];
    return w;
}

FOgObject random_pure_graded(Rng& rng, const std::vector<int>& coordinate_weights, const std::vector<Place>& places,
                             bool permute) {
    std::vector<int> weights = coordinate_weights;
    std::sort(weights.begin(), weights.end());
    const std::size_t d = weights.size();
    for (int w : weights)
        if (w % 2 != 0) throw std::invalid_argument("random_pure_graded: weights must be even");

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    if (permute) std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pm(d, d);
    for (std::size_t k = 0; k < d; ++k) pm(perm[k], k) = 1;

    std::vector<int> tail(d);
    for (std::size_t k = 0; k < d; ++k) tail[perm[k]] = -weights[k] / 2;

    std::map<Place, Matrix> exc;
    for (const auto& v : places) {
        Matrix phi(d, d);
        for (std::size_t k = 0; k < d;) {
            std::size_t size = 1;
            if (k + 1 < d && weights[k + 1] == weights[k] && uniform(rng, 0, 1)) size = 2;
            phi.set_block(k, k, pure_block(rng, v.p, weights[k], size));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = k; c < k + size; ++c) phi(r, c) = random_rational(rng, 2, 2);
            k += size;
        }
        exc.emplace(v, pm * phi * pm.transpose());
    }
    return make_fog(make_object(std::move(tail), std::move(exc)));
}

Cocycle random_cocycle(Rng& rng, const FOgObject& m, const FOgObject& n, const std::vector<Place>& places,
                       ExtLevel level) {
    const Subspace room = level == ExtLevel::fog ? ihom_step(m, n, 0) : Subspace::full(m.dim() * n.dim());
    auto draw = [&] { return Matrix::unvec(random_element(rng, room), n.dim(), m.dim()); };
    Matrix g = uniform(rng, 0, 2) ? draw() : Matrix(n.dim(), m.dim());
    std::map<Place, Matrix> exc;
    for (const auto& v : places)
        if (uniform(rng, 0, 1)) exc.emplace(v, draw());
    return {m, n, std::move(g), std::move(exc), level};
}

Matrix random_automorphism(Rng& rng, const FOgObject& x) {
    const auto basis = hom_space_fog(x, x);
    for (;;) {
        Matrix a(x.dim(), x.dim());
        for (const auto& f : basis) a = a + f.matrix() * random_rational(rng, 3, 2);
        if (x.dim() == 0 || !determinant(a).is_zero()) return a;
    }
}

FOgComplex random_complex(Rng& rng, const std::vector<Place>& places, std::size_t max_length) {
    const auto length = static_cast<int>(uniform(rng, 1, static_cast<long>(max_length)));
    auto piece = [&](bool allow_empty) {
        if (allow_empty && uniform(rng, 0, 2) == 0) return FOgObject();
        return random_pure_graded(rng, {static_cast<int>(2 * uniform(rng, -1, 0))}, places);
    };
    std::vector<FOgObject> c, b;
    for (int k = 0; k < length; ++k) {
        c.push_back(piece(true));
        b.push_back(k + 1 < length ? piece(true) : FOgObject());
    }
    std::map<int, FOgObject> terms;
    for (int k = 0; k < length; ++k)
        terms.emplace(k, direct_sum(direct_sum(c[k], k > 0 ? b[k - 1] : FOgObject()), b[k]));

    std::map<int, Matrix> sigma, sigma_inv;
    for (const auto& [k, t] : terms) {
        sigma.emplace(k, random_automorphism(rng, t));
        sigma_inv.emplace(k, t.dim() == 0 ? Matrix() : inverse(sigma.at(k)));
    }
    std::map<int, Matrix> d;
    for (int k = 0; k + 1 < length; ++k) {
        const std::size_t db = b[k].dim();
        const std::size_t src = terms.at(k).dim(), tgt = terms.at(k + 1).dim();
        Matrix e(db, db);
        if (db != 0 && uniform(rng, 0, 3) != 0) e = random_automorphism(rng, b[k]);
        Matrix dk(tgt, src);
        dk.set_block(c[k + 1].dim(), src - db, e);
        d.emplace(k, sigma.at(k + 1) * dk * sigma_inv.at(k));
    }
    return {terms, d};
}

ProbeFamily random_probe_family(Rng& rng, const FOgComplex& m, const FOgComplex& n, const std::set<Place>& probe) {
    ProbeFamily out;
    for (const auto& [i, mi] : m.terms()) {
        const FOgObject ni = n.term(i);
        if (ni.dim() == 0) continue;
        const Subspace room = ihom_step(mi, ni, 0);
        for (const auto& v : probe) out[i].emplace(v, Matrix::unvec(random_element(rng, room), ni.dim(), mi.dim()));
    }
    return out;
}

}  // namespace fogus
