#include "doctest.h"

#include "fogus/errors.hpp"
#include "fogus/matrix.hpp"
#include "fogus/polynomial.hpp"
#include "fogus/root_moduli.hpp"
#include "fogus/subspace.hpp"

#include <algorithm>
#include <random>

using namespace fogus;

namespace {

Rational random_rational(std::mt19937_64& rng, long range = 5) {
    std::uniform_int_distribution<long> num(-range, range), den(1, 4);
    return Rational(num(rng), den(rng));
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double zero_prob = 0.3) {
    std::bernoulli_distribution zero(zero_prob);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (!zero(rng)) m(i, j) = random_rational(rng);
    return m;
}

// Oracle: det(x I - A) by Laplace expansion along the first row, computed
// over polynomial entries.
Polynomial laplace_det(const std::vector<std::vector<Polynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial({Rational(1)});
    Polynomial acc;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Polynomial term = m[0][j] * laplace_det(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

Polynomial cofactor_charpoly(const Matrix& a) {
    std::vector<std::vector<Polynomial>> m(a.rows(), std::vector<Polynomial>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m[i][j] = Polynomial({-a(i, j), Rational(i == j ? 1 : 0)});
    return laplace_det(m);
}

}  // namespace

TEST_CASE("rational parsing and canonical text") {
    CHECK(Rational::parse("2/4").to_string() == "1/2");
    CHECK(Rational::parse("-6/3").to_string() == "-2");
    CHECK(Rational::parse(" 7 ") == Rational(7));
    CHECK(Rational::parse("0/5").to_string() == "0");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK(pow(Rational(2), -3) == Rational(1, 8));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).denominator() == 2);
}

TEST_CASE("rational square-root bounds") {
    const Rational lo = sqrt_lower(Rational(2), 80), hi = sqrt_upper(Rational(2), 80);
    CHECK(lo * lo <= Rational(2));
    CHECK(hi * hi >= Rational(2));
    CHECK(hi - lo <= pow(Rational(2), -79));
    CHECK(sqrt_lower(Rational(9, 4), 10) == Rational(3, 2));
    CHECK(sqrt_upper(Rational(9, 4), 10) == Rational(3, 2));
}

TEST_CASE("rref examples") {
    SUBCASE("identity") {
        const auto r = rref(Matrix::identity(2));
        CHECK(r.reduced == Matrix::identity(2));
        CHECK(r.pivots == std::vector<std::size_t>{0, 1});
        CHECK(r.transform == Matrix::identity(2));
    }
    SUBCASE("rank one") {
        const Matrix a{{2, 4}, {1, 2}};
        const auto r = rref(a);
        CHECK(r.reduced == Matrix{{1, 2}, {0, 0}});
        CHECK(r.pivots == std::vector<std::size_t>{0});
        CHECK(r.transform * a == r.reduced);
    }
    SUBCASE("zero") {
        const auto r = rref(Matrix(3, 3));
        CHECK(r.reduced == Matrix(3, 3));
        CHECK(r.pivots.empty());
        CHECK(r.transform == Matrix::identity(3));
    }
}

TEST_CASE("solve examples") {
    const Matrix b{{3}, {-1}};
    auto s = solve(Matrix::identity(2), b);
    REQUIRE(s);
    CHECK(s->particular == b);
    CHECK(s->kernel.cols() == 0);

    s = solve(Matrix{{1, 1}}, Matrix{{2}});
    REQUIRE(s);
    CHECK(s->particular == Matrix{{2}, {0}});
    REQUIRE(s->kernel.cols() == 1);
    CHECK(Subspace::span(s->kernel) == Subspace::span(Matrix{{1}, {-1}}));

    CHECK_FALSE(solve(Matrix{{1}, {0}}, Matrix{{0}, {1}}));
    CHECK_THROWS_AS(solve(Matrix{{1}, {0}}, Matrix{{0}}), DimensionMismatch);
}

TEST_CASE("linear algebra properties on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        const Matrix a = random_matrix(rng, dim(rng), dim(rng), 0.5);
        const auto r = rref(a);
        CHECK(rref(r.reduced).reduced == r.reduced);
        CHECK(r.transform * a == r.reduced);
        CHECK(determinant(r.transform) != Rational(0));
        const Matrix k = nullspace(a);
        CHECK(rank(a) + k.cols() == a.cols());
        CHECK((a * k).is_zero());

        Matrix x = random_matrix(rng, a.cols(), 1);
        const Matrix b = a * x;
        const auto s = solve(a, b);
        REQUIRE(s);
        Matrix combo = s->particular;
        for (std::size_t j = 0; j < s->kernel.cols(); ++j)
            combo += s->kernel.col_block(j, 1) * random_rational(rng);
        CHECK(a * combo == b);
    }
}

TEST_CASE("inverse and determinant") {
    const Matrix a{{2, -5}, {1, 0}};
    CHECK(determinant(a) == Rational(5));
    CHECK(a * inverse(a) == Matrix::identity(2));
    CHECK_FALSE(try_inverse(Matrix{{1, 2}, {2, 4}}));
    CHECK(determinant(Matrix{{0}}) == Rational(0));
}

TEST_CASE("subspace operations") {
    const Subspace x = Subspace::coordinates(3, {0});
    const Subspace xy = Subspace::coordinates(3, {0, 1});
    const Subspace diag = Subspace::span(Matrix{{1}, {1}, {0}});
    CHECK(xy.contains(x));
    CHECK_FALSE(x.contains(xy));
    CHECK(sum(x, diag) == xy);
    CHECK(intersection(xy, Subspace::coordinates(3, {1, 2})) == Subspace::coordinates(3, {1}));
    CHECK(intersection(x, diag).dim() == 0);
    CHECK((xy.annihilator() * xy.basis()).is_zero());
    CHECK(Subspace::kernel_of(xy.annihilator()) == xy);
    const Matrix q = quotient_basis(Subspace::full(3), diag);
    CHECK(q.cols() == 2);
    CHECK(sum(diag, Subspace::span(q)) == Subspace::full(3));
    CHECK(preimage(Matrix{{1, 1, 0}}, Subspace::zero(1)) == Subspace::span(Matrix{{1, 0}, {-1, 0}, {0, 1}}));
}

TEST_CASE("charpoly examples") {
    CHECK(charpoly(Matrix{{Rational(1, 2)}}) == Polynomial::linear_root(Rational(1, 2)));
    CHECK(charpoly(Matrix{{2, -5}, {1, 0}}) == Polynomial({5, -2, 1}));
    CHECK(charpoly(Matrix::identity(2)) == Polynomial::linear_root(1) * Polynomial::linear_root(1));
    CHECK_THROWS_AS(charpoly(Matrix(2, 3)), DimensionMismatch);
}

TEST_CASE("Faddeev-LeVerrier agrees with cofactor expansion") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix a = random_matrix(rng, n, n);
            CHECK(charpoly(a) == cofactor_charpoly(a));
        }
}

TEST_CASE("polynomial utilities") {
    const Polynomial p = Polynomial::linear_root(1) * Polynomial::linear_root(1) * Polynomial::linear_root(2);
    const auto sq = squarefree_decomposition(p);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].first == Polynomial::linear_root(2));
    CHECK(sq[0].second == 1u);
    CHECK(sq[1].first == Polynomial::linear_root(1));
    CHECK(sq[1].second == 2u);
    CHECK(squarefree_part(p) == Polynomial::linear_root(1) * Polynomial::linear_root(2));
    // x^2 P(c/x) for P = x^2 - 2x + 5, c = 5: 5x^2 - 10x + 25
    CHECK(Polynomial({5, -2, 1}).reversal(5) == Polynomial({25, -10, 5}));
    const auto [q, r] = divmod(Polynomial({-1, 0, 1}), Polynomial::linear_root(1));
    CHECK(q == Polynomial::linear_root(-1));
    CHECK(r.is_zero());
    CHECK(SturmSequence(Polynomial({-2, 0, 1})).real_roots() == 2);
    CHECK(SturmSequence(Polynomial({2, 0, 1})).real_roots() == 0);
    CHECK(SturmSequence(Polynomial({-2, 0, 1})).roots_above(Rational(1)) == 1);
}

TEST_CASE("certified root moduli examples") {
    const Rational prec = default_precision();
    SUBCASE("linear") {
        const auto iv = certified_root_moduli(Polynomial::linear_root(Rational(1, 2)), prec);
        REQUIRE(iv.size() == 1);
        CHECK(iv[0].contains(Rational(1, 2)));
        CHECK(iv[0].width() <= prec);
    }
    SUBCASE("complex pair 1 +- 2i") {
        const auto iv = certified_root_moduli(Polynomial({5, -2, 1}), prec);
        REQUIRE(iv.size() == 1);
        CHECK(iv[0].multiplicity == 2u);
        CHECK(iv[0].contains_sqrt_of(Rational(5)));
        CHECK(iv[0].width() <= prec);
    }
    SUBCASE("rational roots 1 and 2") {
        const auto iv = certified_root_moduli(Polynomial::linear_root(1) * Polynomial::linear_root(2), prec);
        REQUIRE(iv.size() == 2);
        CHECK(iv[0].contains(Rational(1)));
        CHECK(iv[1].contains(Rational(2)));
    }
    SUBCASE("repeated roots on the unit circle") {
        const Polynomial p = Polynomial({1, 0, 1}) * Polynomial({1, 0, 1});
        const auto iv = certified_root_moduli(p, prec);
        REQUIRE(iv.size() == 1);
        CHECK(iv[0].multiplicity == 4u);
        CHECK(iv[0].contains(Rational(1)));
    }
    SUBCASE("zero root") {
        const auto iv = certified_root_moduli(Polynomial({0, 0, 3, 1}), prec);
        REQUIRE(iv.size() == 2);
        CHECK(iv[0] == ModulusInterval{0, 0, 2});
        CHECK(iv[1].contains(Rational(3)));
    }
    CHECK_THROWS(certified_root_moduli(Polynomial(), prec));
}

TEST_CASE("certified intervals enclose known moduli with multiplicity") {
    std::mt19937_64 rng(3);
    const Rational prec = default_precision();
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> deg(1, 6);
        std::vector<Rational> moduli;
        Polynomial p({Rational(1)});
        const int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            // mix rational roots with complex pairs a +- bi
            if (k + 1 < d && rng() % 3 == 0) {
                const Rational a = random_rational(rng, 3), b = Rational(1 + static_cast<long>(rng() % 3), 2);
                p = p * Polynomial({a * a + b * b, -a * Rational(2), 1});
                moduli.push_back(a * a + b * b);
                moduli.push_back(a * a + b * b);
                ++k;
            } else {
                const Rational r = random_rational(rng, 4);
                p = p * Polynomial::linear_root(r);
                moduli.push_back(r * r);
            }
        }
        const auto iv = certified_root_moduli(p, prec);
        unsigned total = 0;
        for (const auto& i : iv) {
            total += i.multiplicity;
            CHECK(i.width() <= prec);
            const auto inside = std::count_if(moduli.begin(), moduli.end(),
                                              [&](const Rational& m2) { return i.contains_sqrt_of(m2); });
            CHECK(static_cast<unsigned>(inside) == i.multiplicity);
        }
        CHECK(total == static_cast<unsigned>(p.degree()));
    }
}

TEST_CASE("exact circle test") {
    CHECK(all_roots_on_circle(Polynomial({5, -2, 1}), Rational(5)));
    CHECK_FALSE(all_roots_on_circle(Polynomial({5, -2, 1}), Rational(4)));
    // roots 1 and 2 are swapped by z -> 2/z yet do not lie on |z| = sqrt 2
    CHECK_FALSE(all_roots_on_circle(Polynomial({2, -3, 1}), Rational(2)));
    CHECK(all_roots_on_circle(Polynomial::linear_root(Rational(1, 3)), Rational(1, 9)));
    CHECK(all_roots_on_circle(Polynomial::linear_root(-3), Rational(9)));
    CHECK(all_roots_on_circle(Polynomial({1, 0, 1}) * Polynomial({1, 0, 1}), Rational(1)));
    // x^2 - 2 has roots +-sqrt2 of modulus sqrt2
    CHECK(all_roots_on_circle(Polynomial({-2, 0, 1}), Rational(2)));
    CHECK_FALSE(all_roots_on_circle(Polynomial({0, 1}), Rational(1)));
    CHECK_THROWS_AS(all_roots_on_circle(Polynomial({1, 2}), Rational(1)), NonMonic);
}
