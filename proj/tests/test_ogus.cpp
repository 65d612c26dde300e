#include "doctest.h"

#include "fogus/errors.hpp"
#include "fogus/generators.hpp"
#include "fogus/ogus.hpp"

using namespace fogus;

namespace {

Matrix m(std::vector<std::vector<Rational>> rows) { return Matrix::from_rows(rows); }

OgusObject random_og(Rng& rng, std::size_t dim, const std::vector<Place>& places) {
    std::vector<int> tail(dim);
    for (auto& t : tail) t = std::uniform_int_distribution<int>(-1, 1)(rng);
    std::map<Place, Matrix> exc;
    for (const auto& v : places) exc.emplace(v, random_invertible(rng, dim));
    return make_object(tail, exc);
}

}  // namespace

TEST_CASE("places") {
    CHECK_THROWS_AS(Place(1), InvalidPlace);
    CHECK_THROWS_AS(Place(9), InvalidPlace);
    CHECK(Place(7).p == 7);
    auto ps = first_primes(6);
    REQUIRE(ps.size() == 6);
    CHECK(ps.back().p == 13);
}

TEST_CASE("validate") {
    OgusData q{1, {0}, {}};
    CHECK(validate(q) == unit_object());

    OgusData bad{1, {0}, {{Place(2), m({{0}}), std::nullopt}}};
    try {
        validate(bad);
        FAIL("expected NonInvertibleFrobenius");
    } catch (const NonInvertibleFrobenius& e) {
        CHECK(e.prime == 2);
    }

    OgusData w1{2, {0, 0}, {{Place(5), m({{2, -5}, {1, 0}}), std::nullopt}}};
    auto obj = validate(w1);
    CHECK(obj.dim() == 2);
    CHECK(obj.is_exceptional(Place(5)));
    CHECK(obj.frobenius_at(Place(3)) == Matrix::identity(2));

    OgusData dup{1, {0}, {{Place(2), m({{1}}), std::nullopt}, {Place(2), m({{2}}), std::nullopt}}};
    CHECK_THROWS_AS(validate(dup), DuplicatePlace);
    OgusData shape{2, {0, 0}, {{Place(2), m({{1}}), std::nullopt}}};
    CHECK_THROWS_AS(validate(shape), DimensionMismatch);
    OgusData tail_len{2, {0}, {}};
    CHECK_THROWS_AS(validate(tail_len), DimensionMismatch);
}

TEST_CASE("validate drops entries equal to the tail rule") {
    auto a = make_object({1}, {{Place(3), m({{Rational(1, 3)}})}});
    CHECK(a.exceptional().empty());
    CHECK(a == tate_object(1));
}

TEST_CASE("gauge normalization") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = random_invertible(rng, 2);
        const auto eps = random_invertible(rng, 2);
        OgusData with_eps{2, {0, 0}, {{Place(3), phi, eps}}};
        OgusData pre{2, {0, 0}, {{Place(3), inverse(eps) * phi * eps, std::nullopt}}};
        const auto a = validate(with_eps), b = validate(pre);
        CHECK(a == b);
        const auto n = make_object({0}, {{Place(3), m({{2}})}});
        auto ha = hom_space(a, n), hb = hom_space(b, n);
        REQUIRE(ha.size() == hb.size());
        for (std::size_t k = 0; k < ha.size(); ++k) CHECK(ha[k].matrix() == hb[k].matrix());
    }
}

TEST_CASE("tate twist") {
    auto q1 = tate_twist(unit_object(), 1);
    CHECK(q1.tail() == std::vector<int>{1});
    CHECK(q1.frobenius_at(Place(7)) == m({{Rational(1, 7)}}));
    CHECK(q1 == tate_object(1));

    Rng rng(3);
    auto x = random_og(rng, 3, {Place(2), Place(5)});
    CHECK(tate_twist(x, 0) == x);
    CHECK(tate_twist(tate_twist(x, 2), -2) == x);
    auto tw = tate_twist(x, 1);
    CHECK(tw.frobenius_at(Place(5)) == x.frobenius_at(Place(5)) * Rational(1, 5));
}

TEST_CASE("hom space examples") {
    const auto q = unit_object(), q1 = tate_object(1);
    auto h = hom_space(q, q);
    REQUIRE(h.size() == 1);
    CHECK(h[0].matrix() == Matrix::identity(1));
    CHECK(hom_space(q, q1).empty());
    CHECK(hom_space(direct_sum(q1, q), q1).size() == 1);
}

TEST_CASE("direct sum") {
    auto s = direct_sum(unit_object(), tate_object(1));
    CHECK(s.dim() == 2);
    CHECK(s.tail() == std::vector<int>{0, 1});

    auto a = make_object({0}, {{Place(2), m({{3}})}});
    auto b = make_object({1}, {{Place(3), m({{5}})}});
    auto ab = direct_sum(a, b);
    CHECK(ab.exceptional_places() == std::set<Place>{Place(2), Place(3)});
    CHECK(ab.frobenius_at(Place(2)) == m({{3, 0}, {0, Rational(1, 2)}}));
    CHECK(ab.frobenius_at(Place(3)) == m({{1, 0}, {0, 5}}));
}

TEST_CASE("morphism validation and composition") {
    const auto q = unit_object(), q1 = tate_object(1);
    CHECK_THROWS_AS(OgusMorphism(q, q1, m({{1}})), NotAMorphism);
    CHECK_THROWS_AS(OgusMorphism(q, q, m({{1, 2}})), DimensionMismatch);
    OgusMorphism f(q, q, m({{3}}));
    CHECK(compose(identity(q), f) == f);
    CHECK(compose(f, identity(q)) == f);
    CHECK_THROWS_AS(compose(f, identity(q1)), DimensionMismatch);
}

TEST_CASE("kernels and cokernels") {
    const auto q = unit_object();
    auto k = kernel(identity(q));
    CHECK(k.object.dim() == 0);

    const auto qq = direct_sum(q, q);
    auto kz = kernel(zero_morphism(qq, q));
    CHECK(kz.object == qq);

    OgusMorphism f(qq, q, m({{1, 1}}));
    auto kf = kernel(f);
    CHECK(kf.object == q);
    CHECK(kf.inclusion.matrix() == m({{1}, {-1}}));
    CHECK(compose(f, kf.inclusion).matrix().is_zero());
    CHECK(cokernel(f).object.dim() == 0);

    auto cz = cokernel(zero_morphism(q, qq));
    CHECK(cz.object == qq);

    // kernel of a map between Tate-tailed objects keeps a Tate tail
    const auto mixed = direct_sum(tate_object(1), q);
    OgusMorphism g(mixed, q, m({{0, 1}}));
    CHECK(kernel(g).object == tate_object(1));
    CHECK(cokernel(OgusMorphism(q, mixed, m({{0}, {1}}))).object == tate_object(1));
}

TEST_CASE("sub-object validation") {
    const auto mixed = direct_sum(tate_object(1), unit_object());
    CHECK_THROWS_AS(sub_object(mixed, Subspace::span(m({{1}, {1}}))), NotTailAdapted);
    auto a = make_object({0, 0}, {{Place(2), m({{1, 1}, {0, 1}})}});
    CHECK_THROWS_AS(sub_object(a, Subspace::coordinates(2, {1})), FrobeniusInstability);
    auto s = sub_object(a, Subspace::coordinates(2, {0}));
    CHECK(s.object == unit_object());
}

TEST_CASE("internal hom") {
    const auto q = unit_object(), q1 = tate_object(1);
    CHECK(internal_hom(q, q1) == q1);

    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        auto a = random_og(rng, 1 + t % 3, {Place(3)});
        auto b = random_og(rng, 1 + (t + 1) % 3, {Place(2)});
        auto ih = internal_hom(a, b);
        CHECK(ih.dim() == a.dim() * b.dim());
        auto dual = internal_hom(a, q);
        CHECK(dual.frobenius_at(Place(3)) == inverse(a.frobenius_at(Place(3))).transpose());
        // the Frobenius on iHom acts as f -> phi_N f phi_M^-1
        const Matrix f = random_matrix(rng, b.dim(), a.dim());
        for (const auto& v : {Place(2), Place(3), Place(7)}) {
            const Matrix expect = b.frobenius_at(v) * f * inverse(a.frobenius_at(v));
            CHECK(Matrix::unvec(ih.frobenius_at(v) * f.vec(), b.dim(), a.dim()) == expect);
        }
    }
}

TEST_CASE("hom space properties") {
    Rng rng(17);
    for (int t = 0; t < 25; ++t) {
        auto w1 = random_weights(rng, 3), w2 = random_weights(rng, 3), w3 = random_weights(rng, 2);
        auto a = random_pure_graded(rng, w1, {Place(2)}).base();
        auto b = random_pure_graded(rng, w2, {Place(3)}).base();
        // b with a few self-maps available: direct sum with a
        auto c = direct_sum(b, a);
        auto hab = hom_space(a, c);
        CHECK(!hab.empty());
        auto sum = hab[0];
        for (std::size_t k = 1; k < hab.size(); ++k) sum = sum + Rational(k + 1, 2) * hab[k];
        CHECK(is_morphism(a, c, sum.matrix()));

        // twist functoriality
        const int n = std::uniform_int_distribution<int>(-2, 2)(rng);
        auto htw = hom_space(tate_twist(a, n), tate_twist(c, n));
        REQUIRE(htw.size() == hab.size());
        for (std::size_t k = 0; k < hab.size(); ++k) CHECK(htw[k].matrix() == hab[k].matrix());

        // composition stays a morphism
        auto d = random_pure_graded(rng, w3, {Place(2)}).base();
        for (const auto& g : hom_space(c, direct_sum(c, d)))
            for (const auto& f : hab) CHECK(is_morphism(a, direct_sum(c, d), compose(g, f).matrix()));

        // image factorization
        for (const auto& f : hab) {
            auto im = image(f);
            CHECK(compose(im.mono, im.epi) == f);
            CHECK(rank(im.mono.matrix()) == im.object.dim());
            CHECK(rank(im.epi.matrix()) == im.object.dim());
        }
    }
}

TEST_CASE("isomorphism test") {
    const auto q = unit_object();
    CHECK(is_isomorphism(identity(q)));
    CHECK(!is_isomorphism(zero_morphism(q, q)));
    CHECK(!is_isomorphism(zero_morphism(q, direct_sum(q, q))));
}
