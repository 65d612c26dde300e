#include "doctest.h"

#include "fogus/errors.hpp"
#include "fogus/generators.hpp"
#include "fogus/io.hpp"

using namespace fogus;

namespace {

const JsonSource here{".", "test", ""};

Json reparse(const Json& j) { return parse_json(dump(j)); }

}  // namespace

TEST_CASE("rationals and matrices") {
    CHECK(to_json(Rational(-6, 4)) == "-3/2");
    CHECK(rational_from_json(Json("4/6"), here) == Rational(2, 3));
    CHECK(rational_from_json(Json(7), here) == Rational(7));
    CHECK_THROWS_AS(rational_from_json(Json(1.5), here), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json("2/0"), here), ParseError);
    const Matrix a = Matrix::from_rows({{1, Rational(1, 2)}, {0, -3}});
    CHECK(matrix_from_json(reparse(to_json(a)), here) == a);
    CHECK(matrix_from_json(Json::array(), here, 0, 3).cols() == 3);
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"([["1"], ["1", "2"]])"), here), ParseError);
    CHECK(dump(to_json(a)) == "[\n  [\"1\", \"1/2\"],\n  [\"0\", \"-3\"]\n]\n");
}

TEST_CASE("object files") {
    auto j = parse_json(R"({"dim": 2, "tail": [0, 1],
        "exceptional": [{"p": 3, "frobenius": [["1", "0"], ["0", "1/3"]]},
                        {"p": 5, "frobenius": [["-1", "0"], ["0", "1/5"]], "epsilon": [["1", "0"], ["1", "1"]]}]})");
    const ObjectFile f = object_file_from_json(j, here);
    // the entry at 3 equals the tail rule and is dropped
    CHECK(f.base.exceptional_places() == std::set<Place>{Place(5)});
    CHECK(!f.weights);
    auto x = object_from_json(j, here);
    CHECK(x.weights() == tail_weight_filtration({0, 1}));
    CHECK(object_from_json(reparse(to_json(x)), here) == x);

    auto w1 = parse_json(R"({"dim": 2, "tail": [0, 0], "exceptional": [{"p": 5, "frobenius": [["2", "-5"], ["1", "0"]]}],
        "weights": [{"index": 1, "basis": [["1", "0"], ["0", "1"]]}]})");
    CHECK_THROWS_AS(object_from_json(w1, here), WeightViolation);
    w1["fog_prime"] = true;
    auto y = object_from_json(w1, here);
    CHECK(y.mode() == FilterMode::fog_prime);
    CHECK(object_from_json(reparse(to_json(y)), here) == y);

    try {
        object_from_json(parse_json(R"({"dim": 1, "tail": [0], "exceptional": [{"p": 7, "frobenius": [["x"]]}]})"), here);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.context == "test: exceptional[0].frobenius[0][0]");
    }
}

TEST_CASE("round trips of random data") {
    Rng rng(3);
    const std::vector<Place> places{Place(2), Place(3)};
    for (int t = 0; t < 20; ++t) {
        auto a = random_pure_graded(rng, random_weights(rng, 3), places);
        auto b = random_pure_graded(rng, random_weights(rng, 2, {-2, 0}), places);
        CHECK(object_from_json(reparse(to_json(a)), here) == a);
        CHECK(object_from_json(reparse(to_json(tate_twist(a, 2))), here) == tate_twist(a, 2));

        auto x = random_cocycle(rng, a, b, {Place(2), Place(5)});
        CHECK(cocycle_from_json(reparse(to_json(x)), a, b, here) == x);

        auto e = build_extension(x);
        auto back = extension_from_json(reparse(to_json(e)), here);
        CHECK(back.object == e.object);
        CHECK(back.incl == e.incl);
        CHECK(back.proj == e.proj);
        CHECK(back.gauge == e.gauge);

        auto c = random_complex(rng, places);
        CHECK(complex_from_json(reparse(to_json(c)), here) == c);

        ProbeFamilyFile fam{{Place(2), Place(3)}, random_probe_family(rng, c, c, {Place(2), Place(3)})};
        auto fam2 = probe_family_from_json(reparse(to_json(fam)), here);
        CHECK(fam2.probe == fam.probe);
        // zero components are kept as written
        CHECK(fam2.family == fam.family);
    }
}

TEST_CASE("complex and cocycle file errors") {
    const FOgObject q = tate_fog(0), q1 = tate_fog(1);
    CHECK_THROWS_AS(cocycle_from_json(parse_json(R"({"tail_gen": [["1", "2"]]})"), q, q1, here), ParseError);
    CHECK_THROWS_AS(cocycle_from_json(parse_json(R"({"tail_gen": [["0"]], "exceptional": [{"p": 2, "value": [["1"]]}, {"p": 2, "value": [["2"]]}]})"), q, q1, here), ParseError);
    CHECK_THROWS_AS(cocycle_from_json(parse_json(R"({"tail_gen": [["1"]]})"), q1, q, here), WeightViolation);
    auto q_inline = to_json(q).dump();
    CHECK_THROWS_AS(complex_from_json(parse_json(R"({"terms": [{"degree": 0, "object": )" + q_inline +
                                                 R"(}, {"degree": 1, "object": )" + q_inline +
                                                 R"(}], "differentials": [{"degree": 0, "f_dR": [["1", "1"]]}]})"),
                                      here),
                    ParseError);
    CHECK_THROWS_AS(probe_family_from_json(parse_json(R"({"probe": [2], "components": [{"degree": 0, "p": 3, "value": [["1"]]}]})"), here),
                    ParseError);
}
