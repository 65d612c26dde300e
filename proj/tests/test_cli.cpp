#include "doctest.h"

#include "fogus/errors.hpp"
#include "fogus/io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace fogus;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    Json json() const { return parse_json(out, "cli output"); }
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + FOGUS_CLI + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Run run_err(const std::string& args) {
    const std::string cmd = std::string(FOGUS_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "fogus_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    FILE* f = std::fopen(p.c_str(), "w");
    std::fputs(text.c_str(), f);
    std::fclose(f);
    return p;
}

const std::string data = FOGUS_DATA;

}  // namespace

TEST_CASE("twist then hom") {
    const fs::path t = scratch() / "q_twisted.json";
    auto r = run("twist @q 1 -o " + t.string());
    CHECK(r.code == 0);
    auto h = run("--format json hom " + t.string() + " @q1");
    CHECK(h.code == 0);
    CHECK(h.json()["dim"] == 1);
    CHECK(load_object(t) == tate_fog(1));
    CHECK(run("--format json hom @q @q1").json()["dim"] == 0);
}

TEST_CASE("hom levels") {
    CHECK(run("--format json hom @q @qm1 --og").json()["dim"] == 0);
    CHECK(run("--format json hom @unipotent @unipotent").json()["dim"] == 2);
    CHECK(run("--format json hom @unipotent @unipotent --fog-prime").json()["level"] == "fog_prime");
    CHECK(run("hom @q @q --og --fog-prime").code == 2);
}

TEST_CASE("verify example-q-q1") {
    auto r = run("--format json verify example-q-q1");
    CHECK(r.code == 0);
    const Json j = r.json();
    CHECK(j["passed"] == true);
    CHECK(j["facts"]["delta rank"] == "4");
    CHECK(j["facts"]["global b=3"] == "zero class");
    CHECK(run("verify lemma --trials 3 --seed 5").code == 0);
    CHECK(run("verify nosuch").code == 2);
}

TEST_CASE("check-pure") {
    auto r = run("--format json check-pure @weight1_p5 --place 5");
    CHECK(r.code == 0);
    CHECK(r.json()["verdict"] == "pure");
    // the tail of this example has weight 0, not 1
    CHECK(run("check-pure @weight1_p5").code == 1);
    CHECK(run("check-pure @unipotent").code == 0);
    CHECK(run("check-pure @weight1_p5 --place 7").code == 2);
    CHECK(run("--format json check-pure @q1").json()["entries"][0]["index"] == -2);

    CHECK(run("--format json check-pure @weight1_p5 --place 5", "FOGUS_DEFAULT_TOL=1/1000").json()["tolerance"] == "1/1000");
    CHECK(run("--format json check-pure @weight1_p5 --place 5 --tol 1/7").json()["tolerance"] == "1/7");
    CHECK(run("check-pure @weight1_p5", "FOGUS_DEFAULT_TOL=abc").code == 2);
    CHECK(run("check-pure @weight1_p5 --tol -1").code == 2);
    auto interval = run("--format json check-pure @weight1_p5 --place 5 --intervals-only");
    CHECK(interval.code == 1);
    CHECK(interval.json()["verdict"] == "undecided");
}

TEST_CASE("validate") {
    CHECK(run("validate @q").code == 0);
    CHECK(run("validate @weight1_p5").code == 0);
    CHECK(run("validate @q_cx").code == 0);
    CHECK(run("validate " + write("impure.json", R"({"dim": 1, "tail": [0], "exceptional": [{"p": 3, "frobenius": [["9"]]}]})").string()).code == 1);

    const std::vector<std::pair<std::string, std::string>> bad{
        {R"({"dim": 2, "tail": [0]})", "tail"},
        {R"({"dim": 1, "tail": [0], "exceptional": [{"p": 4, "frobenius": [["1"]]}]})", "exceptional[0].p"},
        {R"({"dim": 1, "tail": [0], "exceptional": [{"p": 3, "frobenius": [["1/0"]]}]})", "frobenius[0][0]"},
        {R"({"dim": 1, "tail": [0], "exceptional": [{"p": 3, "frobenius": [["0"]]}]})", "not invertible"},
        {R"({"dim": 1, "tail": [0], "exceptional": [{"p": 3, "frobenius": [["1", "2"]]}]})", "columns"},
        {R"({"dim": 1, "tail": [0], "exceptional": [{"p": 3, "frobenius": [["1"]]}, {"p": 3, "frobenius": [["2"]]}]})", "duplicate"},
        {R"({"dim": 1, "tail": [0], "weights": [{"index": 0, "basis": [["1", "0"]]}]})", "weights[0].basis"},
        {R"({"dim": 2, "tail": [0, 0], "weights": [{"index": 0, "basis": [["1", "0"]]}]})", "weights"},
        {R"({"dim": 1})", "missing field \"tail\""},
        {R"([1, 2])", "expected an object"},
        {"{\"dim\": 1,\n \"tail\": [0,", "line 2"},
        {R"({"terms": [{"degree": 0, "object": "nowhere.json"}]})", "nowhere.json"},
    };
    for (std::size_t k = 0; k < bad.size(); ++k) {
        const fs::path p = write("bad" + std::to_string(k) + ".json", bad[k].first);
        auto r = run_err("validate " + p.string());
        CHECK(r.code == 2);
        CHECK(r.out.find(bad[k].second) != std::string::npos);
        CHECK(r.out.find(p.string()) != std::string::npos);
    }
}

TEST_CASE("ext1, build-ext, extract-class, baer-sum") {
    auto r = run("--format json ext1 @q @q1 --cocycles @q_q1_global @q_q1_delta2");
    CHECK(r.code == 0);
    CHECK(r.json()["rank"] == 1);
    CHECK(r.json()["classes"][0]["coboundary"] == true);
    CHECK(run("--format json ext1 @q @q1 --cocycles @q_q1_delta2 --probe 2").json()["rank"] == 0);

    const fs::path e = scratch() / "e.json";
    CHECK(run("build-ext @q @q1 @q_q1_delta2 -o " + e.string()).code == 0);
    CHECK(run("validate " + e.string()).code == 0);
    const ExtensionTriple loaded = extension_from_json(read_json_file(e), {e.parent_path(), e.string(), ""});
    const Cocycle x(tate_fog(0), tate_fog(1), Matrix::from_rows({{0}}), {{Place(2), Matrix::from_rows({{1}})}});
    const ExtensionTriple built = build_extension(x);
    CHECK(loaded.object == built.object);
    CHECK(loaded.incl == built.incl);
    CHECK(loaded.proj == built.proj);

    auto c = run("--format json extract-class " + e.string());
    CHECK(c.code == 0);
    CHECK(c.json()["exceptional"][0]["value"][0][0] == "1");

    const fs::path s = scratch() / "sum.json";
    CHECK(run("baer-sum " + e.string() + " " + e.string() + " -o " + s.string()).code == 0);
    auto cs = run("--format json extract-class " + s.string());
    const Cocycle twice = cocycle_from_json(cs.json(), tate_fog(0), tate_fog(1), {});
    CHECK(is_coboundary(twice - Rational(2) * x).has_value());

    CHECK(run("baer-sum " + e.string() + " @q").code == 2);
    CHECK(run("build-ext @q @qm1 @q_q1_delta2").code == 2);
}

TEST_CASE("ext and kill-cocycle") {
    CHECK(run("--format json ext @q_cx @q1_cx --degree 1 --probe 2,3").json()["rank"] == 1);
    CHECK(run("--format json ext @q @q1 --degree 0 --probe 2").json()["rank"] == 0);
    CHECK(run("--format json ext @q @q --degree 0 --probe 2,3").json()["rank"] == 1);
    CHECK(run("--format json ext @q_cx @q1_cx --degree 2 --probe 2,3").json()["rank"] == 0);
    CHECK(run("ext @q_cx @q1_cx --degree 1 --probe 2,4").code == 2);

    const fs::path e = scratch() / "killed.json";
    auto r = run("--format json kill-cocycle @q_cx @q1_cx @b_q_q1 -o " + e.string());
    CHECK(r.code == 0);
    CHECK(r.json()["b_killed"] == true);
    const FOgComplex loaded = complex_from_json(read_json_file(e), {e.parent_path(), e.string(), ""});
    CHECK(loaded == complex_from_json(r.json()["complex"], {fs::path(data), "out", ""}));
    CHECK(run("validate " + e.string()).code == 0);
    CHECK(run("kill-cocycle @q_cx @qm1 @b_q_q1").code == 2);
}

TEST_CASE("json output is deterministic") {
    for (const std::string args : {"--format json verify extformula", "--format json hom @unipotent @unipotent",
                                   "--format json ihom @unipotent @q1", "--format json check-pure @weight1_p5",
                                   "--format json kill-cocycle @q_cx @q1_cx @b_q_q1"}) {
        auto a = run(args), b = run(args);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}
