#include "fogus/errors.hpp"
#include "fogus/io.hpp"
#include "fogus/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#ifndef FOGUS_DATA_DIR
#define FOGUS_DATA_DIR "data"
#endif

using namespace fogus;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, negative = 1, input_error = 2 };

struct Options {
    std::string format = "text";
    bool json() const { return format == "json"; }
};

// "@name" is a bundled file from the data directory.
fs::path resolve(const std::string& arg) {
    if (arg.size() > 1 && arg[0] == '@') {
        const char* env = std::getenv("FOGUS_DATA_DIR");
        return fs::path(env ? env : FOGUS_DATA_DIR) / (arg.substr(1) + ".json");
    }
    return arg;
}

JsonSource source_of(const fs::path& p) { return {p.parent_path(), p.string(), ""}; }

FOgObject object_arg(const std::string& arg) { return load_object(resolve(arg)); }

// Complex files have "terms"; a plain object file is the complex in degree 0.
FOgComplex complex_arg(const std::string& arg) {
    const fs::path p = resolve(arg);
    const Json j = read_json_file(p);
    if (j.is_object() && j.contains("terms")) return complex_from_json(j, source_of(p));
    return FOgComplex::concentrated(object_from_json(j, source_of(p)));
}

std::set<Place> parse_probe(const std::string& text) {
    std::set<Place> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long p = std::stol(item, &used);
            if (used != item.size() || !is_prime(p)) throw std::invalid_argument("");
            out.insert(Place(p));
        } catch (const std::logic_error&) {
            throw ParseError("--probe", "'" + item + "' is not a prime");
        }
    }
    if (out.empty()) throw EmptyProbe();
    return out;
}

Rational tolerance(const std::string& flag) {
    std::string text = flag;
    std::string context = "--tol";
    if (text.empty()) {
        const char* env = std::getenv("FOGUS_DEFAULT_TOL");
        if (!env) return default_precision();
        text = env;
        context = "FOGUS_DEFAULT_TOL";
    }
    Rational t;
    try {
        t = Rational::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(context, e.what());
    }
    if (t <= Rational(0)) throw ParseError(context, "tolerance must be positive");
    return t;
}

std::string text(const Matrix& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out += i ? "; " : "";
        for (std::size_t j = 0; j < a.cols(); ++j) out += (j ? " " : "") + a(i, j).to_string();
    }
    return out + "]";
}

std::string text(const std::set<Place>& s) {
    std::string out;
    for (const auto& v : s) out += (out.empty() ? "" : ",") + std::to_string(v.p);
    return "{" + out + "}";
}

void describe(std::ostream& os, const FOgObject& x) {
    os << "dim " << x.dim() << ", tail (";
    for (std::size_t i = 0; i < x.base().tail().size(); ++i) os << (i ? " " : "") << x.base().tail()[i];
    os << ")" << (x.mode() == FilterMode::fog_prime ? ", FOg'" : "") << "\n";
    for (const auto& [v, phi] : x.base().exceptional()) os << "  phi_" << v.p << " = " << text(phi) << "\n";
    for (const auto& [i, s] : x.weights().steps())
        os << "  W_" << i << " = span" << text(s.basis().transpose()) << " (dim " << s.dim() << ")\n";
}

void emit(const Options& o, const Json& j, const std::string& human) {
    if (o.json())
        std::cout << dump(j);
    else
        std::cout << human;
}

void write_or_print(const Options& o, const std::string& out, const Json& j, const std::string& human) {
    if (!out.empty()) {
        write_json_file(out, j);
        if (!o.json()) std::cout << human << "written to " << out << "\n";
        else std::cout << dump(j);
    } else {
        emit(o, j, human);
    }
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, const std::string& file) {
    const fs::path p = resolve(file);
    const Json j = read_json_file(p);
    Json r;
    std::ostringstream h;
    if (j.is_object() && j.contains("terms")) {
        const auto c = complex_from_json(j, source_of(p));
        r["valid"] = true;
        r["kind"] = "complex";
        r["complex"] = to_json(c);
        h << "valid complex in degrees " << c.min_degree() << ".." << c.max_degree() << "\n";
    } else if (j.is_object() && j.contains("incl")) {
        const auto e = extension_from_json(j, source_of(p));
        r["valid"] = true;
        r["kind"] = "extension";
        r["extension"] = to_json(e);
        h << "valid extension, E: ";
        describe(h, e.object);
    } else {
        const ObjectFile f = object_file_from_json(j, source_of(p));
        try {
            const FOgObject x = f.realize();
            r["valid"] = true;
            r["kind"] = "object";
            r["object"] = to_json(x);
            h << "valid object: ";
            describe(h, x);
        } catch (const WeightViolation& e) {
            r["valid"] = false;
            r["kind"] = "object";
            r["reason"] = e.what();
            emit(o, r, std::string("not a filtered object: ") + e.what() + "\n");
            return negative;
        }
    }
    emit(o, r, h.str());
    return ok;
}

int cmd_hom(const Options& o, const std::string& a, const std::string& b, bool og, bool fog_prime) {
    FOgObject m = object_arg(a), n = object_arg(b);
    std::vector<Matrix> basis;
    std::string level = "fog";
    if (og) {
        level = "og";
        for (const auto& f : hom_space(m.base(), n.base())) basis.push_back(f.matrix());
    } else {
        if (fog_prime) {
            level = "fog_prime";
            m = with_mode(m, FilterMode::fog_prime);
            n = with_mode(n, FilterMode::fog_prime);
        }
        for (const auto& f : hom_space_fog(m, n)) basis.push_back(f.matrix());
    }
    Json r;
    r["level"] = level;
    r["dim"] = basis.size();
    r["basis"] = Json::array();
    std::ostringstream h;
    h << "Hom (" << level << ") has dimension " << basis.size() << "\n";
    for (const auto& f : basis) {
        r["basis"].push_back(to_json(f));
        h << "  " << text(f) << "\n";
    }
    emit(o, r, h.str());
    return ok;
}

int cmd_ihom(const Options& o, const std::string& a, const std::string& b, const std::string& out) {
    const FOgObject x = internal_hom(object_arg(a), object_arg(b));
    std::ostringstream h;
    h << "internal Hom: ";
    describe(h, x);
    write_or_print(o, out, to_json(x), h.str());
    return ok;
}

int cmd_twist(const Options& o, const std::string& a, int n, const std::string& out) {
    const FOgObject x = tate_twist(object_arg(a), n);
    std::ostringstream h;
    h << "twist by " << n << ": ";
    describe(h, x);
    write_or_print(o, out, to_json(x), h.str());
    return ok;
}

int cmd_check_pure(const Options& o, const std::string& a, const std::string& tol, std::optional<long> place,
                   bool intervals_only) {
    const fs::path p = resolve(a);
    const ObjectFile f = load_object_file(p);
    PurityOptions opts;
    opts.tolerance = tolerance(tol);
    opts.exact_certificate = !intervals_only;
    PurityReport rep = check_weight_filtration(f.base, f.filtration(), opts);
    if (place) {
        if (!is_prime(*place)) throw ParseError("--place", std::to_string(*place) + " is not a prime");
        rep = rep.at_place(Place(*place));
        if (rep.entries.empty())
            throw ParseError("--place", std::to_string(*place) + " is not an exceptional place of " + p.string());
    }
    bool impure = false, undecided = false;
    Json r;
    r["tolerance"] = to_json(opts.tolerance);
    r["entries"] = Json::array();
    std::ostringstream h;
    for (const auto& e : rep.entries) {
        impure = impure || e.result.verdict == Verdict::impure;
        undecided = undecided || e.result.verdict == Verdict::undecided;
        Json je;
        je["index"] = e.index;
        if (e.place) je["p"] = e.place->p;
        else je["p"] = "tail";
        je["verdict"] = to_string(e.result.verdict);
        if (!e.charpoly.is_zero()) {
            Json cs = Json::array();
            for (const auto& c : e.charpoly.coefficients()) cs.push_back(to_json(c));
            je["charpoly"] = cs;
        }
        Json ivs = Json::array();
        for (const auto& iv : e.result.intervals) {
            Json ji;
            ji["lower"] = to_json(iv.lower);
            ji["upper"] = to_json(iv.upper);
            ji["multiplicity"] = iv.multiplicity;
            ivs.push_back(ji);
        }
        je["intervals"] = ivs;
        je["reason"] = e.result.reason;
        r["entries"].push_back(je);
        h << "Gr_" << e.index << " at " << (e.place ? "p=" + std::to_string(e.place->p) : std::string("tail places"))
          << ": " << to_string(e.result.verdict);
        if (!e.charpoly.is_zero()) h << "  charpoly " << e.charpoly;
        if (!e.result.reason.empty()) h << "  (" << e.result.reason << ")";
        h << "\n";
    }
    const Verdict overall = impure ? Verdict::impure : undecided ? Verdict::undecided : Verdict::pure;
    r["verdict"] = to_string(overall);
    h << "verdict: " << to_string(overall) << "\n";
    emit(o, r, h.str());
    return overall == Verdict::pure ? ok : negative;
}

ExtSetting setting(bool og, const std::string& probe) {
    const ExtLevel level = og ? ExtLevel::og : ExtLevel::fog;
    return probe.empty() ? ExtSetting::adelic(level) : ExtSetting::truncated(parse_probe(probe), level);
}

int cmd_ext1(const Options& o, const std::string& a, const std::string& b, const std::vector<std::string>& files,
             bool og, const std::string& probe) {
    const FOgObject m = object_arg(a), n = object_arg(b);
    const ExtSetting s = setting(og, probe);
    std::vector<Cocycle> xs;
    for (const auto& f : files) {
        const fs::path p = resolve(f);
        xs.push_back(cocycle_from_json(read_json_file(p), m, n, source_of(p), s.level));
    }
    const std::size_t rank = ext1_rank(m, n, xs, s);
    Json r;
    r["level"] = og ? "og" : "fog";
    if (s.probe) {
        r["probe"] = Json::array();
        for (const auto& v : *s.probe) r["probe"].push_back(v.p);
    }
    r["rank"] = rank;
    r["classes"] = Json::array();
    std::ostringstream h;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const auto g = is_coboundary(xs[k], s);
        Json c;
        c["file"] = files[k];
        c["coboundary"] = g.has_value();
        if (g) c["primitive"] = to_json(*g);
        r["classes"].push_back(c);
        h << files[k] << ": " << (g ? "zero class, = xi(" + text(*g) + ")" : std::string("nonzero class")) << "\n";
    }
    h << "rank of the span in Ext^1: " << rank << "\n";
    emit(o, r, h.str());
    return ok;
}

int cmd_build_ext(const Options& o, const std::string& a, const std::string& b, const std::string& x,
                  const std::string& out) {
    const FOgObject m = object_arg(a), n = object_arg(b);
    const fs::path p = resolve(x);
    const ExtensionTriple e = build_extension(cocycle_from_json(read_json_file(p), m, n, source_of(p)));
    std::ostringstream h;
    h << "extension E: ";
    describe(h, e.object);
    write_or_print(o, out, to_json(e), h.str());
    return ok;
}

int cmd_extract_class(const Options& o, const std::string& file) {
    const fs::path p = resolve(file);
    const ExtensionTriple e = extension_from_json(read_json_file(p), source_of(p));
    const Cocycle x = extract_class(e);
    std::ostringstream h;
    h << "tail_gen " << text(x.tail_gen()) << "\n";
    for (const auto& [v, value] : x.exceptional()) h << "  x_" << v.p << " = " << text(value) << "\n";
    h << (is_coboundary(x) ? "split (zero class)\n" : "non-split\n");
    emit(o, to_json(x), h.str());
    return ok;
}

int cmd_baer_sum(const Options& o, const std::string& f1, const std::string& f2, const std::string& out) {
    const fs::path p1 = resolve(f1), p2 = resolve(f2);
    const ExtensionTriple a = extension_from_json(read_json_file(p1), source_of(p1));
    const ExtensionTriple b = extension_from_json(read_json_file(p2), source_of(p2));
    if (!(a.proj.target() == b.proj.target()) || !(a.incl.source() == b.incl.source()))
        throw ParseError(p2.string(), "extensions of different objects");
    const ExtensionTriple s = baer_sum(a, b);
    const Cocycle x = extract_class(s);
    std::ostringstream h;
    h << "Baer sum E: ";
    describe(h, s.object);
    h << "class: tail_gen " << text(x.tail_gen());
    for (const auto& [v, value] : x.exceptional()) h << ", x_" << v.p << " = " << text(value);
    h << "\n";
    write_or_print(o, out, to_json(s), h.str());
    return ok;
}

int cmd_ext(const Options& o, const std::string& a, const std::string& b, int degree, const std::string& probe,
            bool og) {
    const FOgComplex m = complex_arg(a), n = complex_arg(b);
    const std::set<Place> pr = parse_probe(probe);
    const ExtGroup g = ext_groups(m, n, degree, pr, og ? ExtLevel::og : ExtLevel::fog);
    Json r;
    r["degree"] = degree;
    r["probe"] = Json::array();
    for (const auto& v : pr) r["probe"].push_back(v.p);
    r["level"] = og ? "og" : "fog";
    r["rank"] = g.rank;
    std::ostringstream h;
    h << "Ext^" << degree << " on probe " << text(pr) << ": H^" << degree - 1 << "(Cone(xi)) has rank " << g.rank << "\n";
    emit(o, r, h.str());
    return ok;
}

int cmd_kill_cocycle(const Options& o, const std::string& a, const std::string& b, const std::string& bfile,
                     const std::string& out) {
    const FOgComplex m = complex_arg(a), n = complex_arg(b);
    const fs::path p = resolve(bfile);
    const ProbeFamilyFile fam = probe_family_from_json(read_json_file(p), source_of(p));
    const LemmaReport rep = check_lemma(m, n, fam.family, fam.probe);
    Json r;
    r["quasi_iso"] = rep.quasi_iso;
    r["exact"] = rep.exact;
    r["identity_hits_b"] = rep.identity_hits_b;
    r["b_killed"] = rep.b_killed;
    r["complex"] = to_json(rep.killed.e);
    std::ostringstream h;
    auto yes = [](bool x) { return x ? "yes" : "NO"; };
    h << "N -> E quasi-isomorphism: " << yes(rep.quasi_iso) << "\n"
      << "0 -> N -> E -> Cone(id_M)[-1] -> 0 exact: " << yes(rep.exact) << "\n"
      << "xi(0,0,id) = (b,0,0): " << yes(rep.identity_hits_b) << "\n"
      << "b zero in Coker(xi_{M,E}): " << yes(rep.b_killed) << "\n";
    if (!out.empty()) {
        write_json_file(out, to_json(rep.killed.e));
        h << "E written to " << out << "\n";
    }
    emit(o, r, h.str());
    return rep.ok() ? ok : negative;
}

int cmd_verify(const Options& o, const std::string& suite, std::uint64_t seed, std::optional<std::size_t> trials) {
    VerifyOptions vo{seed, trials};
    std::vector<SuiteResult> results;
    if (suite == "all") {
        results = run_all(vo);
    } else {
        int number;
        try {
            number = suite_by_name(suite).number;
        } catch (const std::out_of_range& e) {
            throw ParseError("verify", e.what());
        }
        results.push_back(run_suite(number, vo));
    }
    bool all = true;
    Json r = Json::array();
    std::ostringstream h;
    for (const auto& s : results) {
        all = all && s.passed;
        Json js;
        js["suite"] = s.name;
        js["passed"] = s.passed;
        js["samples"] = s.samples;
        js["seed"] = seed;
        Json facts;
        for (const auto& [k, v] : s.facts) facts[k] = v;
        js["facts"] = facts;
        js["failures"] = s.failures;
        r.push_back(js);
        h << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << s.title << " (" << s.samples << " samples, seed "
          << seed << ", " << s.seconds << " s)\n";
        for (const auto& [k, v] : s.facts) h << "  " << k << ": " << v << "\n";
        for (const auto& f : s.failures) h << "  failure: " << f << "\n";
    }
    emit(o, suite == "all" ? r : r[0], h.str());
    return all ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fogus: filtered Ogus structures over Q"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));

    std::string f1, f2, f3, out, tol, probe;
    std::vector<std::string> files;
    bool og = false, fog = false, fog_prime = false, intervals_only = false;
    int n = 0;
    std::optional<long> place;
    std::uint64_t seed = default_seed;
    std::optional<std::size_t> trials;
    std::function<int()> run;

    auto* validate = app.add_subcommand("validate", "Validate an object, extension or complex file");
    validate->add_option("FILE", f1)->required();
    validate->callback([&] { run = [&] { return cmd_validate(o, f1); }; });

    auto* hom = app.add_subcommand("hom", "Basis of Hom(M, N)");
    hom->add_option("M", f1)->required();
    hom->add_option("N", f2)->required();
    auto* og_flag = hom->add_flag("--og", og, "Ogus category, weights ignored");
    auto* fog_flag = hom->add_flag("--fog", fog, "Filtered category (default)");
    auto* fp_flag = hom->add_flag("--fog-prime", fog_prime, "Filtered category without purity");
    og_flag->excludes(fog_flag)->excludes(fp_flag);
    fog_flag->excludes(fp_flag);
    hom->callback([&] { run = [&] { return cmd_hom(o, f1, f2, og, fog_prime); }; });

    auto* ihom = app.add_subcommand("ihom", "Internal Hom with its weight filtration");
    ihom->add_option("M", f1)->required();
    ihom->add_option("N", f2)->required();
    ihom->add_option("-o,--output", out);
    ihom->callback([&] { run = [&] { return cmd_ihom(o, f1, f2, out); }; });

    auto* twist = app.add_subcommand("twist", "Tate twist M(n)");
    twist->add_option("M", f1)->required();
    twist->add_option("n", n)->required();
    twist->add_option("-o,--output", out);
    twist->callback([&] { run = [&] { return cmd_twist(o, f1, n, out); }; });

    auto* pure = app.add_subcommand("check-pure", "Purity of the graded pieces");
    pure->add_option("M", f1)->required();
    pure->add_option("--tol", tol, "Interval width (rational); default FOGUS_DEFAULT_TOL or 1/10^20");
    pure->add_option("--place", place, "Only this exceptional place");
    pure->add_flag("--intervals-only", intervals_only, "Skip the exact certificate");
    pure->callback([&] { run = [&] { return cmd_check_pure(o, f1, tol, place, intervals_only); }; });

    auto* ext1 = app.add_subcommand("ext1", "Rank of cocycle classes in Ext^1");
    ext1->add_option("M", f1)->required();
    ext1->add_option("N", f2)->required();
    ext1->add_option("--cocycles", files)->required();
    ext1->add_flag("--og", og, "Ogus category");
    ext1->add_option("--probe", probe, "Only these places, e.g. 2,3,5");
    ext1->callback([&] { run = [&] { return cmd_ext1(o, f1, f2, files, og, probe); }; });

    auto* build = app.add_subcommand("build-ext", "Extension E_x of M by N");
    build->add_option("M", f1)->required();
    build->add_option("N", f2)->required();
    build->add_option("X", f3)->required();
    build->add_option("-o,--output", out);
    build->callback([&] { run = [&] { return cmd_build_ext(o, f1, f2, f3, out); }; });

    auto* extract = app.add_subcommand("extract-class", "Cocycle of an extension");
    extract->add_option("E", f1)->required();
    extract->callback([&] { run = [&] { return cmd_extract_class(o, f1); }; });

    auto* baer = app.add_subcommand("baer-sum", "Baer sum of two extensions");
    baer->add_option("E1", f1)->required();
    baer->add_option("E2", f2)->required();
    baer->add_option("-o,--output", out);
    baer->callback([&] { run = [&] { return cmd_baer_sum(o, f1, f2, out); }; });

    int degree = 0;
    auto* ext = app.add_subcommand("ext", "Ext^i as cone cohomology on a probe");
    ext->add_option("M", f1)->required();
    ext->add_option("N", f2)->required();
    ext->add_option("--degree", degree)->required();
    ext->add_option("--probe", probe)->required();
    ext->add_flag("--og", og, "Ogus category");
    ext->callback([&] { run = [&] { return cmd_ext(o, f1, f2, degree, probe, og); }; });

    auto* kill = app.add_subcommand("kill-cocycle", "Complex E with N -> E killing b");
    kill->add_option("M", f1)->required();
    kill->add_option("N", f2)->required();
    kill->add_option("B", f3)->required();
    kill->add_option("-o,--output", out);
    kill->callback([&] { run = [&] { return cmd_kill_cocycle(o, f1, f2, f3, out); }; });

    std::vector<std::string> names{"all"};
    for (const auto& s : suites()) names.emplace_back(s.name);
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("SUITE", f1)->required()->check(CLI::IsMember(names));
    verify->add_option("--seed", seed, "Random seed (default 1729)");
    verify->add_option("--trials", trials, "Samples per suite");
    verify->callback([&] { run = [&] { return cmd_verify(o, f1, seed, trials); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        return run();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    }
}
