#include "fogus/verify.hpp"

#include "fogus/complexes.hpp"
#include "fogus/generators.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace fogus {

namespace {

struct Context {
    Rng rng;
    const VerifyOptions& options;
    SuiteResult& result;

    std::size_t trials(std::size_t fallback) const { return options.trials.value_or(fallback); }

    void check(bool ok, const std::string& what) {
        if (ok) return;
        result.passed = false;
        if (result.failures.size() < 20) result.failures.push_back(what);
    }
    void fact(const std::string& key, const std::string& value) { result.facts.emplace_back(key, value); }
    void fact(const std::string& key, std::size_t value) { fact(key, std::to_string(value)); }
};

Matrix scalar(const Rational& r) { return Matrix::from_rows({{r}}); }

std::string str(const std::set<Place>& s) {
    std::string out = "{";
    for (const auto& v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v.p);
    return out + "}";
}

std::string sample(std::size_t t) { return "sample " + std::to_string(t) + ": "; }

bool cohomologous(const Cocycle& a, const Cocycle& b) { return is_coboundary(a - b).has_value(); }

FOgObject unipotent() {
    return make_fog(make_object({0, 0}, {{Place(2), Matrix::from_rows({{1, 1}, {0, 1}})}}),
                    WeightFiltration::pure(2, 0));
}

std::vector<Cocycle> probe_deltas(const FOgObject& a, const FOgObject& b, const std::set<Place>& probe) {
    std::vector<Cocycle> out;
    const Subspace w0 = ihom_step(a, b, 0);
    for (const auto& v : probe)
        for (std::size_t c = 0; c < w0.dim(); ++c)
            out.push_back(delta(a, b, v, Matrix::unvec(w0.basis().col_block(c, 1), b.dim(), a.dim())));
    return out;
}

// ---------------------------------------------------------------------------

void suite_q_q1(Context& c) {
    const FOgObject q = tate_fog(0), q1 = tate_fog(1);
    std::vector<Cocycle> deltas;
    for (long p : {2, 3, 5, 7}) deltas.push_back(delta(q, q1, Place(p), scalar(1)));
    const std::size_t rank = ext1_rank(q, q1, deltas);
    c.fact("delta places", "{2,3,5,7}");
    c.fact("delta rank", rank);
    c.check(rank == 4, "delta rank is " + std::to_string(rank));

    const Cocycle global(q, q1, scalar(3));
    const auto h = is_coboundary(global);
    c.fact("global b=3", h ? "zero class" : "nonzero class");
    c.check(h.has_value() && *h == scalar(3), "b=3 family is not xi(3)");
    for (const auto& v : first_primes(10))
        c.check(global.at(v) == scalar(Rational(3) - Rational(3) / Rational(v.p)),
                "b=3 family at p=" + std::to_string(v.p));
    c.check(ext1_rank(q, q1, {global}) == 0, "b=3 family has nonzero rank");

    const std::size_t n = c.trials(50);
    for (std::size_t t = 0; t < n; ++t) {
        const Rational g = random_rational(c.rng, 50, 20);
        c.check(is_coboundary(xi(q, q1, scalar(g))).has_value(), sample(t) + "xi(" + g.to_string() + ") not a coboundary");
    }
    c.result.samples = n;
}

void suite_round_trip(Context& c) {
    const FOgObject q = tate_fog(0), q1 = tate_fog(1);
    const std::vector<Place> places{Place(2), Place(3), Place(5)};
    const std::vector<Place> exc{Place(2), Place(3)};
    const std::size_t n = c.trials(100);
    auto mixed = [&] {
        for (;;) {
            auto w = random_weights(c.rng, 3, {-2, 0});
            if (std::count(w.begin(), w.end(), 0) && std::count(w.begin(), w.end(), -2))
                return random_pure_graded(c.rng, w, exc);
        }
    };
    std::size_t mixed_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        auto x = random_cocycle(c.rng, q, q1, places);
        auto e = build_extension(x);
        c.check(is_exact(e), sample(t) + "(Q,Q(1)) extension not exact");
        c.check(cohomologous(extract_class(e), x), sample(t) + "(Q,Q(1)) class changed");

        auto a = mixed(), b = mixed();
        auto y = random_cocycle(c.rng, a, b, places);
        auto f = build_extension(y);
        c.check(is_exact(f), sample(t) + "mixed extension not exact");
        c.check(cohomologous(extract_class(f), y), sample(t) + "mixed class changed");
        ++mixed_count;
    }
    c.fact("(Q,Q(1)) cocycles", n);
    c.fact("mixed cocycles", mixed_count);
    c.result.samples = 2 * n;
}

void suite_lemma(Context& c) {
    const std::vector<Place> places{Place(2), Place(3)};
    const std::set<Place> probe{Place(2), Place(3)};
    const std::size_t n = c.trials(50);
    std::size_t max_len = 0, max_dim = 0;
    for (std::size_t t = 0; t < n; ++t) {
        auto m = random_complex(c.rng, places);
        auto nn = random_complex(c.rng, places);
        for (const auto* x : {&m, &nn}) {
            max_len = std::max<std::size_t>(max_len, x->max_degree() - x->min_degree() + 1);
            for (const auto& [k, o] : x->terms()) max_dim = std::max(max_dim, o.dim());
        }
        auto b = random_probe_family(c.rng, m, nn, probe);
        auto r = check_lemma(m, nn, b, probe);
        c.check(r.quasi_iso, sample(t) + "N -> E is not a quasi-isomorphism");
        c.check(r.exact, sample(t) + "N -> E -> Cone(id)[-1] not exact");
        c.check(r.identity_hits_b, sample(t) + "xi(0,0,id) != (b,0,0)");
        c.check(r.b_killed, sample(t) + "b survives in Coker(xi)");
    }
    c.fact("probe", str(probe));
    c.fact("max length", max_len);
    c.fact("max term dim", max_dim);
    c.result.samples = n;
}

void suite_ext_formula(Context& c) {
    const std::vector<Place> places{Place(2), Place(3)};
    const std::set<Place> probe{Place(2), Place(3), Place(5)};
    const std::size_t n = c.trials(50);
    std::size_t nonzero_ext1 = 0;
    for (std::size_t t = 0; t < n; ++t) {
        auto a = random_pure_graded(c.rng, random_weights(c.rng, 2), places);
        auto b = random_pure_graded(c.rng, random_weights(c.rng, 2), places);
        const auto ma = FOgComplex::concentrated(a), nb = FOgComplex::concentrated(b);
        const std::size_t h0 = ext_groups(ma, nb, 0, probe).rank;
        c.check(h0 == hom_space_fog(a, b).size(), sample(t) + "i=0 cone rank differs from Hom");
        for (int i : {-2, -1, 2, 3})
            c.check(ext_groups(ma, nb, i, probe).rank == 0, sample(t) + "Ext^" + std::to_string(i) + " nonzero");
        const std::size_t h1 = ext_groups(ma, nb, 1, probe).rank;
        const std::size_t direct = ext1_rank(a, b, probe_deltas(a, b, probe), ExtSetting::truncated(probe));
        c.check(h1 == direct, sample(t) + "i=1 cone rank " + std::to_string(h1) + " vs " + std::to_string(direct));
        if (h1) ++nonzero_ext1;
    }
    c.fact("probe", str(probe));
    c.fact("samples with Ext^1 != 0", nonzero_ext1);
    c.result.samples = n;
}

void suite_ses(Context& c) {
    const FOgObject q = tate_fog(0), q1 = tate_fog(1), qm1 = tate_fog(-1), uni = unipotent();
    const std::vector<std::pair<std::string, std::pair<FOgObject, FOgObject>>> pairs{
        {"(Q,Q(-1))", {q, qm1}}, {"(Q,Q(1))", {q, q1}},   {"(Q,Q)", {q, q}},          {"(U,U)", {uni, uni}},
        {"(U,Q(-1))", {uni, qm1}}, {"(Q(-1),U)", {qm1, uni}}, {"(Q(1),U)", {q1, uni}}, {"(Q,U)", {q, uni}}};
    const std::vector<std::set<Place>> probes{{Place(2)}, {Place(2), Place(3)}, {Place(2), Place(3), Place(5)}};
    std::size_t count = 0;
    for (const auto& [label, mn] : pairs)
        for (const auto& probe : probes) {
            const std::string tag = label + " on " + str(probe) + ": ";
            auto cone_r = verify_ses_cone(mn.first, mn.second, probe);
            auto direct = ses_fog_og(mn.first, mn.second, probe);
            c.check(cone_r.ok(), tag + "cone sequence fails");
            c.check(direct.ok(), tag + "cocycle sequence fails");
            c.check(cone_r.sub_h0 == direct.fog_rank && cone_r.middle_h0 == direct.og_rank &&
                        cone_r.quotient_h0 == direct.third_rank,
                    tag + "cone and cocycle ranks disagree");
            if (probe.size() == 3)
                c.fact(label, std::to_string(direct.og_rank) + " = " + std::to_string(direct.fog_rank) + " + " +
                                  std::to_string(direct.third_rank));
            ++count;
        }
    c.result.samples = count;
}

void suite_faithful(Context& c) {
    const std::vector<Place> places{Place(2), Place(3)};
    const std::size_t n = c.trials(100);
    std::size_t nonzero = 0;
    for (std::size_t t = 0; t < n; ++t) {
        auto a = random_pure_graded(c.rng, random_weights(c.rng, 3), places);
        auto b = random_pure_graded(c.rng, random_weights(c.rng, 3), places);
        auto og = hom_space(a.base(), b.base());
        auto fog = hom_space_fog(a, b);
        bool same = og.size() == fog.size();
        for (std::size_t k = 0; same && k < og.size(); ++k) same = og[k].matrix() == fog[k].matrix();
        c.check(same, sample(t) + "Hom_FOg != Hom_Og");
        if (!og.empty()) ++nonzero;
    }
    c.fact("samples with Hom != 0", nonzero);
    c.result.samples = n;
}

void suite_purity(Context& c) {
    const PurityOptions opts;
    auto narrow = [&](const PurityResult& r) {
        return std::all_of(r.intervals.begin(), r.intervals.end(),
                           [&](const ModulusInterval& iv) { return iv.width() <= opts.tolerance; });
    };
    const auto w1 = is_pure(Polynomial({5, -2, 1}), 5, 1, opts);
    c.check(w1.verdict == Verdict::pure && narrow(w1), "x^2-2x+5 at q=5, weight 1");
    c.fact("x^2-2x+5, q=5, i=1", to_string(w1.verdict));

    bool all_impure = true;
    for (int i = -6; i <= 6; ++i) all_impure = all_impure && is_pure(Polynomial({2, -3, 1}), 2, i, opts).verdict == Verdict::impure;
    c.check(all_impure, "(x-1)(x-2) at q=2 not impure for some i");
    c.fact("(x-1)(x-2), q=2, i=-6..6", all_impure ? "impure" : "not impure");

    PurityOptions interval_only = opts;
    interval_only.exact_certificate = false;
    bool tate_ok = true;
    for (const auto& v : first_primes(6))
        for (int n = -4; n <= 4; ++n) {
            const Polynomial lin = Polynomial::linear_root(pow(Rational(v.p), -n));
            const auto r = is_pure(lin, v.p, -2 * n, opts);
            const auto e = is_pure(lin, v.p, -2 * n, interval_only);
            tate_ok = tate_ok && r.verdict == Verdict::pure && e.verdict == Verdict::pure && narrow(r) &&
                      is_pure(lin, v.p, -2 * n + 1, opts).verdict == Verdict::impure;
        }
    c.check(tate_ok, "x - p^-n not exactly pure of weight -2n");
    c.fact("x - p^-n, weight -2n", tate_ok ? "pure (exact)" : "failed");

    const std::size_t n = c.trials(50);
    for (std::size_t t = 0; t < n; ++t) {
        auto a = random_pure_graded(c.rng, random_weights(c.rng, 3), {Place(3), Place(5)});
        const int k = std::uniform_int_distribution<int>(-3, 3)(c.rng);
        auto ra = check_weight_filtration(a, opts), rt = check_weight_filtration(tate_twist(a, k), opts);
        bool ok = ra.entries.size() == rt.entries.size() && ra.all_pure();
        for (std::size_t j = 0; ok && j < ra.entries.size(); ++j)
            ok = rt.entries[j].index == ra.entries[j].index - 2 * k &&
                 rt.entries[j].result.verdict == ra.entries[j].result.verdict;
        c.check(ok, sample(t) + "verdicts do not shift by " + std::to_string(-2 * k));
    }
    c.fact("tolerance", opts.tolerance.to_string());
    c.result.samples = n;
}

void suite_fog_prime(Context& c) {
    const std::vector<Place> places{Place(2), Place(3)};
    const std::size_t n = c.trials(50);
    for (std::size_t t = 0; t < n; ++t) {
        auto a = random_pure_graded(c.rng, random_weights(c.rng, 2, {-2, 0}), places);
        auto b = random_pure_graded(c.rng, random_weights(c.rng, 2, {-2, 0}), places);
        auto ap = with_mode(a, FilterMode::fog_prime), bp = with_mode(b, FilterMode::fog_prime);
        std::vector<Cocycle> xs, xps;
        for (int k = 0; k < 3; ++k) {
            xs.push_back(random_cocycle(c.rng, a, b, places));
            if (k == 2) xs.back() = xs.back() + xi(a, b, Matrix::unvec(random_element(c.rng, ihom_step(a, b, 0)), b.dim(), a.dim()));
            xps.emplace_back(ap, bp, xs.back().tail_gen(), xs.back().exceptional());
            c.check(is_coboundary(xs.back()).has_value() == is_coboundary(xps.back()).has_value(),
                    sample(t) + "coboundary verdicts differ");
        }
        c.check(ext1_rank(a, b, xs) == ext1_rank(ap, bp, xps), sample(t) + "ext1 ranks differ");
        c.check(ext1_rank(a, b, probe_deltas(a, b, {Place(2), Place(3)})) ==
                    ext1_rank(ap, bp, probe_deltas(ap, bp, {Place(2), Place(3)})),
                sample(t) + "delta ranks differ");
    }
    c.result.samples = n;
}

void suite_unbounded(Context& c) {
    const FOgObject q = tate_fog(0), q1 = tate_fog(1);
    const std::size_t n_max = c.options.trials.value_or(25);
    const auto primes = first_primes(n_max);
    std::vector<Cocycle> deltas;
    std::string ranks;
    for (std::size_t n = 1; n <= n_max; ++n) {
        deltas.push_back(delta(q, q1, primes[n - 1], scalar(1)));
        const std::size_t r = ext1_rank(q, q1, deltas);
        c.check(r == n, "rank " + std::to_string(r) + " for the first " + std::to_string(n) + " primes");
        ranks += (ranks.empty() ? "" : " ") + std::to_string(r);
    }
    c.fact("ranks", ranks);
    c.result.samples = n_max;
}

struct Entry {
    SuiteInfo info;
    double limit;
    std::function<void(Context&)> run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries{
        {{1, "example-q-q1", "Ext^1 quotient for (Q, Q(1))"}, 1.0, suite_q_q1},
        {{2, "roundtrip", "class of the built extension"}, 10.0, suite_round_trip},
        {{3, "lemma", "killing a cocycle by a quasi-isomorphism"}, 30.0, suite_lemma},
        {{4, "extformula", "Ext^i from the cone of xi"}, 10.0, suite_ext_formula},
        {{5, "ses", "FOg -> Og short exact sequence"}, 5.0, suite_ses},
        {{6, "faithful", "Hom_FOg = Hom_Og"}, 10.0, suite_faithful},
        {{7, "purity", "Weil-number purity checker"}, 5.0, suite_purity},
        {{8, "fog-prime", "FOg and FOg' agree on Ext^1"}, 5.0, suite_fog_prime},
        {{9, "unbounded", "delta families have unbounded rank"}, 10.0, suite_unbounded},
    };
    return entries;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> out = [] {
        std::vector<SuiteInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return out;
}

const SuiteInfo& suite_by_name(const std::string& name) {
    for (const auto& s : suites())
        if (name == s.name) return s;
    throw std::out_of_range("unknown suite '" + name + "'");
}

SuiteResult run_suite(int number, const VerifyOptions& options) {
    const auto& reg = registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return e.info.number == number; });
    if (it == reg.end()) throw std::out_of_range("no suite " + std::to_string(number));

    SuiteResult result;
    result.number = number;
    result.name = it->info.name;
    result.title = it->info.title;
    result.limit_seconds = it->limit;
    result.passed = true;
    Context c{Rng(options.seed + static_cast<std::uint64_t>(number)), options, result};
    const auto start = std::chrono::steady_clock::now();
    try {
        it->run(c);
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // the limits are stated for the default sample counts
    if (!options.trials && result.seconds > result.limit_seconds) {
        std::ostringstream os;
        os << "took " << result.seconds << " s, limit " << result.limit_seconds << " s";
        c.check(false, os.str());
    }
    return result;
}

std::vector<SuiteResult> run_all(const VerifyOptions& options) {
    std::vector<SuiteResult> out;
    for (const auto& s : suites()) out.push_back(run_suite(s.number, options));
    return out;
}

}  // namespace fogus
