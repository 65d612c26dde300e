#include "fogus/weights.hpp"

#include "fogus/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fogus {

WeightFiltration::WeightFiltration(std::size_t ambient, const std::map<int, Subspace>& steps) : ambient_(ambient) {
    Subspace prev = Subspace::zero(ambient);
    for (const auto& [i, s] : steps) {
        if (s.ambient_dim() != ambient)
            throw DimensionMismatch("weight step W_" + std::to_string(i) + " lives in the wrong space");
        if (!s.contains(prev)) throw DimensionMismatch("weight filtration is not increasing at W_" + std::to_string(i));
        if (s.dim() == prev.dim()) continue;
        steps_.emplace(i, s);
        prev = s;
    }
    if (prev.dim() != ambient) throw DimensionMismatch("top step of the weight filtration is not the whole space");
}

WeightFiltration WeightFiltration::pure(std::size_t ambient, int weight) {
    if (ambient == 0) return {};
    return WeightFiltration(ambient, {{weight, Subspace::full(ambient)}});
}

std::vector<int> WeightFiltration::jumps() const {
    std::vector<int> out;
    for (const auto& [i, _] : steps_) out.push_back(i);
    return out;
}

Subspace WeightFiltration::step(int i) const {
    auto it = steps_.upper_bound(i);
    if (it == steps_.begin()) return Subspace::zero(ambient_);
    return std::prev(it)->second;
}

WeightFiltration WeightFiltration::shifted(int delta) const {
    WeightFiltration w;
    w.ambient_ = ambient_;
    for (const auto& [i, s] : steps_) w.steps_.emplace(i + delta, s);
    return w;
}

WeightFiltration tail_weight_filtration(const std::vector<int>& tail) {
    std::set<int> weights;
    for (int n : tail) weights.insert(-2 * n);
    std::map<int, Subspace> steps;
    for (int w : weights) {
        std::vector<std::size_t> coords;
        for (std::size_t k = 0; k < tail.size(); ++k)
            if (-2 * tail[k] <= w) coords.push_back(k);
        steps.emplace(w, Subspace::coordinates(tail.size(), coords));
    }
    return WeightFiltration(tail.size(), steps);
}

namespace {

// Frobenius-stable flag pieces in the coordinates of W_i.
struct GradedChart {
    Subspace upper;        // W_i
    Subspace lower_local;  // W_{i-1} in W_i coordinates
    Matrix complement;     // W_i-coordinates of a complement of lower_local
    Matrix projection;     // W_i coordinates -> Gr_i coordinates
};

GradedChart chart(const WeightFiltration& w, int i) {
    GradedChart c;
    c.upper = w.step(i);
    c.lower_local = Subspace::span(c.upper.coordinates_of(w.below(i).basis()));
    const auto comp = c.lower_local.complement_coordinates();
    c.complement = Matrix(c.upper.dim(), comp.size());
    for (std::size_t k = 0; k < comp.size(); ++k) c.complement(comp[k], k) = 1;
    c.projection = inverse(hstack(c.lower_local.basis(), c.complement)).row_block(c.lower_local.dim(), comp.size());
    return c;
}

void require_stable(const OgusObject& base, const WeightFiltration& w) {
    for (const auto& [i, s] : w.steps())
        for (const auto& [v, phi] : base.exceptional())
            if (!s.contains(phi * s.basis())) throw FrobeniusInstability(v.p, i);
}

std::vector<int> graded_twists(const OgusObject& base, const WeightFiltration& w, int i) {
    const auto upper = tail_twists_of(w.step(i), base.tail());
    const auto lower = tail_twists_of(w.below(i), base.tail());
    if (!upper || !lower) throw NotTailAdapted("weight step W_" + std::to_string(i) + " is not tail-adapted");
    std::multiset<int> rest(upper->begin(), upper->end());
    for (int n : *lower) rest.erase(rest.find(n));
    return {rest.begin(), rest.end()};
}

}  // namespace

Matrix graded_frobenius(const OgusObject& base, const WeightFiltration& w, int i, const Place& v) {
    const GradedChart c = chart(w, i);
    const Matrix phi = base.frobenius_at(v);
    if (!c.upper.contains(phi * c.upper.basis())) throw FrobeniusInstability(v.p, i);
    const Matrix local = c.upper.coordinates_of(phi * c.upper.basis());
    return c.projection * local * c.complement;
}

FOgObject make_fog(OgusObject base, WeightFiltration weights, FilterMode mode) {
    if (weights.ambient_dim() != base.dim())
        throw DimensionMismatch("weight filtration ambient dimension differs from the object's dimension");
    for (const auto& [i, s] : weights.steps())
        if (!tail_twists_of(s, base.tail()))
            throw NotTailAdapted("weight step W_" + std::to_string(i) + " is not tail-adapted");
    require_stable(base, weights);
    if (mode == FilterMode::strict) {
        for (int i : weights.jumps()) {
            for (int n : graded_twists(base, weights, i))
                if (-2 * n != i)
                    throw WeightViolation("tail coordinate of twist " + std::to_string(n) + " lies in Gr_" +
                                          std::to_string(i) + " (expected weight " + std::to_string(-2 * n) + ")");
            for (const auto& v : base.exceptional_places()) {
                const Polynomial p = charpoly(graded_frobenius(base, weights, i, v));
                if (!all_roots_on_circle(p, pow(Rational(v.p), i)))
                    throw WeightViolation("Gr_" + std::to_string(i) + " is not pure of weight " + std::to_string(i) +
                                          " at p=" + std::to_string(v.p));
            }
        }
    }
    FOgObject m;
    m.base_ = std::move(base);
    m.weights_ = std::move(weights);
    m.mode_ = mode;
    return m;
}

FOgObject make_fog(OgusObject base, FilterMode mode) {
    WeightFiltration w = tail_weight_filtration(base.tail());
    return make_fog(std::move(base), std::move(w), mode);
}

FOgObject tate_fog(int n, FilterMode mode) { return make_fog(tate_object(n), mode); }

FOgObject with_mode(const FOgObject& m, FilterMode mode) { return make_fog(m.base(), m.weights(), mode); }

FOgObject tate_twist(const FOgObject& m, int n) {
    return make_fog(tate_twist(m.base(), n), m.weights().shifted(-2 * n), m.mode());
}

namespace {

FilterMode combine(FilterMode a, FilterMode b) {
    return a == FilterMode::strict && b == FilterMode::strict ? FilterMode::strict : FilterMode::fog_prime;
}

}  // namespace

FOgObject direct_sum(const FOgObject& a, const FOgObject& b) {
    std::set<int> idx;
    for (int i : a.weights().jumps()) idx.insert(i);
    for (int i : b.weights().jumps()) idx.insert(i);
    std::map<int, Subspace> steps;
    for (int i : idx)
        steps.emplace(i, Subspace::span(block_diag(a.weights().step(i).basis(), b.weights().step(i).basis())));
    return make_fog(direct_sum(a.base(), b.base()), WeightFiltration(a.dim() + b.dim(), steps),
                    combine(a.mode(), b.mode()));
}

// ---------------------------------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pure: return "pure";
        case Verdict::impure: return "impure";
        case Verdict::undecided: return "undecided";
    }
    return "?";
}

PurityResult is_pure(const Polynomial& p, long q, int i, const PurityOptions& options) {
    if (!p.is_monic() || p.degree() < 1) throw NonMonic();
    if (q < 2) throw std::invalid_argument("is_pure: q must be at least 2");
    const Rational c = pow(Rational(q), i);
    PurityResult out;
    out.intervals = certified_root_moduli(p, options.tolerance);
    if (p.coeff(0).is_zero()) {
        out.verdict = Verdict::impure;
        out.reason = "zero is a root";
        return out;
    }
    // z -> c/z permutes the roots of a pure polynomial
    if (p.reversal(c) * (Rational(1) / p.coeff(0)) != p) {
        out.verdict = Verdict::impure;
        out.reason = "roots are not stable under z -> q^i/z";
        return out;
    }
    for (const auto& iv : out.intervals)
        if (iv.excludes_sqrt_of(c)) {
            out.verdict = Verdict::impure;
            out.reason = "a root modulus interval excludes q^(i/2)";
            return out;
        }
    if (options.exact_certificate) {
        const bool pure = all_roots_on_circle(p, c);
        out.verdict = pure ? Verdict::pure : Verdict::impure;
        out.reason = pure ? "exact certificate: every root has |z|^2 = q^i"
                          : "exact certificate: some root has |z|^2 != q^i";
        return out;
    }
    const bool exact_points = std::all_of(out.intervals.begin(), out.intervals.end(),
                                          [](const ModulusInterval& iv) { return iv.lower == iv.upper; });
    if (exact_points) {
        out.verdict = Verdict::pure;
        out.reason = "all root moduli are exactly q^(i/2)";
    } else {
        out.verdict = Verdict::undecided;
        out.reason = "intervals contain q^(i/2) but do not decide equality";
    }
    return out;
}

bool PurityReport::all_pure() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const PurityEntry& e) { return e.result.verdict == Verdict::pure; });
}

PurityReport PurityReport::at_place(const Place& v) const {
    PurityReport r;
    for (const auto& e : entries)
        if (e.place && *e.place == v) r.entries.push_back(e);
    return r;
}

PurityReport check_weight_filtration(const OgusObject& base, const WeightFiltration& w, const PurityOptions& options) {
    require_stable(base, w);
    PurityReport report;
    for (int i : w.jumps()) {
        for (const auto& v : base.exceptional_places()) {
            PurityEntry e;
            e.index = i;
            e.place = v;
            e.charpoly = charpoly(graded_frobenius(base, w, i, v));
            e.result = is_pure(e.charpoly, v.p, i, options);
            report.entries.push_back(std::move(e));
        }
        PurityEntry tail;
        tail.index = i;
        std::ostringstream bad;
        for (int n : graded_twists(base, w, i))
            if (-2 * n != i) bad << (bad.tellp() > 0 ? ", " : "") << n;
        tail.result.verdict = bad.tellp() > 0 ? Verdict::impure : Verdict::pure;
        tail.result.reason = bad.tellp() > 0 ? "tail twists of weight != " + std::to_string(i) + ": " + bad.str()
                                             : "tail twists match weight " + std::to_string(i);
        report.entries.push_back(std::move(tail));
    }
    return report;
}

PurityReport check_weight_filtration(const FOgObject& m, const PurityOptions& options) {
    return check_weight_filtration(m.base(), m.weights(), options);
}

FOgObject graded_piece(const FOgObject& m, int i) {
    const auto sub = sub_object(m.base(), m.weights().step(i));
    const GradedChart c = chart(m.weights(), i);
    const auto q = quotient_object(sub.object, c.lower_local);
    return make_fog(q.object, WeightFiltration::pure(q.object.dim(), i), m.mode());
}

// ---------------------------------------------------------------------------

Subspace ihom_step(const FOgObject& m, const FOgObject& n, int r) {
    const std::size_t dm = m.dim(), dn = n.dim();
    Matrix eq(0, dm * dn);
    for (const auto& [i, wi] : m.weights().steps()) {
        const Matrix ann = n.weights().step(i + r).annihilator();
        if (ann.rows() == 0) continue;
        eq = vstack(eq, kron(ann, wi.basis().transpose()));
    }
    return Subspace::kernel_of(eq);
}

WeightFiltration ihom_weight_filtration(const FOgObject& m, const FOgObject& n) {
    if (m.dim() == 0 || n.dim() == 0) return {};
    std::set<int> candidates;
    for (int j : n.weights().jumps())
        for (int i : m.weights().jumps()) candidates.insert(j - i);
    std::map<int, Subspace> steps;
    for (int r : candidates) steps.emplace(r, ihom_step(m, n, r));
    return WeightFiltration(m.dim() * n.dim(), steps);
}

FOgObject internal_hom(const FOgObject& m, const FOgObject& n) {
    return make_fog(internal_hom(m.base(), n.base()), ihom_weight_filtration(m, n), combine(m.mode(), n.mode()));
}

bool in_w0(const FOgObject& m, const FOgObject& n, const Matrix& f) {
    if (f.rows() != n.dim() || f.cols() != m.dim()) throw DimensionMismatch("in_w0: matrix has the wrong shape");
    for (const auto& [i, wi] : m.weights().steps())
        if (!n.weights().step(i).contains(f * wi.basis())) return false;
    return true;
}

FOgMorphism::FOgMorphism(FOgObject source, FOgObject target, Matrix f_dR)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(f_dR)) {
    if (f_.rows() != target_.dim() || f_.cols() != source_.dim())
        throw DimensionMismatch("morphism matrix has the wrong shape");
    if (!is_morphism(source_.base(), target_.base(), f_)) throw NotAMorphism("matrix does not commute with Frobenius");
    if (!in_w0(source_, target_, f_)) throw NotAMorphism("matrix does not respect the weight filtrations");
}

std::vector<FOgMorphism> hom_space_fog(const FOgObject& m, const FOgObject& n) {
    const Matrix eq = vstack(morphism_equations(m.base(), n.base()), ihom_step(m, n, 0).annihilator());
    const Matrix k = nullspace(eq);
    std::vector<FOgMorphism> out;
    for (std::size_t c = 0; c < k.cols(); ++c) out.emplace_back(m, n, Matrix::unvec(k.col_block(c, 1), n.dim(), m.dim()));
    return out;
}

FOgMorphism identity(const FOgObject& m) { return {m, m, Matrix::identity(m.dim())}; }

FOgMorphism compose(const FOgMorphism& g, const FOgMorphism& f) {
    if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f differs from source of g");
    return {f.source(), g.target(), g.matrix() * f.matrix()};
}

FOgSub sub_object(const FOgObject& m, const Subspace& s) {
    auto og = sub_object(m.base(), s);
    std::map<int, Subspace> steps;
    for (const auto& [i, wi] : m.weights().steps())
        steps.emplace(i, Subspace::span(s.coordinates_of(intersection(wi, s).basis())));
    FOgObject sub = make_fog(og.object, WeightFiltration(s.dim(), steps), m.mode());
    FOgMorphism incl(sub, m, s.basis());
    return {std::move(sub), std::move(incl)};
}

FOgQuotient quotient_object(const FOgObject& m, const Subspace& s) {
    auto og = quotient_object(m.base(), s);
    const Matrix& proj = og.projection.matrix();
    std::map<int, Subspace> steps;
    for (const auto& [i, wi] : m.weights().steps()) steps.emplace(i, Subspace::span(proj * wi.basis()));
    FOgObject q = make_fog(og.object, WeightFiltration(og.object.dim(), steps), m.mode());
    FOgMorphism pr(m, q, proj);
    return {std::move(q), std::move(pr)};
}

FOgSub kernel(const FOgMorphism& f) { return sub_object(f.source(), Subspace::kernel_of(f.matrix())); }

FOgQuotient cokernel(const FOgMorphism& f) { return quotient_object(f.target(), Subspace::image_of(f.matrix())); }

}  // namespace fogus
