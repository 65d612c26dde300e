#include "fogus/homext.hpp"

#include "fogus/errors.hpp"

namespace fogus {

namespace {

Matrix tail_formula(const FOgObject& m, const FOgObject& n, const Matrix& g, const Place& v) {
    return g * m.base().frobenius_at(v) - n.base().frobenius_at(v) * g;
}

// Row-major indices (j, i) of iHom(M, N) that the tail forces to vanish.
std::vector<std::size_t> blocked_entries(const OgusObject& m, const OgusObject& n) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n.dim(); ++j)
        for (std::size_t i = 0; i < m.dim(); ++i)
            if (!tail_compatible(m, n, j, i)) out.push_back(j * m.dim() + i);
    return out;
}

// g = compatible part + non-compatible part
std::pair<Matrix, Matrix> split_tail(const OgusObject& m, const OgusObject& n, const Matrix& g) {
    Matrix c = g, nc(g.rows(), g.cols());
    for (std::size_t j = 0; j < g.rows(); ++j)
        for (std::size_t i = 0; i < g.cols(); ++i)
            if (!tail_compatible(m, n, j, i)) {
                nc(j, i) = g(j, i);
                c(j, i) = 0;
            }
    return {c, nc};
}

Matrix left_inverse(const Matrix& injective) {
    const Matrix t = injective.transpose();
    return inverse(t * injective) * t;
}

void require_same_ends(const Cocycle& a, const Cocycle& b) {
    if (!(a.source() == b.source()) || !(a.target() == b.target()))
        throw DimensionMismatch("cocycles between different objects");
}

std::set<Place> places_for(const Cocycle& x, const ExtSetting& s) {
    if (!s.probe) return relevant_places(x);
    if (s.probe->empty()) throw EmptyProbe();
    return *s.probe;
}

}  // namespace

Cocycle::Cocycle(FOgObject source, FOgObject target, Matrix tail_gen, std::map<Place, Matrix> exceptional,
                 ExtLevel level)
    : source_(std::move(source)), target_(std::move(target)), tail_gen_(std::move(tail_gen)) {
    const std::size_t dm = source_.dim(), dn = target_.dim();
    if (tail_gen_.rows() != dn || tail_gen_.cols() != dm)
        throw DimensionMismatch("tail generator must be " + std::to_string(dn) + "x" + std::to_string(dm));
    if (level == ExtLevel::fog && !in_w0(source_, target_, tail_gen_))
        throw WeightViolation("tail generator is not in W_0 iHom");
    for (auto& [v, value] : exceptional) {
        if (value.rows() != dn || value.cols() != dm)
            throw DimensionMismatch("cocycle value at p=" + std::to_string(v.p) + " has the wrong shape");
        if (level == ExtLevel::fog && !in_w0(source_, target_, value))
            throw WeightViolation("cocycle value at p=" + std::to_string(v.p) + " is not in W_0 iHom");
        if (value == tail_formula(source_, target_, tail_gen_, v)) continue;
        exceptional_.emplace(v, std::move(value));
    }
}

std::set<Place> Cocycle::support() const {
    std::set<Place> out;
    for (const auto& [v, _] : exceptional_) out.insert(v);
    return out;
}

Matrix Cocycle::at(const Place& v) const {
    auto it = exceptional_.find(v);
    return it != exceptional_.end() ? it->second : tail_formula(source_, target_, tail_gen_, v);
}

Cocycle operator+(const Cocycle& a, const Cocycle& b) {
    require_same_ends(a, b);
    std::map<Place, Matrix> exc;
    std::set<Place> supp = a.support();
    for (const auto& v : b.support()) supp.insert(v);
    for (const auto& v : supp) exc.emplace(v, a.at(v) + b.at(v));
    return {a.source(), a.target(), a.tail_gen() + b.tail_gen(), std::move(exc), ExtLevel::og};
}

Cocycle operator*(const Rational& s, const Cocycle& x) {
    std::map<Place, Matrix> exc;
    for (const auto& [v, value] : x.exceptional()) exc.emplace(v, value * s);
    return {x.source(), x.target(), x.tail_gen() * s, std::move(exc), ExtLevel::og};
}

Cocycle operator-(const Cocycle& a, const Cocycle& b) { return a + Rational(-1) * b; }

Cocycle xi(const FOgObject& m, const FOgObject& n, const Matrix& g, ExtLevel level) { return {m, n, g, {}, level}; }

Cocycle delta(const FOgObject& m, const FOgObject& n, const Place& v, const Matrix& value, ExtLevel level) {
    return {m, n, Matrix(n.dim(), m.dim()), {{v, value}}, level};
}

Cocycle zero_cocycle(const FOgObject& m, const FOgObject& n) { return {m, n, Matrix(n.dim(), m.dim())}; }

std::set<Place> relevant_places(const Cocycle& x) {
    std::set<Place> out = x.support();
    for (const auto& v : joint_exceptional_places(x.source().base(), x.target().base())) out.insert(v);
    return out;
}

std::optional<Matrix> is_coboundary(const Cocycle& x, const ExtSetting& setting) {
    const auto& m = x.source();
    const auto& n = x.target();
    const std::size_t k = m.dim() * n.dim();
    Matrix a(0, k), b(0, 1);
    for (const auto& v : places_for(x, setting)) {
        a = vstack(a, commutator_matrix(m.base(), n.base(), v));
        b = vstack(b, x.at(v).vec());
    }
    if (!setting.probe) {
        // h - g tail-compatible
        const auto blocked = blocked_entries(m.base(), n.base());
        Matrix rows(blocked.size(), k), rhs(blocked.size(), 1);
        const Matrix g = x.tail_gen().vec();
        for (std::size_t r = 0; r < blocked.size(); ++r) {
            rows(r, blocked[r]) = 1;
            rhs(r, 0) = g(blocked[r], 0);
        }
        a = vstack(a, rows);
        b = vstack(b, rhs);
    }
    if (setting.level == ExtLevel::fog) {
        const Matrix ann = ihom_step(m, n, 0).annihilator();
        a = vstack(a, ann);
        b = vstack(b, Matrix(ann.rows(), 1));
    }
    auto sol = solve(a, b);
    if (!sol) return std::nullopt;
    return Matrix::unvec(sol->particular, n.dim(), m.dim());
}

std::size_t ext1_rank(const FOgObject& m, const FOgObject& n, const std::vector<Cocycle>& classes,
                      const ExtSetting& setting) {
    if (classes.empty()) return 0;
    std::set<Place> places;
    for (const auto& x : classes) {
        if (!(x.source() == m) || !(x.target() == n)) throw DimensionMismatch("ext1_rank: cocycle between other objects");
        for (const auto& v : places_for(x, setting)) places.insert(v);
    }
    const std::size_t k = m.dim() * n.dim(), c = classes.size();
    // unknowns: combination coefficients, then h
    Matrix a(0, c + k);
    for (const auto& v : places) {
        Matrix rows(k, c + k);
        for (std::size_t j = 0; j < c; ++j) rows.set_block(0, j, classes[j].at(v).vec());
        rows.set_block(0, c, commutator_matrix(m.base(), n.base(), v) * Rational(-1));
        a = vstack(a, rows);
    }
    if (!setting.probe) {
        const auto blocked = blocked_entries(m.base(), n.base());
        Matrix rows(blocked.size(), c + k);
        for (std::size_t r = 0; r < blocked.size(); ++r) {
            rows(r, c + blocked[r]) = 1;
            for (std::size_t j = 0; j < c; ++j) rows(r, j) = -classes[j].tail_gen().vec()(blocked[r], 0);
        }
        a = vstack(a, rows);
    }
    if (setting.level == ExtLevel::fog) {
        const Matrix ann = ihom_step(m, n, 0).annihilator();
        Matrix rows(ann.rows(), c + k);
        rows.set_block(0, c, ann);
        a = vstack(a, rows);
    }
    const Matrix kernel = nullspace(a);
    return c - rank(kernel.row_block(0, c));
}

bool is_exact(const ExtensionTriple& t) {
    const Matrix& i = t.incl.matrix();
    const Matrix& p = t.proj.matrix();
    return (p * i).is_zero() && rank(i) == i.cols() && rank(p) == p.rows() &&
           Subspace::kernel_of(p) == Subspace::image_of(i);
}

ExtensionTriple build_extension(const Cocycle& x) {
    const auto& m = x.source();
    const auto& n = x.target();
    const std::size_t dm = m.dim(), dn = n.dim();
    const auto places = relevant_places(x);
    if (!in_w0(m, n, x.tail_gen())) throw WeightViolation("tail generator is not in W_0 iHom");
    for (const auto& v : places)
        if (!in_w0(m, n, x.at(v)))
            throw WeightViolation("cocycle value at p=" + std::to_string(v.p) + " is not in W_0 iHom");

    const Matrix g_n = split_tail(m.base(), n.base(), x.tail_gen()).second;
    Matrix gauge = Matrix::identity(dn + dm);
    gauge.set_block(0, dn, g_n * Rational(-1));

    std::map<Place, Matrix> exc;
    for (const auto& v : places) {
        const Matrix shifted = x.at(v) - tail_formula(m, n, g_n, v);
        Matrix phi(dn + dm, dn + dm);
        phi.set_block(0, 0, n.base().frobenius_at(v));
        phi.set_block(0, dn, shifted * Rational(-1));
        phi.set_block(dn, dn, m.base().frobenius_at(v));
        exc.emplace(v, std::move(phi));
    }
    std::vector<int> tail = n.base().tail();
    tail.insert(tail.end(), m.base().tail().begin(), m.base().tail().end());
    const FOgObject split = direct_sum(n, m);
    FOgObject e = make_fog(make_object(std::move(tail), std::move(exc)), split.weights(), split.mode());

    Matrix incl(dn + dm, dn), proj(dm, dn + dm);
    incl.set_block(0, 0, Matrix::identity(dn));
    proj.set_block(0, dn, Matrix::identity(dm));
    FOgMorphism in(n, e, incl);
    FOgMorphism pr(e, m, proj);
    return {std::move(e), std::move(in), std::move(pr), std::move(gauge)};
}

Cocycle extract_class(const ExtensionTriple& t, ExtLevel level) {
    const FOgObject& e = t.object;
    const FOgObject& m = t.proj.target();
    const FOgObject& n = t.incl.source();
    const std::size_t de = e.dim(), dm = m.dim();

    Matrix a = kron(t.proj.matrix(), Matrix::identity(dm));
    Matrix b = Matrix::identity(dm).vec();
    if (level == ExtLevel::fog) {
        const Matrix ann = ihom_step(m, e, 0).annihilator();
        a = vstack(a, ann);
        b = vstack(b, Matrix(ann.rows(), 1));
    }
    auto sol = solve(a, b);
    if (!sol) throw NoSection("no section of the projection in W_0 iHom(M, E)");
    const Matrix s = Matrix::unvec(sol->particular, de, dm);

    const Matrix back = left_inverse(t.incl.matrix());
    const Matrix s_n = split_tail(m.base(), e.base(), s).second;
    const Matrix tail_gen = back * s_n;

    std::set<Place> places = joint_exceptional_places(m.base(), e.base());
    for (const auto& v : n.base().exceptional_places()) places.insert(v);
    std::map<Place, Matrix> exc;
    for (const auto& v : places)
        exc.emplace(v, back * (s * m.base().frobenius_at(v) - e.base().frobenius_at(v) * s));
    return {m, n, tail_gen, std::move(exc), level};
}

ExtensionTriple baer_sum(const ExtensionTriple& a, const ExtensionTriple& b) {
    if (!(a.proj.target() == b.proj.target()) || !(a.incl.source() == b.incl.source()))
        throw DimensionMismatch("baer_sum: extensions of different objects");
    const FOgObject& m = a.proj.target();
    const FOgObject& n = a.incl.source();
    const std::size_t d1 = a.object.dim(), d2 = b.object.dim();

    const FOgObject both = direct_sum(a.object, b.object);
    const FOgMorphism diff(both, m, hstack(a.proj.matrix(), b.proj.matrix() * Rational(-1)));
    const FOgSub pullback = kernel(diff);
    const Matrix& iota = pullback.inclusion.matrix();
    const Matrix back = left_inverse(iota);

    const FOgMorphism anti(n, pullback.object, back * vstack(a.incl.matrix(), b.incl.matrix() * Rational(-1)));
    const FOgQuotient pushout = cokernel(anti);

    const Matrix first = back * vstack(a.incl.matrix(), Matrix(d2, n.dim()));
    FOgMorphism incl(n, pushout.object, pushout.projection.matrix() * first);

    const auto comp = Subspace::image_of(anti.matrix()).complement_coordinates();
    Matrix lift(pullback.object.dim(), comp.size());
    for (std::size_t k = 0; k < comp.size(); ++k) lift(comp[k], k) = 1;
    FOgMorphism proj(pushout.object, m, a.proj.matrix() * iota.row_block(0, d1) * lift);

    Matrix gauge = Matrix::identity(pushout.object.dim());
    return {pushout.object, std::move(incl), std::move(proj), std::move(gauge)};
}

SesReport ses_fog_og(const FOgObject& m, const FOgObject& n, const std::set<Place>& probe) {
    if (probe.empty()) throw EmptyProbe();
    SesReport r;
    r.probe = probe;
    const std::size_t dm = m.dim(), dn = n.dim(), k = dm * dn;
    const Subspace w0 = ihom_step(m, n, 0);

    std::vector<Cocycle> fog_classes, og_classes;
    for (const auto& v : probe) {
        for (std::size_t c = 0; c < w0.dim(); ++c)
            fog_classes.push_back(delta(m, n, v, Matrix::unvec(w0.basis().col_block(c, 1), dn, dm)));
        for (std::size_t c = 0; c < k; ++c) {
            Matrix e(k, 1);
            e(c, 0) = 1;
            og_classes.push_back(delta(m, n, v, Matrix::unvec(e, dn, dm), ExtLevel::og));
        }
    }
    r.fog_rank = ext1_rank(m, n, fog_classes, ExtSetting::truncated(probe, ExtLevel::fog));
    r.og_rank = ext1_rank(m, n, og_classes, ExtSetting::truncated(probe, ExtLevel::og));
    r.injective = ext1_rank(m, n, fog_classes, ExtSetting::truncated(probe, ExtLevel::og)) == r.fog_rank;

    // third term: prod_v iHom_v / W_0 modulo xi(iHom_dR)
    const Matrix q = w0.annihilator();
    const std::size_t rq = q.rows(), width = rq * probe.size();
    Matrix xi3(0, k);
    for (const auto& v : probe) xi3 = vstack(xi3, q * commutator_matrix(m.base(), n.base(), v));
    const std::size_t xi_rank = rank(xi3);
    r.third_rank = width - xi_rank;

    r.composite_zero = true;
    for (const auto& x : fog_classes)
        for (const auto& v : probe)
            if (!(q * x.at(v).vec()).is_zero()) r.composite_zero = false;

    Matrix images(width, 0);
    for (const auto& x : og_classes) {
        Matrix col(0, 1);
        for (const auto& v : probe) col = vstack(col, q * x.at(v).vec());
        images = hstack(images, col);
    }
    r.surjective = rank(hstack(images, xi3)) == width;
    return r;
}

}  // namespace fogus
