#include "fogus/complexes.hpp"

#include "fogus/errors.hpp"

#include <algorithm>

namespace fogus {

namespace {

struct Range {
    int lo = 0, hi = -1;
    bool empty() const { return lo > hi; }
};

Range join(Range a, Range b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Range range_of(const PlaceComplex& c) { return {c.min_degree(), c.max_degree()}; }
Range range_of(const FOgComplex& c) { return {c.min_degree(), c.max_degree()}; }

Range shifted(Range r, int delta) { return r.empty() ? r : Range{r.lo + delta, r.hi + delta}; }

Matrix sign(int n, const Matrix& a) { return n % 2 == 0 ? a : a * Rational(-1); }

Matrix cone_differential(const Matrix& dx_next, const Matrix& f_next, const Matrix& dy) {
    // [[-d_X, 0], [f, d_Y]]
    Matrix out(dx_next.rows() + dy.rows(), dx_next.cols() + dy.cols());
    out.set_block(0, 0, dx_next * Rational(-1));
    out.set_block(dx_next.rows(), 0, f_next);
    out.set_block(dx_next.rows(), dx_next.cols(), dy);
    return out;
}

Matrix embed_columns(std::size_t rows, const std::vector<std::size_t>& coords) {
    Matrix e(rows, coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) e(coords[k], k) = 1;
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------

PlaceComplex::PlaceComplex(std::map<int, std::size_t> dims, std::map<int, Matrix> d) {
    for (const auto& [k, n] : dims)
        if (n != 0) dims_.emplace(k, n);
    for (auto& [k, m] : d) {
        if (m.rows() != dim(k + 1) || m.cols() != dim(k))
            throw DimensionMismatch("differential d^" + std::to_string(k) + " has the wrong shape");
        if (!m.is_zero()) d_.emplace(k, std::move(m));
    }
    for (const auto& [k, m] : d_)
        if (!(this->d(k + 1) * m).is_zero()) throw NotAComplex("d^" + std::to_string(k + 1) + " d^" + std::to_string(k) + " != 0");
}

std::size_t PlaceComplex::dim(int k) const {
    auto it = dims_.find(k);
    return it == dims_.end() ? 0 : it->second;
}

Matrix PlaceComplex::d(int k) const {
    auto it = d_.find(k);
    return it == d_.end() ? Matrix(dim(k + 1), dim(k)) : it->second;
}

int PlaceComplex::min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
int PlaceComplex::max_degree() const { return dims_.empty() ? -1 : dims_.rbegin()->first; }

Matrix PlaceMap::at(int k) const {
    auto it = f.find(k);
    return it == f.end() ? Matrix(target.dim(k), source.dim(k)) : it->second;
}

bool is_chain_map(const PlaceMap& f) {
    const Range r = join(range_of(f.source), range_of(f.target));
    for (int k = r.lo - 1; k <= r.hi; ++k) {
        const Matrix a = f.at(k);
        if (a.rows() != f.target.dim(k) || a.cols() != f.source.dim(k)) return false;
        if (f.at(k + 1) * f.source.d(k) != f.target.d(k) * a) return false;
    }
    return true;
}

std::size_t cohomology_rank(const PlaceComplex& c, int k) { return c.dim(k) - rank(c.d(k)) - rank(c.d(k - 1)); }

Matrix cohomology_basis(const PlaceComplex& c, int k) {
    return quotient_basis(Subspace::kernel_of(c.d(k)), Subspace::image_of(c.d(k - 1)));
}

std::size_t induced_rank(const PlaceMap& f, int k) {
    const Subspace z = Subspace::kernel_of(f.source.d(k));
    const Subspace b = Subspace::image_of(f.target.d(k - 1));
    return rank(hstack(f.at(k) * z.basis(), b.basis())) - b.dim();
}

PlaceComplex cone(const PlaceMap& f) {
    const PlaceComplex& x = f.source;
    const PlaceComplex& y = f.target;
    const Range r = join(shifted(range_of(x), -1), range_of(y));
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> d;
    for (int k = r.lo; k <= r.hi; ++k) dims[k] = x.dim(k + 1) + y.dim(k);
    for (int k = r.lo; k < r.hi; ++k) d.emplace(k, cone_differential(x.d(k + 1), f.at(k + 1), y.d(k)));
    return {dims, d};
}

PlaceComplex shift(const PlaceComplex& c, int n) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> d;
    for (const auto& [k, m] : c.dims()) dims[k - n] = m;
    for (int k = c.min_degree(); k < c.max_degree(); ++k) d.emplace(k - n, sign(n, c.d(k)));
    return {dims, d};
}

// ---------------------------------------------------------------------------

FOgComplex::FOgComplex(std::map<int, FOgObject> terms, std::map<int, Matrix> differentials) {
    for (auto& [k, t] : terms)
        if (t.dim() != 0) terms_.emplace(k, std::move(t));
    for (auto& [k, m] : differentials) {
        FOgMorphism check(term(k), term(k + 1), m);
        if (!m.is_zero()) d_.emplace(k, std::move(m));
    }
    for (const auto& [k, m] : d_)
        if (!(d(k + 1) * m).is_zero()) throw NotAComplex("d^" + std::to_string(k + 1) + " d^" + std::to_string(k) + " != 0");
}

FOgComplex FOgComplex::concentrated(const FOgObject& x, int degree) { return FOgComplex({{degree, x}}, {}); }

FOgObject FOgComplex::term(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? FOgObject() : it->second;
}

Matrix FOgComplex::d(int k) const {
    auto it = d_.find(k);
    return it == d_.end() ? Matrix(term(k + 1).dim(), term(k).dim()) : it->second;
}

int FOgComplex::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int FOgComplex::max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

FOgComplex shift(const FOgComplex& c, int n) {
    std::map<int, FOgObject> terms;
    std::map<int, Matrix> d;
    for (const auto& [k, t] : c.terms()) terms.emplace(k - n, t);
    for (int k = c.min_degree(); k < c.max_degree(); ++k) d.emplace(k - n, sign(n, c.d(k)));
    return {terms, d};
}

FOgChainMap::FOgChainMap(FOgComplex source, FOgComplex target, std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
    const Range r = join(range_of(source_), range_of(target_));
    for (const auto& [k, m] : f_) FOgMorphism check(source_.term(k), target_.term(k), m);
    for (int k = r.lo - 1; k <= r.hi; ++k)
        if (at(k + 1) * source_.d(k) != target_.d(k) * at(k))
            throw NotAMorphism("components do not commute with the differentials in degree " + std::to_string(k));
}

Matrix FOgChainMap::at(int k) const {
    auto it = f_.find(k);
    return it == f_.end() ? Matrix(target_.term(k).dim(), source_.term(k).dim()) : it->second;
}

FOgChainMap identity(const FOgComplex& c) {
    std::map<int, Matrix> f;
    for (const auto& [k, t] : c.terms()) f.emplace(k, Matrix::identity(t.dim()));
    return {c, c, f};
}

FOgComplex cone(const FOgChainMap& f) {
    const FOgComplex& x = f.source();
    const FOgComplex& y = f.target();
    const Range r = join(shifted(range_of(x), -1), range_of(y));
    std::map<int, FOgObject> terms;
    std::map<int, Matrix> d;
    for (int k = r.lo; k <= r.hi; ++k) terms.emplace(k, direct_sum(x.term(k + 1), y.term(k)));
    for (int k = r.lo; k < r.hi; ++k) d.emplace(k, cone_differential(x.d(k + 1), f.at(k + 1), y.d(k)));
    return {terms, d};
}

CohomologyObject cohomology(const FOgComplex& c, int k) {
    const Subspace z = Subspace::kernel_of(c.d(k));
    const FOgSub cycles = sub_object(c.term(k), z);
    const Matrix boundaries = z.coordinates_of(Subspace::image_of(c.d(k - 1)).basis());
    const Subspace b = Subspace::span(boundaries);
    FOgQuotient h = quotient_object(cycles.object, b);
    return {h.object, z, h.projection.matrix(), embed_columns(z.dim(), b.complement_coordinates())};
}

Matrix induced_map(const FOgChainMap& f, int k) {
    const CohomologyObject hx = cohomology(f.source(), k), hy = cohomology(f.target(), k);
    return hy.project * hy.cycles.coordinates_of(f.at(k) * hx.cycles.basis() * hx.lift);
}

bool is_quasi_iso(const FOgChainMap& f) {
    const Range r = join(range_of(f.source()), range_of(f.target()));
    for (int k = r.lo; k <= r.hi; ++k) {
        const Matrix h = induced_map(f, k);
        if (!h.is_square()) return false;
        if (h.rows() != 0 && determinant(h).is_zero()) return false;
    }
    return true;
}

bool degreewise_exact(const FOgChainMap& in, const FOgChainMap& out) {
    if (!(in.target() == out.source())) return false;
    const Range r = join(join(range_of(in.source()), range_of(in.target())), range_of(out.target()));
    for (int k = r.lo; k <= r.hi; ++k) {
        const Matrix i = in.at(k), p = out.at(k);
        if (!(p * i).is_zero() || rank(i) != i.cols() || rank(p) != p.rows()) return false;
        if (!(Subspace::kernel_of(p) == Subspace::image_of(i))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

// Block for index i and its offset in the coordinates of its degree.
const HomBlock* find_block(const std::vector<HomBlock>& blocks, int i, std::size_t& offset) {
    offset = 0;
    for (const auto& b : blocks) {
        if (b.i == i) return &b;
        offset += b.room.dim();
    }
    return nullptr;
}

std::size_t total_dim(const std::vector<HomBlock>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.room.dim();
    return n;
}

}  // namespace

Matrix HomComplex::a_element(int k, const std::map<int, Matrix>& parts) const {
    auto it = blocks.find(k);
    const std::vector<HomBlock> none;
    const auto& bs = it == blocks.end() ? none : it->second;
    Matrix out(0, 1);
    for (const auto& b : bs) {
        auto p = parts.find(b.i);
        if (p == parts.end()) {
            out = vstack(out, Matrix(b.room.dim(), 1));
            continue;
        }
        if (p->second.rows() != b.rows || p->second.cols() != b.cols)
            throw DimensionMismatch("component " + std::to_string(b.i) + " has the wrong shape");
        const Matrix v = p->second.vec();
        if (!b.room.contains(v)) throw WeightViolation("component " + std::to_string(b.i) + " is not in W_0");
        out = vstack(out, b.room.coordinates_of(v));
    }
    for (const auto& [i, m] : parts) {
        std::size_t off = 0;
        if (!find_block(bs, i, off) && !m.is_zero()) throw WeightViolation("component " + std::to_string(i) + " has no room in degree " + std::to_string(k));
    }
    return out;
}

Matrix HomComplex::b_element(int k, const std::map<Place, std::map<int, Matrix>>& parts) const {
    Matrix out(0, 1);
    for (const auto& v : probe) {
        auto it = parts.find(v);
        out = vstack(out, a_element(k, it == parts.end() ? std::map<int, Matrix>{} : it->second));
    }
    return out;
}

HomComplex hom_complex(const FOgComplex& m, const FOgComplex& n, const std::set<Place>& probe, ExtLevel level) {
    if (probe.empty()) throw EmptyProbe();
    HomComplex h;
    h.probe.assign(probe.begin(), probe.end());
    const Range rm = range_of(m), rn = range_of(n);
    std::map<int, std::size_t> adims, bdims;
    std::map<int, Matrix> ad, bd, xi;
    if (!rm.empty() && !rn.empty()) {
        const int kmin = rn.lo - rm.hi, kmax = rn.hi - rm.lo;
        for (int k = kmin; k <= kmax; ++k) {
            auto& bs = h.blocks[k];
            for (int i = rm.lo; i <= rm.hi; ++i) {
                const FOgObject src = m.term(i), tgt = n.term(i + k);
                if (src.dim() == 0 || tgt.dim() == 0) continue;
                Subspace room = level == ExtLevel::fog ? ihom_step(src, tgt, 0) : Subspace::full(src.dim() * tgt.dim());
                if (room.dim() == 0) continue;
                bs.push_back({i, tgt.dim(), src.dim(), std::move(room)});
            }
            adims[k] = total_dim(bs);
            bdims[k] = adims[k] * probe.size();
        }
        for (int k = kmin; k < kmax; ++k) {
            const auto& src_blocks = h.blocks[k];
            const auto& tgt_blocks = h.blocks[k + 1];
            Matrix dk(adims[k + 1], adims[k]);
            std::size_t off = 0;
            for (const auto& b : src_blocks) {
                std::size_t t = 0;
                if (const HomBlock* same = find_block(tgt_blocks, b.i, t)) {
                    const Matrix img = kron(n.d(b.i + k), Matrix::identity(b.cols)) * b.room.basis();
                    dk.set_block(t, off, same->room.coordinates_of(img));
                }
                if (const HomBlock* prev = find_block(tgt_blocks, b.i - 1, t)) {
                    const Matrix img = kron(Matrix::identity(b.rows), m.d(b.i - 1).transpose()) * b.room.basis();
                    dk.set_block(t, off, prev->room.coordinates_of(sign(k + 1, img)));
                }
                off += b.room.dim();
            }
            ad.emplace(k, dk);
            bd.emplace(k, kron(Matrix::identity(probe.size()), dk));
        }
        for (int k = kmin; k <= kmax; ++k) {
            const auto& bs = h.blocks[k];
            Matrix x(0, adims[k]);
            for (const auto& v : h.probe) {
                Matrix per(adims[k], adims[k]);
                std::size_t off = 0;
                for (const auto& b : bs) {
                    const Matrix c = commutator_matrix(m.term(b.i).base(), n.term(b.i + k).base(), v);
                    per.set_block(off, off, b.room.coordinates_of(c * b.room.basis()));
                    off += b.room.dim();
                }
                x = vstack(x, per);
            }
            xi.emplace(k, x);
        }
    }
    h.a = PlaceComplex(adims, ad);
    h.b = PlaceComplex(bdims, bd);
    h.xi = PlaceMap{h.a, h.b, xi};
    return h;
}

ExtGroup ext_groups(const FOgComplex& m, const FOgComplex& n, int i, const std::set<Place>& probe, ExtLevel level) {
    const HomComplex h = hom_complex(m, n, probe, level);
    const PlaceComplex c = cone(h.xi);
    return {cohomology_rank(c, i - 1), cohomology_basis(c, i - 1)};
}

KilledCocycle kill_cocycle(const FOgComplex& m, const FOgComplex& n, const ProbeFamily& b,
                           const std::set<Place>& probe) {
    if (probe.empty()) throw EmptyProbe();
    for (const auto& [i, perplace] : b)
        for (const auto& [v, value] : perplace) {
            if (!probe.count(v)) throw Error("b has a value at p=" + std::to_string(v.p) + " outside the probe");
            const FOgObject src = m.term(i), tgt = n.term(i);
            if (value.rows() != tgt.dim() || value.cols() != src.dim())
                throw DimensionMismatch("b^" + std::to_string(i) + " has the wrong shape");
            if (!in_w0(src, tgt, value))
                throw WeightViolation("b^" + std::to_string(i) + " at p=" + std::to_string(v.p) + " is not in W_0");
        }
    auto b_at = [&](int i, const Place& v) {
        auto it = b.find(i);
        if (it != b.end()) {
            auto jt = it->second.find(v);
            if (jt != it->second.end()) return jt->second;
        }
        return Matrix(n.term(i).dim(), m.term(i).dim());
    };

    const Range r = join(range_of(n), join(range_of(m), shifted(range_of(m), 1)));
    std::map<int, FOgObject> terms;
    std::map<int, Matrix> d, qis, to_cone;
    for (int i = r.lo; i <= r.hi; ++i) {
        const FOgObject ni = n.term(i), mp = m.term(i - 1), mi = m.term(i);
        const std::size_t dn = ni.dim(), dp = mp.dim(), dm = mi.dim();
        const FOgObject sum = direct_sum(direct_sum(ni, mp), mi);
        std::set<Place> places = sum.base().exceptional_places();
        places.insert(probe.begin(), probe.end());
        std::map<Place, Matrix> exc;
        for (const auto& v : places) {
            Matrix phi = sum.base().frobenius_at(v);
            if (probe.count(v)) {
                const Matrix bi = b_at(i, v);
                phi.set_block(0, dn, bi * m.d(i - 1) - n.d(i - 1) * b_at(i - 1, v));
                phi.set_block(0, dn + dp, bi * Rational(-1));
            }
            exc.emplace(v, std::move(phi));
        }
        terms.emplace(i, make_fog(make_object(sum.base().tail(), std::move(exc)), sum.weights(), sum.mode()));

        Matrix q(dn + dp + dm, dn);
        q.set_block(0, 0, Matrix::identity(dn));
        qis.emplace(i, q);
        Matrix t(dm + dp, dn + dp + dm);
        t.set_block(0, dn + dp, Matrix::identity(dm));
        t.set_block(dm, dn, Matrix::identity(dp) * Rational(-1));
        to_cone.emplace(i, t);
    }
    for (int i = r.lo; i < r.hi; ++i) {
        const std::size_t dn = n.term(i).dim(), dp = m.term(i - 1).dim(), dm = m.term(i).dim();
        const std::size_t dn1 = n.term(i + 1).dim(), dm1 = m.term(i + 1).dim();
        Matrix de(dn1 + dm + dm1, dn + dp + dm);
        de.set_block(0, 0, n.d(i));
        de.set_block(dn1, dn, m.d(i - 1) * Rational(-1));
        de.set_block(dn1, dn + dp, Matrix::identity(dm));
        de.set_block(dn1 + dm, dn + dp, m.d(i));
        d.emplace(i, de);
    }
    FOgComplex e(terms, d);
    FOgComplex cone_id = shift(cone(identity(m)), -1);
    FOgChainMap qmap(n, e, qis);
    FOgChainMap tmap(e, cone_id, to_cone);
    return {std::move(e), std::move(qmap), std::move(cone_id), std::move(tmap)};
}

LemmaReport check_lemma(const FOgComplex& m, const FOgComplex& n, const ProbeFamily& b, const std::set<Place>& probe) {
    LemmaReport r{kill_cocycle(m, n, b, probe)};
    const KilledCocycle& k = r.killed;
    r.quasi_iso = is_quasi_iso(k.qis);
    r.exact = degreewise_exact(k.qis, k.to_cone);

    const HomComplex h = hom_complex(m, k.e, probe);
    std::map<int, Matrix> id_part;
    std::map<Place, std::map<int, Matrix>> b_part;
    for (const auto& [i, mi] : m.terms()) {
        const std::size_t dn = n.term(i).dim(), dp = m.term(i - 1).dim(), rows = dn + dp + mi.dim();
        Matrix u(rows, mi.dim());
        u.set_block(dn + dp, 0, Matrix::identity(mi.dim()));
        id_part.emplace(i, std::move(u));
        for (const auto& v : probe) {
            Matrix bv(rows, mi.dim());
            auto it = b.find(i);
            if (it != b.end()) {
                auto jt = it->second.find(v);
                if (jt != it->second.end()) bv.set_block(0, 0, jt->second);
            }
            b_part[v].emplace(i, std::move(bv));
        }
    }
    const Matrix target = h.b_element(0, b_part);
    r.identity_hits_b = h.xi.at(0) * h.a_element(0, id_part) == target;
    r.b_killed = Subspace::image_of(h.xi.at(0)).contains(target);
    return r;
}

SesConeReport verify_ses_cone(const FOgObject& m, const FOgObject& n, const std::set<Place>& probe) {
    const FOgComplex mc = FOgComplex::concentrated(m), nc = FOgComplex::concentrated(n);
    const HomComplex sub = hom_complex(mc, nc, probe, ExtLevel::fog);
    const HomComplex mid = hom_complex(mc, nc, probe, ExtLevel::og);
    const std::size_t k = m.dim() * n.dim(), places = probe.size();

    const Subspace w0 = ihom_step(m, n, 0);
    const Matrix q = w0.annihilator();
    const Matrix lift = q.rows() == 0 ? Matrix(k, 0) : q.transpose() * inverse(q * q.transpose());
    Matrix xi3(0, q.rows());
    for (const auto& v : probe) xi3 = vstack(xi3, q * commutator_matrix(m.base(), n.base(), v) * lift);
    const PlaceComplex a3({{0, q.rows()}}, {}), b3({{0, q.rows() * places}}, {});
    const PlaceMap quot{a3, b3, {{0, xi3}}};

    const PlaceComplex csub = cone(sub.xi), cmid = cone(mid.xi), cquot = cone(quot);
    const Matrix incl_a = sub.a.dim(0) == 0 ? Matrix(mid.a.dim(0), 0) : w0.basis();
    const Matrix proj_a = mid.a.dim(0) == 0 ? Matrix(q.rows(), 0) : q;
    const Matrix id_p = Matrix::identity(places);
    const PlaceMap j{csub, cmid, {{-1, incl_a}, {0, kron(id_p, incl_a)}}};
    const PlaceMap p{cmid, cquot, {{-1, proj_a}, {0, kron(id_p, proj_a)}}};

    SesConeReport r;
    r.probe = probe;
    r.exact = is_chain_map(j) && is_chain_map(p);
    for (int deg : {-1, 0}) {
        const Matrix a = j.at(deg), b = p.at(deg);
        if (!(b * a).is_zero() || rank(a) != a.cols() || rank(b) != b.rows() ||
            !(Subspace::kernel_of(b) == Subspace::image_of(a)))
            r.exact = false;
    }
    r.sub_hm1 = cohomology_rank(csub, -1);
    r.middle_hm1 = cohomology_rank(cmid, -1);
    r.quotient_hm1 = cohomology_rank(cquot, -1);
    r.sub_h0 = cohomology_rank(csub, 0);
    r.middle_h0 = cohomology_rank(cmid, 0);
    r.quotient_h0 = cohomology_rank(cquot, 0);
    r.connecting_zero = induced_rank(j, 0) == r.sub_h0;
    return r;
}

}  // namespace fogus
