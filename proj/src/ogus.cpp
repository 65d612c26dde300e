#include "fogus/ogus.hpp"

#include "fogus/errors.hpp"

#include <algorithm>
#include <string>

namespace fogus {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Place::Place(long prime) : p(prime) {
    if (!is_prime(prime)) throw InvalidPlace(prime);
}

std::vector<Place> first_primes(std::size_t n) {
    std::vector<Place> out;
    for (long k = 2; out.size() < n; ++k)
        if (is_prime(k)) out.emplace_back(k);
    return out;
}

std::set<Place> OgusObject::exceptional_places() const {
    std::set<Place> out;
    for (const auto& [v, _] : exceptional_) out.insert(v);
    return out;
}

Matrix OgusObject::tail_frobenius(const Place& v) const {
    std::vector<Rational> d;
    d.reserve(tail_.size());
    for (int n : tail_) d.push_back(pow(Rational(v.p), -n));
    return Matrix::diagonal(d);
}

Matrix OgusObject::frobenius_at(const Place& v) const {
    auto it = exceptional_.find(v);
    return it != exceptional_.end() ? it->second : tail_frobenius(v);
}

OgusObject validate(const OgusData& data) {
    if (data.tail.size() != data.dim)
        throw DimensionMismatch("tail has " + std::to_string(data.tail.size()) + " twists but dim is " +
                                std::to_string(data.dim));
    OgusObject m;
    m.tail_ = data.tail;
    std::set<Place> seen;
    for (const auto& local : data.exceptional) {
        const long p = local.place.p;
        if (!seen.insert(local.place).second) throw DuplicatePlace(p);
        const auto& phi = local.frobenius;
        if (phi.rows() != data.dim || phi.cols() != data.dim)
            throw DimensionMismatch("Frobenius at p=" + std::to_string(p) + " is not " + std::to_string(data.dim) +
                                    "x" + std::to_string(data.dim));
        if (determinant(phi).is_zero()) throw NonInvertibleFrobenius(p);
        Matrix normalized = phi;
        if (local.epsilon) {
            const Matrix& eps = *local.epsilon;
            if (eps.rows() != data.dim || eps.cols() != data.dim)
                throw DimensionMismatch("epsilon at p=" + std::to_string(p) + " has the wrong shape");
            auto eps_inv = try_inverse(eps);
            if (!eps_inv) throw Error("epsilon at p=" + std::to_string(p) + " is not invertible");
            normalized = *eps_inv * phi * eps;
        }
        if (normalized == m.tail_frobenius(local.place)) continue;
        m.exceptional_.emplace(local.place, std::move(normalized));
    }
    return m;
}

OgusObject make_object(std::vector<int> tail, std::map<Place, Matrix> exceptional) {
    OgusData d;
    d.dim = tail.size();
    d.tail = std::move(tail);
    for (auto& [v, phi] : exceptional) d.exceptional.push_back({v, std::move(phi), std::nullopt});
    return validate(d);
}

OgusObject tate_object(int n) { return make_object({n}); }

OgusObject tate_twist(const OgusObject& m, int n) {
    std::vector<int> tail = m.tail();
    for (auto& t : tail) t += n;
    std::map<Place, Matrix> exc;
    for (const auto& [v, phi] : m.exceptional()) exc.emplace(v, phi * pow(Rational(v.p), -n));
    return make_object(std::move(tail), std::move(exc));
}

std::set<Place> joint_exceptional_places(const OgusObject& a, const OgusObject& b) {
    std::set<Place> out = a.exceptional_places();
    for (const auto& v : b.exceptional_places()) out.insert(v);
    return out;
}

OgusObject direct_sum(const OgusObject& a, const OgusObject& b) {
    std::vector<int> tail = a.tail();
    tail.insert(tail.end(), b.tail().begin(), b.tail().end());
    std::map<Place, Matrix> exc;
    for (const auto& v : joint_exceptional_places(a, b))
        exc.emplace(v, block_diag(a.frobenius_at(v), b.frobenius_at(v)));
    return make_object(std::move(tail), std::move(exc));
}

bool tail_compatible(const OgusObject& source, const OgusObject& target, std::size_t row, std::size_t col) {
    return target.tail()[row] == source.tail()[col];
}

Matrix commutator_matrix(const OgusObject& source, const OgusObject& target, const Place& v) {
    const Matrix phi_m = source.frobenius_at(v), phi_n = target.frobenius_at(v);
    return kron(Matrix::identity(target.dim()), phi_m.transpose()) - kron(phi_n, Matrix::identity(source.dim()));
}

Matrix morphism_equations(const OgusObject& source, const OgusObject& target) {
    const std::size_t dm = source.dim(), dn = target.dim();
    Matrix eq(0, dm * dn);
    for (const auto& v : joint_exceptional_places(source, target)) eq = vstack(eq, commutator_matrix(source, target, v));
    std::vector<std::size_t> blocked;
    for (std::size_t j = 0; j < dn; ++j)
        for (std::size_t i = 0; i < dm; ++i)
            if (!tail_compatible(source, target, j, i)) blocked.push_back(j * dm + i);
    Matrix tail_rows(blocked.size(), dm * dn);
    for (std::size_t k = 0; k < blocked.size(); ++k) tail_rows(k, blocked[k]) = 1;
    return vstack(eq, tail_rows);
}

bool is_morphism(const OgusObject& source, const OgusObject& target, const Matrix& f) {
    if (f.rows() != target.dim() || f.cols() != source.dim()) return false;
    for (std::size_t j = 0; j < target.dim(); ++j)
        for (std::size_t i = 0; i < source.dim(); ++i)
            if (!f(j, i).is_zero() && !tail_compatible(source, target, j, i)) return false;
    for (const auto& v : joint_exceptional_places(source, target))
        if (f * source.frobenius_at(v) != target.frobenius_at(v) * f) return false;
    return true;
}

OgusMorphism::OgusMorphism(OgusObject source, OgusObject target, Matrix f_dR)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(f_dR)) {
    if (f_.rows() != target_.dim() || f_.cols() != source_.dim())
        throw DimensionMismatch("morphism matrix has the wrong shape");
    if (!is_morphism(source_, target_, f_)) throw NotAMorphism("matrix does not commute with Frobenius");
}

std::vector<OgusMorphism> hom_space(const OgusObject& m, const OgusObject& n) {
    const Matrix k = nullspace(morphism_equations(m, n));
    std::vector<OgusMorphism> out;
    out.reserve(k.cols());
    for (std::size_t c = 0; c < k.cols(); ++c) out.emplace_back(m, n, Matrix::unvec(k.col_block(c, 1), n.dim(), m.dim()));
    return out;
}

OgusMorphism identity(const OgusObject& m) { return {m, m, Matrix::identity(m.dim())}; }

OgusMorphism zero_morphism(const OgusObject& m, const OgusObject& n) { return {m, n, Matrix(n.dim(), m.dim())}; }

OgusMorphism compose(const OgusMorphism& g, const OgusMorphism& f) {
    if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f differs from source of g");
    return {f.source(), g.target(), g.matrix() * f.matrix()};
}

OgusMorphism operator+(const OgusMorphism& a, const OgusMorphism& b) {
    if (!(a.source() == b.source()) || !(a.target() == b.target()))
        throw DimensionMismatch("sum of morphisms with different ends");
    return {a.source(), a.target(), a.matrix() + b.matrix()};
}

OgusMorphism operator*(const Rational& s, const OgusMorphism& f) { return {f.source(), f.target(), f.matrix() * s}; }

std::optional<std::vector<int>> tail_twists_of(const Subspace& s, const std::vector<int>& tail) {
    if (s.ambient_dim() != tail.size()) throw DimensionMismatch("subspace ambient differs from tail length");
    std::vector<int> out;
    for (std::size_t c = 0; c < s.dim(); ++c) {
        std::optional<int> twist;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            if (s.basis()(i, c).is_zero()) continue;
            if (twist && *twist != tail[i]) return std::nullopt;
            twist = tail[i];
        }
        out.push_back(*twist);
    }
    return out;
}

namespace {

void require_stable(const OgusObject& m, const Subspace& s) {
    for (const auto& [v, phi] : m.exceptional())
        if (!s.contains(phi * s.basis())) throw FrobeniusInstability(v.p, 0);
}

std::vector<int> require_tail_adapted(const Subspace& s, const std::vector<int>& tail) {
    auto twists = tail_twists_of(s, tail);
    if (!twists) throw NotTailAdapted("subspace mixes coordinates of different tail twists");
    return *twists;
}

}  // namespace

SubObject sub_object(const OgusObject& m, const Subspace& s) {
    auto twists = require_tail_adapted(s, m.tail());
    require_stable(m, s);
    std::map<Place, Matrix> exc;
    for (const auto& [v, phi] : m.exceptional()) exc.emplace(v, s.coordinates_of(phi * s.basis()));
    OgusObject sub = make_object(std::move(twists), std::move(exc));
    OgusMorphism incl(sub, m, s.basis());
    return {std::move(sub), std::move(incl)};
}

QuotientObject quotient_object(const OgusObject& m, const Subspace& s) {
    require_tail_adapted(s, m.tail());
    require_stable(m, s);
    const auto comp = s.complement_coordinates();
    Matrix complement(m.dim(), comp.size());
    std::vector<int> twists;
    for (std::size_t k = 0; k < comp.size(); ++k) {
        complement(comp[k], k) = 1;
        twists.push_back(m.tail()[comp[k]]);
    }
    const Matrix full_inv = inverse(hstack(s.basis(), complement));
    const Matrix proj = full_inv.row_block(s.dim(), comp.size());
    std::map<Place, Matrix> exc;
    for (const auto& [v, phi] : m.exceptional()) exc.emplace(v, proj * phi * complement);
    OgusObject q = make_object(std::move(twists), std::move(exc));
    OgusMorphism pr(m, q, proj);
    return {std::move(q), std::move(pr)};
}

SubObject kernel(const OgusMorphism& f) { return sub_object(f.source(), Subspace::kernel_of(f.matrix())); }

QuotientObject cokernel(const OgusMorphism& f) { return quotient_object(f.target(), Subspace::image_of(f.matrix())); }

ImageFactorization image(const OgusMorphism& f) {
    const Subspace im = Subspace::image_of(f.matrix());
    auto sub = sub_object(f.target(), im);
    Matrix epi = im.coordinates_of(f.matrix());
    OgusMorphism e(f.source(), sub.object, std::move(epi));
    return {sub.object, std::move(e), std::move(sub.inclusion)};
}

bool is_isomorphism(const OgusMorphism& f) {
    return f.matrix().is_square() && !determinant(f.matrix()).is_zero();
}

Matrix internal_hom_frobenius(const OgusObject& m, const OgusObject& n, const Place& v) {
    return kron(n.frobenius_at(v), inverse(m.frobenius_at(v)).transpose());
}

OgusObject internal_hom(const OgusObject& m, const OgusObject& n) {
    std::vector<int> tail;
    tail.reserve(m.dim() * n.dim());
    for (int nj : n.tail())
        for (int mi : m.tail()) tail.push_back(nj - mi);
    std::map<Place, Matrix> exc;
    for (const auto& v : joint_exceptional_places(m, n)) exc.emplace(v, internal_hom_frobenius(m, n, v));
    return make_object(std::move(tail), std::move(exc));
}

}  // namespace fogus
