#include "fogus/subspace.hpp"

#include "fogus/errors.hpp"

namespace fogus {

Subspace Subspace::span(const Matrix& generators) {
    Subspace s;
    s.ambient_ = generators.rows();
    const auto rr = rref(generators.transpose());
    s.pivots_ = rr.pivots;
    s.basis_ = rr.reduced.row_block(0, rr.pivots.size()).transpose();
    if (s.basis_.rows() != s.ambient_) s.basis_ = Matrix(s.ambient_, 0);
    return s;
}

Subspace Subspace::zero(std::size_t ambient) { return span(Matrix(ambient, 0)); }
Subspace Subspace::full(std::size_t ambient) { return span(Matrix::identity(ambient)); }

Subspace Subspace::coordinates(std::size_t ambient, const std::vector<std::size_t>& coords) {
    Matrix g(ambient, coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) g(coords[k], k) = 1;
    return span(g);
}

Subspace Subspace::kernel_of(const Matrix& a) { return span(nullspace(a)); }

std::vector<std::size_t> Subspace::complement_coordinates() const {
    std::vector<bool> used(ambient_, false);
    for (auto p : pivots_) used[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_; ++i)
        if (!used[i]) out.push_back(i);
    return out;
}

bool Subspace::contains(const Matrix& v) const {
    if (v.rows() != ambient_) throw DimensionMismatch("subspace membership: wrong ambient dimension");
    if (v.cols() == 0) return true;
    return rank(hstack(basis_, v)) == dim();
}

bool Subspace::contains(const Subspace& other) const { return contains(other.basis_); }

Matrix Subspace::coordinates_of(const Matrix& v) const {
    // basis rows at the pivot coordinates form an identity block
    if (!contains(v)) throw DimensionMismatch("vector not in subspace");
    return v.select_rows(pivots_);
}

Matrix Subspace::annihilator() const { return nullspace(basis_.transpose()).transpose(); }

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace sum: ambient mismatch");
    return Subspace::span(hstack(a.basis(), b.basis()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersection: ambient mismatch");
    const Matrix k = nullspace(hstack(a.basis(), -b.basis()));
    return Subspace::span(a.basis() * k.row_block(0, a.dim()));
}

Subspace image(const Matrix& map, const Subspace& s) {
    if (map.cols() != s.ambient_dim()) throw DimensionMismatch("image: shape mismatch");
    return Subspace::span(map * s.basis());
}

Subspace preimage(const Matrix& map, const Subspace& s) {
    if (map.rows() != s.ambient_dim()) throw DimensionMismatch("preimage: shape mismatch");
    return Subspace::kernel_of(s.annihilator() * map);
}

Matrix quotient_basis(const Subspace& whole, const Subspace& sub) {
    if (!whole.contains(sub)) throw DimensionMismatch("quotient_basis: not a subspace");
    // greedily extend the basis of sub by basis vectors of whole
    Matrix acc = sub.basis();
    std::vector<std::size_t> chosen;
    std::size_t r = sub.dim();
    for (std::size_t j = 0; j < whole.dim(); ++j) {
        Matrix trial = hstack(acc, whole.basis().col_block(j, 1));
        if (rank(trial) > r) {
            acc = std::move(trial);
            chosen.push_back(j);
            ++r;
        }
    }
    return whole.basis().select_cols(chosen);
}

}  // namespace fogus
