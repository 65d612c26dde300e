#pragma once

#include "fogus/matrix.hpp"

#include <cstddef>
#include <vector>

namespace fogus {

/// A linear subspace of Q^n.  The basis is kept in canonical form (the
/// transpose of the reduced row-echelon form of any spanning set), so two
/// subspaces are equal iff their bases are equal.
class Subspace {
public:
    Subspace() = default;
    /// Span of the columns of `generators` inside Q^{generators.rows()}.
    static Subspace span(const Matrix& generators);
    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    /// Span of the standard basis vectors e_i, i in `coords`.
    static Subspace coordinates(std::size_t ambient, const std::vector<std::size_t>& coords);
    /// {x : A x = 0}
    static Subspace kernel_of(const Matrix& a);
    static Subspace image_of(const Matrix& a) { return span(a); }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    /// Pivot coordinate of each basis column; the remaining coordinates span
    /// a complement.
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<std::size_t> complement_coordinates() const;

    bool contains(const Matrix& v) const;  // every column of v
    bool contains(const Subspace& other) const;
    /// Coordinates c with basis() * c = v (v must be a member).
    Matrix coordinates_of(const Matrix& v) const;
    /// Matrix Q with ker Q = this subspace.
    Matrix annihilator() const;

    friend bool operator==(const Subspace& a, const Subspace& b) = default;

private:
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
/// Image of a subspace under a linear map.
Subspace image(const Matrix& map, const Subspace& s);
/// Preimage {x : map x in s}.
Subspace preimage(const Matrix& map, const Subspace& s);
/// Columns of a basis of a complement of `sub` inside `whole` (sub must be
/// contained in whole); deterministic.
Matrix quotient_basis(const Subspace& whole, const Subspace& sub);

}  // namespace fogus
