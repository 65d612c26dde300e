#pragma once

// The Ogus category over Q.
//
// An object is a finite-dimensional Q-vector space M_dR together with, for
// every prime p, an invertible Frobenius on M_dR (x) Q_p.  Over Q every place
// is absolutely unramified and the Frobenius lift is the identity, so all
// structure maps are linear.  A cofinite family is presented finitely: a
// tail of Tate twists (n_1, ..., n_d), meaning phi_p = diag(p^-n_1, ...,
// p^-n_d) at every prime not listed, plus explicit matrices at finitely many
// exceptional primes.  Elements of Q_p are represented by rationals.

#include "fogus/matrix.hpp"
#include "fogus/subspace.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace fogus {

struct Place {
    long p = 2;

    Place() = default;
    /// Throws InvalidPlace unless p is prime.
    explicit Place(long prime);
    friend auto operator<=>(const Place&, const Place&) = default;
};

bool is_prime(long n);
/// The first n primes.
std::vector<Place> first_primes(std::size_t n);

/// Frobenius data at one exceptional place, as read from input.  The
/// optional comparison isomorphism epsilon is removed by normalization.
struct LocalFrobenius {
    Place place;
    Matrix frobenius;
    std::optional<Matrix> epsilon;
};

/// Unvalidated object description.
struct OgusData {
    std::size_t dim = 0;
    std::vector<int> tail;
    std::vector<LocalFrobenius> exceptional;
};

class OgusObject {
public:
    /// The zero object.
    OgusObject() = default;

    std::size_t dim() const { return tail_.size(); }
    const std::vector<int>& tail() const { return tail_; }
    const std::map<Place, Matrix>& exceptional() const { return exceptional_; }
    std::set<Place> exceptional_places() const;
    bool is_exceptional(const Place& v) const { return exceptional_.count(v) != 0; }

    /// The Frobenius at any place (explicit or from the tail rule).
    Matrix frobenius_at(const Place& v) const;
    /// diag(p^-n_i): the tail rule evaluated at v.
    Matrix tail_frobenius(const Place& v) const;

    friend bool operator==(const OgusObject&, const OgusObject&) = default;

private:
    friend OgusObject validate(const OgusData& data);
    friend OgusObject make_object(std::vector<int> tail, std::map<Place, Matrix> exceptional);

    std::vector<int> tail_;
    std::map<Place, Matrix> exceptional_;
};

/// Checks every invariant and returns the normalized object: each phi_v is
/// replaced by epsilon_v^-1 phi_v epsilon_v, and exceptional entries that
/// coincide with the tail rule are dropped.
/// Throws NonInvertibleFrobenius, DimensionMismatch, DuplicatePlace.
OgusObject validate(const OgusData& data);
/// Convenience wrapper around validate() without comparison isomorphisms.
OgusObject make_object(std::vector<int> tail, std::map<Place, Matrix> exceptional = {});

/// Q(n): dimension one, Frobenius p^-n everywhere.
OgusObject tate_object(int n);
inline OgusObject unit_object() { return tate_object(0); }

OgusObject tate_twist(const OgusObject& m, int n);
OgusObject direct_sum(const OgusObject& a, const OgusObject& b);

/// Places where either object has explicit data.
std::set<Place> joint_exceptional_places(const OgusObject& a, const OgusObject& b);

/// Entry (row, col) of a morphism source -> target may be nonzero only when
/// the twists of target coordinate `row` and source coordinate `col` agree.
bool tail_compatible(const OgusObject& source, const OgusObject& target, std::size_t row, std::size_t col);

/// Linear equations (acting on vec(f), row-major) whose solutions are
/// exactly the dR components of morphisms source -> target: commutation
/// with Frobenius at every joint exceptional place plus the tail block
/// conditions.
Matrix morphism_equations(const OgusObject& source, const OgusObject& target);

/// Matrix of g -> g phi_M - phi_N g on row-major vec(g) at place v.
Matrix commutator_matrix(const OgusObject& source, const OgusObject& target, const Place& v);

class OgusMorphism {
public:
    /// Throws NotAMorphism if f does not commute with Frobenius everywhere.
    OgusMorphism(OgusObject source, OgusObject target, Matrix f_dR);

    const OgusObject& source() const { return source_; }
    const OgusObject& target() const { return target_; }
    const Matrix& matrix() const { return f_; }

    friend bool operator==(const OgusMorphism&, const OgusMorphism&) = default;

private:
    OgusObject source_, target_;
    Matrix f_;
};

bool is_morphism(const OgusObject& source, const OgusObject& target, const Matrix& f);

/// A basis of Hom(M, N), solved as one joint linear system.
std::vector<OgusMorphism> hom_space(const OgusObject& m, const OgusObject& n);

OgusMorphism identity(const OgusObject& m);
OgusMorphism zero_morphism(const OgusObject& m, const OgusObject& n);
/// g after f.  Throws DimensionMismatch unless target(f) == source(g).
OgusMorphism compose(const OgusMorphism& g, const OgusMorphism& f);
OgusMorphism operator+(const OgusMorphism& a, const OgusMorphism& b);
OgusMorphism operator*(const Rational& s, const OgusMorphism& f);

struct SubObject {
    OgusObject object;
    OgusMorphism inclusion;
};

struct QuotientObject {
    OgusObject object;
    OgusMorphism projection;
};

/// Canonical basis of a tail-adapted subspace, or nullopt if the subspace is
/// not a sum of its intersections with the twist groups.
std::optional<std::vector<int>> tail_twists_of(const Subspace& s, const std::vector<int>& tail);

/// Sub-object on a Frobenius-stable, tail-adapted subspace (canonical basis).
/// Throws FrobeniusInstability (index 0) or NotTailAdapted.
SubObject sub_object(const OgusObject& m, const Subspace& s);
/// Quotient by a stable, tail-adapted subspace.  The quotient coordinates are
/// the complement coordinates of the subspace's pivots.
QuotientObject quotient_object(const OgusObject& m, const Subspace& s);

SubObject kernel(const OgusMorphism& f);
QuotientObject cokernel(const OgusMorphism& f);

struct ImageFactorization {
    OgusObject object;
    OgusMorphism epi;   ///< source -> image
    OgusMorphism mono;  ///< image -> target
};
ImageFactorization image(const OgusMorphism& f);

bool is_isomorphism(const OgusMorphism& f);

/// Internal Hom.  The dR space is Hom(M_dR, N_dR) flattened row-major
/// (coordinate j*dim M + i holds entry (j, i)), with Frobenius
/// f -> phi_N f phi_M^-1 and tail twists n^N_j - n^M_i.
OgusObject internal_hom(const OgusObject& m, const OgusObject& n);

/// Matrix of f -> phi_N f phi_M^-1 on row-major vec(f) at place v.
Matrix internal_hom_frobenius(const OgusObject& m, const OgusObject& n, const Place& v);

}  // namespace fogus
