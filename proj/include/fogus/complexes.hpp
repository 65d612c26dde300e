#pragma once

// Bounded complexes, cones, Hom complexes and the cone formula for Ext.
//
// Conventions: Cone(f: X -> Y)^k = X^{k+1} (+) Y^k with d(x, y) = (-d_X x,
// f x + d_Y y); X[n]^k = X^{k+n} with differential (-1)^n d_X.  Everything
// here works on a finite probe set of places without tail conditions.

#include "fogus/homext.hpp"

#include <map>
#include <set>
#include <vector>

namespace fogus {

/// Complex of finite-dimensional Q-vector spaces.
class PlaceComplex {
public:
    PlaceComplex() = default;
    /// d[k]: C^k -> C^{k+1}.  Throws DimensionMismatch or NotAComplex.
    PlaceComplex(std::map<int, std::size_t> dims, std::map<int, Matrix> d);

    std::size_t dim(int k) const;
    Matrix d(int k) const;
    /// Degrees with nonzero terms; min > max for the zero complex.
    int min_degree() const;
    int max_degree() const;
    const std::map<int, std::size_t>& dims() const { return dims_; }

private:
    std::map<int, std::size_t> dims_;
    std::map<int, Matrix> d_;
};

struct PlaceMap {
    PlaceComplex source, target;
    std::map<int, Matrix> f;
    Matrix at(int k) const;
};

bool is_chain_map(const PlaceMap& f);
std::size_t cohomology_rank(const PlaceComplex& c, int k);
/// Cocycles representing a basis of H^k, as columns.
Matrix cohomology_basis(const PlaceComplex& c, int k);
/// Rank of the induced map H^k(source) -> H^k(target).
std::size_t induced_rank(const PlaceMap& f, int k);
PlaceComplex cone(const PlaceMap& f);
PlaceComplex shift(const PlaceComplex& c, int n);

// ---------------------------------------------------------------------------

class FOgComplex {
public:
    FOgComplex() = default;
    /// Validates every differential as an FOg morphism and d^2 = 0.
    FOgComplex(std::map<int, FOgObject> terms, std::map<int, Matrix> differentials);
    static FOgComplex concentrated(const FOgObject& x, int degree = 0);

    /// The zero object outside the support.
    FOgObject term(int k) const;
    Matrix d(int k) const;
    int min_degree() const;
    int max_degree() const;
    const std::map<int, FOgObject>& terms() const { return terms_; }

    friend bool operator==(const FOgComplex&, const FOgComplex&) = default;

private:
    std::map<int, FOgObject> terms_;
    std::map<int, Matrix> d_;
};

FOgComplex shift(const FOgComplex& c, int n);

class FOgChainMap {
public:
    /// Each component must be an FOg morphism commuting with d (NotAMorphism).
    FOgChainMap(FOgComplex source, FOgComplex target, std::map<int, Matrix> components);

    const FOgComplex& source() const { return source_; }
    const FOgComplex& target() const { return target_; }
    Matrix at(int k) const;

private:
    FOgComplex source_, target_;
    std::map<int, Matrix> f_;
};

FOgChainMap identity(const FOgComplex& c);
FOgComplex cone(const FOgChainMap& f);

/// H^k as an FOg subquotient of the k-th term.
struct CohomologyObject {
    FOgObject object;
    Subspace cycles;  ///< ker d^k
    Matrix project;   ///< cycle coordinates -> H^k coordinates
    Matrix lift;      ///< H^k coordinates -> cycle coordinates
};
CohomologyObject cohomology(const FOgComplex& c, int k);
/// H^k(f) in the bases of the cohomology objects.
Matrix induced_map(const FOgChainMap& f, int k);
bool is_quasi_iso(const FOgChainMap& f);
/// 0 -> X -> Y -> Z -> 0 exact in every degree.
bool degreewise_exact(const FOgChainMap& in, const FOgChainMap& out);

// ---------------------------------------------------------------------------

/// One summand Hom(M^i, N^{i+k}) of a Hom complex, restricted to W_0 at FOg
/// level.  Coordinates are those of `room`'s canonical basis.
struct HomBlock {
    int i = 0;
    std::size_t rows = 0, cols = 0;
    Subspace room;
};

/// A(M, N) -> B(M, N); B is the product over the probe (ascending places).
struct HomComplex {
    PlaceComplex a, b;
    PlaceMap xi;
    std::map<int, std::vector<HomBlock>> blocks;
    std::vector<Place> probe;

    /// Coordinates in A^k of the family i -> component matrix.
    Matrix a_element(int k, const std::map<int, Matrix>& parts) const;
    /// Coordinates in B^k of the family (v, i) -> component matrix.
    Matrix b_element(int k, const std::map<Place, std::map<int, Matrix>>& parts) const;
};

HomComplex hom_complex(const FOgComplex& m, const FOgComplex& n, const std::set<Place>& probe,
                       ExtLevel level = ExtLevel::fog);

struct ExtGroup {
    std::size_t rank = 0;
    Matrix basis;  ///< cone cocycles
};
/// H^{i-1}(Cone(xi_{M,N})).
ExtGroup ext_groups(const FOgComplex& m, const FOgComplex& n, int i, const std::set<Place>& probe,
                    ExtLevel level = ExtLevel::fog);

/// Degree-zero element of B(M, N): degree i -> place -> b^i_v.
using ProbeFamily = std::map<int, std::map<Place, Matrix>>;

struct KilledCocycle {
    FOgComplex e;
    FOgChainMap qis;      ///< N -> E
    FOgComplex cone_id;   ///< Cone(id_M)[-1]
    FOgChainMap to_cone;  ///< E -> Cone(id_M)[-1]
};

/// E^i = N^i (+) M^{i-1} (+) M^i with the Frobenius twisted by b at the
/// probe places.  Throws WeightViolation unless every b^i_v lies in W_0.
KilledCocycle kill_cocycle(const FOgComplex& m, const FOgComplex& n, const ProbeFamily& b,
                           const std::set<Place>& probe);

/// The four properties of the killed cocycle: N -> E quasi-iso, the
/// sequence N -> E -> Cone(id_M)[-1] degreewise exact, xi_{M,E} of the
/// identity part equal to (b, 0, 0), and (b, 0, 0) in the image of xi^0.
struct LemmaReport {
    KilledCocycle killed;
    bool quasi_iso = false;
    bool exact = false;
    bool identity_hits_b = false;
    bool b_killed = false;
    bool ok() const { return quasi_iso && exact && identity_hits_b && b_killed; }
};
LemmaReport check_lemma(const FOgComplex& m, const FOgComplex& n, const ProbeFamily& b, const std::set<Place>& probe);

struct SesConeReport {
    std::set<Place> probe;
    std::size_t sub_h0 = 0, middle_h0 = 0, quotient_h0 = 0;
    std::size_t sub_hm1 = 0, middle_hm1 = 0, quotient_hm1 = 0;
    bool exact = false;             ///< sub -> middle -> quotient degreewise exact
    bool connecting_zero = false;   ///< H^-1(quotient) -> H^0(sub) vanishes
    bool rank_identity() const { return middle_h0 == sub_h0 + quotient_h0; }
    bool ok() const { return exact && connecting_zero && rank_identity(); }
};

/// 0 -> Cone(xi) -> Cone(xi') -> W_{>=1} Cone(xi') -> 0 for degree-zero M, N.
SesConeReport verify_ses_cone(const FOgObject& m, const FOgObject& n, const std::set<Place>& probe);

}  // namespace fogus
