#pragma once

// Weight filtrations, Weil-number purity and the filtered Ogus category.

#include "fogus/ogus.hpp"
#include "fogus/polynomial.hpp"
#include "fogus/root_moduli.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fogus {

/// An increasing filtration W_i of a finite-dimensional space, stored by its
/// jumps.  W_i = 0 below the least jump and equals the step of the greatest
/// jump <= i otherwise; the top step is the whole space.
class WeightFiltration {
public:
    /// The (unique) filtration of the zero space.
    WeightFiltration() = default;
    /// Steps that do not enlarge the previous step are dropped.  Throws
    /// DimensionMismatch unless the steps increase and the last one is full.
    WeightFiltration(std::size_t ambient, const std::map<int, Subspace>& steps);
    /// Everything in weight `weight`.
    static WeightFiltration pure(std::size_t ambient, int weight);

    std::size_t ambient_dim() const { return ambient_; }
    const std::map<int, Subspace>& steps() const { return steps_; }
    std::vector<int> jumps() const;
    Subspace step(int i) const;
    Subspace below(int i) const { return step(i - 1); }
    WeightFiltration shifted(int delta) const;

    friend bool operator==(const WeightFiltration&, const WeightFiltration&) = default;

private:
    std::size_t ambient_ = 0;
    std::map<int, Subspace> steps_;
};

/// The filtration forced by a Tate tail: coordinates of twist n in weight -2n.
WeightFiltration tail_weight_filtration(const std::vector<int>& tail);

enum class FilterMode {
    strict,     ///< filtered Ogus category: graded pieces must be pure
    fog_prime,  ///< only Frobenius stability of the steps is required
};

class FOgObject {
public:
    /// The zero object.
    FOgObject() = default;

    const OgusObject& base() const { return base_; }
    const WeightFiltration& weights() const { return weights_; }
    FilterMode mode() const { return mode_; }
    std::size_t dim() const { return base_.dim(); }

    friend bool operator==(const FOgObject&, const FOgObject&) = default;

private:
    friend FOgObject make_fog(OgusObject base, WeightFiltration weights, FilterMode mode);
    OgusObject base_;
    WeightFiltration weights_;
    FilterMode mode_ = FilterMode::strict;
};

/// Validates and builds a filtered object.  Every step must be tail-adapted
/// (NotTailAdapted) and stable under each exceptional Frobenius
/// (FrobeniusInstability).  In strict mode each graded piece must in
/// addition be pure of its index at every exceptional place and every tail
/// coordinate of twist n must sit in weight -2n (WeightViolation).
FOgObject make_fog(OgusObject base, WeightFiltration weights, FilterMode mode = FilterMode::strict);
/// Object with the filtration determined by its tail.
FOgObject make_fog(OgusObject base, FilterMode mode = FilterMode::strict);
FOgObject tate_fog(int n, FilterMode mode = FilterMode::strict);
FOgObject with_mode(const FOgObject& m, FilterMode mode);

FOgObject tate_twist(const FOgObject& m, int n);
FOgObject direct_sum(const FOgObject& a, const FOgObject& b);

// ---------------------------------------------------------------------------
// Purity

enum class Verdict { pure, impure, undecided };
std::string to_string(Verdict v);

struct PurityOptions {
    Rational tolerance = default_precision();
    /// Decide purity exactly (Sturm-sequence certificate).  Without it the
    /// verdict relies on the certified intervals alone and may be undecided.
    bool exact_certificate = true;
};

struct PurityResult {
    Verdict verdict = Verdict::undecided;
    std::vector<ModulusInterval> intervals;
    std::string reason;
};

/// Whether all roots of the monic nonconstant P are Weil numbers of q-weight
/// i, i.e. have absolute value q^(i/2).  Throws NonMonic.
PurityResult is_pure(const Polynomial& p, long q, int i, const PurityOptions& options = {});

struct PurityEntry {
    int index = 0;
    std::optional<Place> place;  ///< nullopt: the tail places
    Polynomial charpoly;         ///< Frobenius on Gr_index (empty for tail entries)
    PurityResult result;
};

struct PurityReport {
    std::vector<PurityEntry> entries;
    bool all_pure() const;
    /// Restriction to one exceptional place.
    PurityReport at_place(const Place& v) const;
};

/// Purity of every graded piece at every exceptional place, plus the
/// symbolic tail check.  Throws FrobeniusInstability if a step is unstable.
PurityReport check_weight_filtration(const FOgObject& m, const PurityOptions& options = {});
/// Same, for a filtration that has not been validated.
PurityReport check_weight_filtration(const OgusObject& base, const WeightFiltration& w,
                                     const PurityOptions& options = {});

/// Frobenius of Gr_i at v in the canonical graded-piece basis.
Matrix graded_frobenius(const OgusObject& base, const WeightFiltration& w, int i, const Place& v);
/// W_i / W_{i-1} with induced structure, filtration concentrated at i.
FOgObject graded_piece(const FOgObject& m, int i);

// ---------------------------------------------------------------------------
// Internal Hom and morphisms

/// W_r of the internal Hom: matrices f with f(W_i M) in W_{i+r} N for all i,
/// as a subspace of row-major vec(f).
Subspace ihom_step(const FOgObject& m, const FOgObject& n, int r);
WeightFiltration ihom_weight_filtration(const FOgObject& m, const FOgObject& n);
FOgObject internal_hom(const FOgObject& m, const FOgObject& n);
/// Is the dR matrix f (rows: N, cols: M) in W_0 iHom(M, N)?
bool in_w0(const FOgObject& m, const FOgObject& n, const Matrix& f);

class FOgMorphism {
public:
    /// Throws NotAMorphism unless f is an Og morphism in W_0 iHom.
    FOgMorphism(FOgObject source, FOgObject target, Matrix f_dR);

    const FOgObject& source() const { return source_; }
    const FOgObject& target() const { return target_; }
    const Matrix& matrix() const { return f_; }
    OgusMorphism forget() const { return {source_.base(), target_.base(), f_}; }

    friend bool operator==(const FOgMorphism&, const FOgMorphism&) = default;

private:
    FOgObject source_, target_;
    Matrix f_;
};

std::vector<FOgMorphism> hom_space_fog(const FOgObject& m, const FOgObject& n);
FOgMorphism identity(const FOgObject& m);
FOgMorphism compose(const FOgMorphism& g, const FOgMorphism& f);

struct FOgSub {
    FOgObject object;
    FOgMorphism inclusion;
};
struct FOgQuotient {
    FOgObject object;
    FOgMorphism projection;
};

/// Sub-object with the induced filtration W_i cap S.
FOgSub sub_object(const FOgObject& m, const Subspace& s);
/// Quotient with the image filtration.
FOgQuotient quotient_object(const FOgObject& m, const Subspace& s);
FOgSub kernel(const FOgMorphism& f);
FOgQuotient cokernel(const FOgMorphism& f);

}  // namespace fogus
