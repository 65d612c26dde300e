#pragma once

// Degree-zero Ext: cocycles in the restricted product of W_0 iHom, the map
// xi, coboundaries, extensions and the class map.
//
// A cocycle is presented as a global tail generator g plus finitely many
// explicit values; at any other place it equals g phi_M - phi_N g.

#include "fogus/weights.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace fogus {

/// FOg works inside W_0 iHom; Og drops the weight condition on g and x_v.
enum class ExtLevel { fog, og };

struct ExtSetting {
    ExtLevel level = ExtLevel::fog;
    /// When set, only these places are seen and tails impose nothing.
    std::optional<std::set<Place>> probe;

    static ExtSetting adelic(ExtLevel level = ExtLevel::fog) { return {level, std::nullopt}; }
    static ExtSetting truncated(std::set<Place> probe, ExtLevel level = ExtLevel::fog) { return {level, std::move(probe)}; }
};

class Cocycle {
public:
    /// At FOg level every value and the tail generator must lie in W_0 iHom
    /// (WeightViolation).  Explicit values equal to the tail formula are dropped.
    Cocycle(FOgObject source, FOgObject target, Matrix tail_gen, std::map<Place, Matrix> exceptional = {},
            ExtLevel level = ExtLevel::fog);

    const FOgObject& source() const { return source_; }
    const FOgObject& target() const { return target_; }
    const Matrix& tail_gen() const { return tail_gen_; }
    const std::map<Place, Matrix>& exceptional() const { return exceptional_; }
    std::set<Place> support() const;

    /// x_v.
    Matrix at(const Place& v) const;

    friend bool operator==(const Cocycle&, const Cocycle&) = default;

private:
    FOgObject source_, target_;
    Matrix tail_gen_;
    std::map<Place, Matrix> exceptional_;
};

Cocycle operator+(const Cocycle& a, const Cocycle& b);
Cocycle operator-(const Cocycle& a, const Cocycle& b);
Cocycle operator*(const Rational& s, const Cocycle& x);

/// xi(g) = (g phi_M - phi_N g)_v.  At FOg level g must lie in W_0.
Cocycle xi(const FOgObject& m, const FOgObject& n, const Matrix& g, ExtLevel level = ExtLevel::fog);
/// Zero tail, the given value at v.
Cocycle delta(const FOgObject& m, const FOgObject& n, const Place& v, const Matrix& value,
              ExtLevel level = ExtLevel::fog);
Cocycle zero_cocycle(const FOgObject& m, const FOgObject& n);

/// Places where x, M or N carry explicit data.
std::set<Place> relevant_places(const Cocycle& x);

/// Some h with xi(h) = x, or nullopt.  Adelic: one joint system over the
/// relevant places with h - tail_gen tail-compatible.  Truncated: the probe
/// places only (EmptyProbe if empty).
std::optional<Matrix> is_coboundary(const Cocycle& x, const ExtSetting& setting = {});

/// Dimension of the span of the classes in Coker(xi).
std::size_t ext1_rank(const FOgObject& m, const FOgObject& n, const std::vector<Cocycle>& classes,
                      const ExtSetting& setting = {});

struct ExtensionTriple {
    FOgObject object;
    FOgMorphism incl;  ///< N -> E
    FOgMorphism proj;  ///< E -> M
    /// U with phi^{E_x} U = U phi^E: identifies E with the block form
    /// [[phi_N, -x_v], [0, phi_M]] of the input cocycle.
    Matrix gauge;
};

/// proj incl = 0, incl injective, proj surjective, ker proj = im incl.
bool is_exact(const ExtensionTriple& t);

/// E_x.  Non-tail-compatible entries of the tail generator are moved into
/// the explicit values by the recorded unipotent gauge, so E keeps the tail
/// (n_N, n_M).  Throws WeightViolation unless x lies in W_0.
ExtensionTriple build_extension(const Cocycle& x);

/// Phi(E): s phi_M - phi_E s pulled back along incl, for the section s of
/// proj in W_0 iHom(M, E) picked by RREF.  Throws NoSection.
Cocycle extract_class(const ExtensionTriple& t, ExtLevel level = ExtLevel::fog);

/// Yoneda sum: pullback along the diagonal of M, pushout along the sum on N.
ExtensionTriple baer_sum(const ExtensionTriple& a, const ExtensionTriple& b);

struct SesReport {
    std::set<Place> probe;
    std::size_t fog_rank = 0;    ///< Ext^1_FOg on the probe
    std::size_t og_rank = 0;     ///< Ext^1_Og on the probe
    std::size_t third_rank = 0;  ///< prod_v (iHom / W_0)_v modulo xi(iHom_dR)
    bool injective = false;      ///< FOg classes stay independent in Og
    bool composite_zero = false; ///< FOg classes die in the third term
    bool surjective = false;     ///< Og classes span the third term
    bool rank_identity() const { return og_rank == fog_rank + third_rank; }
    bool ok() const { return injective && composite_zero && surjective && rank_identity(); }
};

/// 0 -> Ext^1_FOg -> Ext^1_Og -> third -> 0 on a finite probe, computed from
/// delta classes at the probe places.
SesReport ses_fog_og(const FOgObject& m, const FOgObject& n, const std::set<Place>& probe);

}  // namespace fogus
