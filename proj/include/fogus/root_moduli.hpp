#pragma once

#include "fogus/polynomial.hpp"
#include "fogus/rational.hpp"

#include <vector>

namespace fogus {

/// Closed interval [lower, upper] containing the absolute values of
/// `multiplicity` complex roots (counted with multiplicity).
struct ModulusInterval {
    Rational lower;
    Rational upper;
    unsigned multiplicity = 1;

    Rational width() const { return upper - lower; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
    /// Whether sqrt(c) lies in the interval (c >= 0), decided exactly.
    bool contains_sqrt_of(const Rational& c) const;
    /// Whether sqrt(c) certainly lies outside the interval.
    bool excludes_sqrt_of(const Rational& c) const { return !contains_sqrt_of(c); }
    friend bool operator==(const ModulusInterval&, const ModulusInterval&) = default;
};

/// 10^-20, the default width of certified intervals.
Rational default_precision();

/// Certified enclosures of the moduli of all complex roots of a nonzero
/// polynomial.  Intervals are disjoint, sorted, of width <= precision, and
/// their multiplicities sum to deg P.
///
/// Method: exact squarefree decomposition, then simultaneous (Aberth)
/// iteration on each squarefree factor started from companion-matrix-style
/// initial points and carried out in dyadic rational arithmetic, with the
/// working precision doubled until Smith's inclusion disks are small enough.
/// Each connected component of k disks contains exactly k roots, so the
/// enclosures are rigorous.
std::vector<ModulusInterval> certified_root_moduli(const Polynomial& p, const Rational& precision);

/// Exact test that every complex root z of P satisfies |z|^2 = c (c > 0).
/// Uses the fact that |z|^2 = c iff z + c/z is real with (z + c/z)^2 <= 4c,
/// and decides the latter with Sturm sequences on the characteristic
/// polynomial of C + c C^-1 (C the companion matrix of P).
bool all_roots_on_circle(const Polynomial& monic, const Rational& c);

}  // namespace fogus
