#pragma once

// Seeded random samples for property tests and the verification suites.

#include "fogus/complexes.hpp"
#include "fogus/homext.hpp"

#include <random>
#include <vector>

namespace fogus {

using Rng = std::mt19937_64;

/// a/b with |a| <= num_bound, 1 <= b <= den_bound.
Rational random_rational(Rng& rng, long num_bound = 5, long den_bound = 3);
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long num_bound = 3, long den_bound = 2);
Matrix random_invertible(Rng& rng, std::size_t n);
/// Random vector of the subspace (combination of its basis).
Matrix random_element(Rng& rng, const Subspace& s);

/// Frobenius block of size 1 or 2 whose eigenvalues all have absolute value
/// p^(weight/2).  Size 1 needs an even weight.
Matrix pure_block(Rng& rng, long p, int weight, std::size_t size);

/// A strict FOg object whose i-th coordinate (before an optional random
/// permutation) has the given even weight.  At each place the Frobenius is
/// block upper triangular with pure diagonal blocks, ordered by weight.
FOgObject random_pure_graded(Rng& rng, const std::vector<int>& coordinate_weights, const std::vector<Place>& places,
                             bool permute = true);
/// Weights drawn from `choices` for a random dimension in [1, max_dim].
std::vector<int> random_weights(Rng& rng, std::size_t max_dim, const std::vector<int>& choices = {-2, 0, 2});

/// Tail generator and values at a random subset of `places`, all in W_0
/// iHom(M, N) (or anywhere, at Og level).
Cocycle random_cocycle(Rng& rng, const FOgObject& m, const FOgObject& n, const std::vector<Place>& places,
                       ExtLevel level = ExtLevel::fog);

/// Random FOg automorphism (combination of End basis that is invertible).
Matrix random_automorphism(Rng& rng, const FOgObject& x);

/// Bounded complex in degrees 0..length-1 with terms of dimension at most 3
/// and pure-graded pieces of weight -2 or 0 at `places`.  Built from
/// C_k (+) B_{k-1} (+) B_k with d = (0, e_k b, 0) for a random endomorphism
/// e_k, then conjugated by random automorphisms of each term.
FOgComplex random_complex(Rng& rng, const std::vector<Place>& places, std::size_t max_length = 3);

/// Degree-zero element of B(M, N): random W_0 values at every probe place.
ProbeFamily random_probe_family(Rng& rng, const FOgComplex& m, const FOgComplex& n, const std::set<Place>& probe);

}  // namespace fogus
