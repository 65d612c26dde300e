#pragma once

#include <stdexcept>
#include <string>

namespace fogus {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidPlace : public Error {
public:
    explicit InvalidPlace(long p) : Error("not a prime place: " + std::to_string(p)), prime(p) {}
    long prime;
};

class DuplicatePlace : public Error {
public:
    explicit DuplicatePlace(long p) : Error("duplicate exceptional place " + std::to_string(p)), prime(p) {}
    long prime;
};

class NonInvertibleFrobenius : public Error {
public:
    explicit NonInvertibleFrobenius(long p)
        : Error("Frobenius at p=" + std::to_string(p) + " is not invertible"), prime(p) {}
    long prime;
};

class NotAMorphism : public Error {
public:
    using Error::Error;
};

/// A filtration step is not preserved by the Frobenius at some place.
class FrobeniusInstability : public Error {
public:
    FrobeniusInstability(long p, int index)
        : Error("W_" + std::to_string(index) + " is not stable under Frobenius at p=" + std::to_string(p)),
          prime(p), weight_index(index) {}
    long prime;
    int weight_index;
};

/// Data that must lie in W_0 of an internal Hom does not, or a filtration
/// violates the purity/tail constraints of the filtered category.
class WeightViolation : public Error {
public:
    using Error::Error;
};

/// A subspace is not the sum of its intersections with the tail twist
/// groups, so it cannot carry a Tate tail.
class NotTailAdapted : public Error {
public:
    using Error::Error;
};

/// Differentials that do not compose to zero, or a map that is not a chain map.
class NotAComplex : public Error {
public:
    using Error::Error;
};

class NoSection : public Error {
public:
    using Error::Error;
};

class EmptyProbe : public Error {
public:
    EmptyProbe() : Error("probe set of places is empty") {}
};

class NonMonic : public Error {
public:
    NonMonic() : Error("polynomial must be monic and nonconstant") {}
};

/// Malformed input file; `context` names the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& context, const std::string& what)
        : Error(context.empty() ? what : context + ": " + what), context(context) {}
    std::string context;
};

}  // namespace fogus
