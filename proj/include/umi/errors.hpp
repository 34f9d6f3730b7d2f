#pragma once

#include <stdexcept>
#include <string>

namespace umi {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero scalar") {}
};
struct NegativeValuation : Error {
    NegativeValuation() : Error("residue undefined: valuation is negative") {}
};
struct InvalidPrime : Error {
    explicit InvalidPrime(const std::string& what) : Error(what) {}
};
struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};
struct ZeroFunction : Error {
    ZeroFunction() : Error("operation undefined for the zero function") {}
};
struct ZeroDenominator : Error {
    ZeroDenominator() : Error("rational function with zero denominator") {}
};
struct NonUnitContent : Error {
    NonUnitContent() : Error("reduction requires unit content in numerator and denominator") {}
};
struct TypeMismatch : Error {
    explicit TypeMismatch(const std::string& what) : Error(what) {}
};
struct DegenerateTriple : Error {
    DegenerateTriple() : Error("points of a triple must be pairwise distinct") {}
};
struct UnrepresentableRadius : Error {
    explicit UnrepresentableRadius(const std::string& what) : Error(what) {}
};
struct ConstantFunction : Error {
    ConstantFunction() : Error("operation requires a nonconstant function") {}
};
struct IterationCapExceeded : Error {
    explicit IterationCapExceeded(const std::string& what) : Error(what) {}
};
struct InvalidAlpha : Error {
    InvalidAlpha() : Error("alpha must differ from 0 and 1") {}
};
struct OverlappingIslands : Error {
    OverlappingIslands() : Error("islands must be pairwise disjoint") {}
};
struct UnknownPreset : Error {
    explicit UnknownPreset(const std::string& name) : Error("unknown preset: " + name) {}
};
struct FactorizationMismatch : Error {
    FactorizationMismatch() : Error("supplied factors do not multiply back to the polynomial") {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// A recentering root does not lift within K_M; carries a diagnostic for the caller.
struct ExtensionRequired : Error {
    std::string diagnostic;
    explicit ExtensionRequired(const std::string& diag)
        : Error("root localization leaves K_M: " + diag), diagnostic(diag) {}
};

}  // namespace umi
