#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diophant {

// Global resource limits. Mutable singleton; the CLI seeds it from
// DIOPHANT_MAX_PREC_BITS / DIOPHANT_ENUM_CAP before dispatch.
struct Limits {
    unsigned long max_precision_bits = 4096;
    std::uint64_t enumeration_cap = 100'000'000ULL;
};

inline Limits& limits() {
    static Limits l;
    return l;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resource exhaustion: refinement hit limits().max_precision_bits without a decision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Precondition: the operation only makes sense for certified-irrational input.
struct IrrationalRequired : Error {
    using Error::Error;
};

// Precondition: gcd(a, b) != 1 where coprimality is required.
struct NotCoprime : Error {
    using Error::Error;
};

// The requested closed-form family does not cover this input.
struct NonTrivialCase : Error {
    using Error::Error;
};

// Precondition: input must not be a perfect square.
struct SquareInput : Error {
    using Error::Error;
};

// Shape mismatch between declared and supplied dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// The search space exceeds limits().enumeration_cap.
struct InfeasibleEnumeration : Error {
    using Error::Error;
};

// A zero denominator or similar structural degeneracy makes the bound meaningless.
struct DegenerateBound : Error {
    using Error::Error;
};

// A result was produced but its certificate could not be established.
struct CertificationFailed : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

} // namespace diophant
