#pragma once

#include <stdexcept>
#include <string>

namespace walshtf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A frequency interval or frequency index would be negative.
struct NegativeFrequency : Error {
    using Error::Error;
};

// A step function window cannot hold the requested support.
struct WindowTooSmall : Error {
    using Error::Error;
};

// A step function resolution is too coarse for the requested wave packet.
struct ResolutionTooCoarse : Error {
    using Error::Error;
};

// A family that must have pairwise disjoint tiles does not.
struct DisjointnessViolation : Error {
    using Error::Error;
};

// A set that must have positive measure is empty.
struct ZeroMeasure : Error {
    using Error::Error;
};

// An exceptional set covers more than half of the set it is removed from.
struct MajorityViolation : Error {
    using Error::Error;
};

// An algorithm entry condition does not hold for the given inputs.
struct PreconditionViolated : Error {
    using Error::Error;
};

// An exponent substitution leaves the admissible range.
struct ThetaOutOfRange : Error {
    using Error::Error;
};

// A convex-combination parameter is outside [0, 1) or does not sum to one.
struct BadTheta : Error {
    using Error::Error;
};

// A four-tuple of exponents does not sum to one.
struct NotOnHyperplane : Error {
    using Error::Error;
};

// Malformed input file or unparseable value.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace walshtf
