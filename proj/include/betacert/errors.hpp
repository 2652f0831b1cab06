#pragma once

#include <stdexcept>
#include <string>

#include "betacert/ball.hpp"

namespace betacert {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation's precondition does not hold for its arguments.
class DomainError : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("field elements belong to different number fields") {}
};

/// Newton iteration hit its step cap without settling.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Interval Newton could not prove existence and uniqueness of a root.
class ContractionFailure : public Error {
public:
    using Error::Error;
};

/// A certified comparison was still undecided at the precision cap.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what, Precision cap)
        : Error(what + " (undecided at " + std::to_string(cap) + " bits)")
    {
    }
};

/// Precision ceiling for every refinement loop. Defaults to 2^16 bits and
/// can be lowered or raised through BETACERT_PRECISION_CAP.
Precision precision_cap();

} // namespace betacert
