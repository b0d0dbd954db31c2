#pragma once

#include <stdexcept>
#include <string>

namespace dcongr {

enum class ErrorKind {
    InvalidContext,
    DivisionByZero,
    PrecisionExhausted,
    ZeroInput,
    NotAUnit,
    ZeroOperator,
    LevelMismatch,
    NormOverflow,
    NotInvertible,
    ZeroDivisor,
    NonNormalizedLead,
    LeadNotUnitAtOrigin,
    CapExceeded,
    BoxTooSmall,
    BasisUnavailable,
    TruncationInsufficient,
    HorizonInconclusive,
    RangeError,
    SyntaxError,
};

// Coarse classes used by the command-line exit codes.
enum class ErrorClass { Parse, Precondition, Precision, Horizon };

const char* error_name(ErrorKind kind);
ErrorClass error_class(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    const char* name() const { return error_name(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace dcongr
