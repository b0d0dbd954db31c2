#include "dcongr/error.hpp"

namespace dcongr {

const char* error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidContext: return "InvalidContext";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::ZeroOperator: return "ZeroOperator";
        case ErrorKind::LevelMismatch: return "LevelMismatch";
        case ErrorKind::NormOverflow: return "NormOverflow";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::ZeroDivisor: return "ZeroDivisor";
        case ErrorKind::NonNormalizedLead: return "NonNormalizedLead";
        case ErrorKind::LeadNotUnitAtOrigin: return "LeadNotUnitAtOrigin";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::BoxTooSmall: return "BoxTooSmall";
        case ErrorKind::BasisUnavailable: return "BasisUnavailable";
        case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
        case ErrorKind::HorizonInconclusive: return "HorizonInconclusive";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::SyntaxError: return "SyntaxError";
    }
    return "Unknown";
}

ErrorClass error_class(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError:
            return ErrorClass::Parse;
        case ErrorKind::PrecisionExhausted:
        case ErrorKind::NormOverflow:
        case ErrorKind::TruncationInsufficient:
        case ErrorKind::CapExceeded:
            return ErrorClass::Precision;
        case ErrorKind::HorizonInconclusive:
            return ErrorClass::Horizon;
        default:
            return ErrorClass::Precondition;
    }
}

}  // namespace dcongr
