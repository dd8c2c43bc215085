#include "gabrank/error.hpp"

namespace gabrank {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::NotPrimitiveRoot: return "NotPrimitiveRoot";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::CtxMismatch: return "CtxMismatch";
        case ErrorCode::ZeroParameter: return "ZeroParameter";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::NeedsBiggerField: return "NeedsBiggerField";
        case ErrorCode::WrongClass: return "WrongClass";
        case ErrorCode::BadLambda: return "BadLambda";
        case ErrorCode::BadZ: return "BadZ";
        case ErrorCode::ZeroInput: return "ZeroInput";
    }
    return "Unknown";
}

}  // namespace gabrank
