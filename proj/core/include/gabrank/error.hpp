#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gabrank {

enum class ErrorCode {
    ParseError,
    ReducibleModulus,
    NotPrimitiveRoot,
    BudgetExceeded,
    DivisionByZero,
    CtxMismatch,
    ZeroParameter,
    BadParameters,
    NotInvertible,
    Timeout,
    DegenerateDenominator,
    NeedsBiggerField,
    WrongClass,
    BadLambda,
    BadZ,
    ZeroInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells callers what failed.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace gabrank
