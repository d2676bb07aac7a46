#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvx {

enum class ErrorCode {
    OrderViolation,
    RangeViolation,
    GridViolation,
    LengthMismatch,
    NonFinite,
    DomainViolation,
    DomainMismatch,
    KindMismatch,
    KindIncompatible,
    CrossingEndpoints,
    NotConvex,
    NotConvexIVF,
    WeightViolation,
    BarycenterViolation,
    SyntaxError,
    EvalError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace cvx
