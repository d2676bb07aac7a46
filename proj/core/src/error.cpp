#include "cvx/error.hpp"

namespace cvx {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::GridViolation: return "GridViolation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::KindIncompatible: return "KindIncompatible";
    case ErrorCode::CrossingEndpoints: return "CrossingEndpoints";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotConvexIVF: return "NotConvexIVF";
    case ErrorCode::WeightViolation: return "WeightViolation";
    case ErrorCode::BarycenterViolation: return "BarycenterViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EvalError: return "EvalError";
    }
    return "Unknown";
}

} // namespace cvx
