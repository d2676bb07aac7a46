#pragma once

#include "cvx/error.hpp"

#include <optional>

namespace cvx::testing {

// Code of the cvx::Error thrown by fn, or nullopt when it returns.
template <class Fn>
std::optional<ErrorCode> code_of(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace cvx::testing
