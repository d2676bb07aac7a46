#include "cvx/interval.hpp"

#include "cvx/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cvx {

std::string_view to_string(Kind kind) noexcept
{
    switch (kind) {
    case Kind::Bounded: return "bounded";
    case Kind::UpperHalf: return "upper_half";
    case Kind::LowerHalf: return "lower_half";
    case Kind::AllReals: return "all_reals";
    }
    return "unknown";
}

namespace {

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v))
        throw Error(ErrorCode::NonFinite, std::string(what) + " endpoint is not finite");
}

} // namespace

ExtInterval ExtInterval::bounded(double lo, double hi)
{
    require_finite(lo, "lower");
    require_finite(hi, "upper");
    if (lo > hi)
        throw Error(ErrorCode::OrderViolation,
                    "lower endpoint " + std::to_string(lo) + " exceeds upper endpoint " +
                        std::to_string(hi));
    return ExtInterval(Kind::Bounded, lo, hi);
}

ExtInterval ExtInterval::upper_half(double lo)
{
    require_finite(lo, "lower");
    return ExtInterval(Kind::UpperHalf, lo, 0.0);
}

ExtInterval ExtInterval::lower_half(double hi)
{
    require_finite(hi, "upper");
    return ExtInterval(Kind::LowerHalf, 0.0, hi);
}

bool ExtInterval::contains(double v) const noexcept
{
    if (has_lo() && v < lo_)
        return false;
    if (has_hi() && v > hi_)
        return false;
    return true;
}

ExtInterval make_bounded(double lo, double hi) { return ExtInterval::bounded(lo, hi); }

ExtInterval minkowski_add(const ExtInterval& a, const ExtInterval& b) noexcept
{
    // A side survives only if both operands are bounded on that side.
    const bool lower = a.has_lo() && b.has_lo();
    const bool upper = a.has_hi() && b.has_hi();
    const double lo = lower ? a.lo() + b.lo() : 0.0;
    const double hi = upper ? a.hi() + b.hi() : 0.0;
    switch (kind_from_sides(lower, upper)) {
    case Kind::Bounded: return ExtInterval::bounded(lo, hi);
    case Kind::UpperHalf: return ExtInterval::upper_half(lo);
    case Kind::LowerHalf: return ExtInterval::lower_half(hi);
    case Kind::AllReals: break;
    }
    return ExtInterval::all_reals();
}

ExtInterval scale(double t, const ExtInterval& a) noexcept
{
    if (t == 0.0)
        return ExtInterval::point(0.0);
    switch (a.kind()) {
    case Kind::Bounded:
        return t > 0.0 ? ExtInterval::bounded(t * a.lo(), t * a.hi())
                       : ExtInterval::bounded(t * a.hi(), t * a.lo());
    case Kind::UpperHalf:
        return t > 0.0 ? ExtInterval::upper_half(t * a.lo()) : ExtInterval::lower_half(t * a.lo());
    case Kind::LowerHalf:
        return t > 0.0 ? ExtInterval::lower_half(t * a.hi()) : ExtInterval::upper_half(t * a.hi());
    case Kind::AllReals: break;
    }
    return ExtInterval::all_reals();
}

ExtInterval convex_combination(double t, const ExtInterval& a, const ExtInterval& b)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorCode::RangeViolation, "combination weight " + std::to_string(t) +
                                                   " outside [0, 1]");
    return minkowski_add(scale(t, a), scale(1.0 - t, b));
}

bool is_subset(const ExtInterval& a, const ExtInterval& b) noexcept
{
    return is_subset_within(a, b, 0.0);
}

bool is_subset_within(const ExtInterval& a, const ExtInterval& b, double eps) noexcept
{
    if (b.has_lo() && !(a.has_lo() && b.lo() <= a.lo() + eps))
        return false;
    if (b.has_hi() && !(a.has_hi() && a.hi() <= b.hi() + eps))
        return false;
    return true;
}

double inclusion_margin(const ExtInterval& a, const ExtInterval& b) noexcept
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!b.has_lo() && !b.has_hi())
        return a.kind() == Kind::AllReals ? 0.0 : inf;
    double margin = inf;
    if (b.has_lo())
        margin = std::min(margin, a.has_lo() ? a.lo() - b.lo() : -inf);
    if (b.has_hi())
        margin = std::min(margin, a.has_hi() ? b.hi() - a.hi() : -inf);
    return margin;
}

} // namespace cvx
