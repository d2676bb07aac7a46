#pragma once

#include <string_view>

namespace cvx {

// The four shapes a closed convex non-empty subset of the reals can take.
enum class Kind { Bounded, UpperHalf, LowerHalf, AllReals };

std::string_view to_string(Kind kind) noexcept;

constexpr bool has_lower(Kind kind) noexcept
{
    return kind == Kind::Bounded || kind == Kind::UpperHalf;
}

constexpr bool has_upper(Kind kind) noexcept
{
    return kind == Kind::Bounded || kind == Kind::LowerHalf;
}

constexpr Kind kind_from_sides(bool lower, bool upper) noexcept
{
    if (lower && upper)
        return Kind::Bounded;
    if (lower)
        return Kind::UpperHalf;
    if (upper)
        return Kind::LowerHalf;
    return Kind::AllReals;
}

/// Closed non-empty interval of the extended kind: [lo, hi], [lo, inf),
/// (-inf, hi] or the whole line. Unused endpoints are stored as 0 so that
/// defaulted equality compares only meaningful data.
class ExtInterval {
public:
    static ExtInterval bounded(double lo, double hi);
    static ExtInterval upper_half(double lo);
    static ExtInterval lower_half(double hi);
    static ExtInterval all_reals() noexcept { return ExtInterval(Kind::AllReals, 0.0, 0.0); }
    static ExtInterval point(double v) { return bounded(v, v); }

    Kind kind() const noexcept { return kind_; }
    bool has_lo() const noexcept { return has_lower(kind_); }
    bool has_hi() const noexcept { return has_upper(kind_); }

    // Precondition: the corresponding endpoint exists.
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    bool contains(double v) const noexcept;

    friend bool operator==(const ExtInterval&, const ExtInterval&) = default;

private:
    ExtInterval(Kind kind, double lo, double hi) noexcept : kind_(kind), lo_(lo), hi_(hi) {}

    Kind kind_;
    double lo_;
    double hi_;
};

/// Throws OrderViolation when lo > hi, NonFinite for non-finite endpoints.
ExtInterval make_bounded(double lo, double hi);

ExtInterval minkowski_add(const ExtInterval& a, const ExtInterval& b) noexcept;

/// {t * a : a in A}. Zero times any set is {0}; negative t reflects.
ExtInterval scale(double t, const ExtInterval& a) noexcept;

/// t*A + (1-t)*B. Throws RangeViolation unless 0 <= t <= 1.
ExtInterval convex_combination(double t, const ExtInterval& a, const ExtInterval& b);

bool is_subset(const ExtInterval& a, const ExtInterval& b) noexcept;

/// Same as is_subset with every endpoint comparison relaxed by eps.
bool is_subset_within(const ExtInterval& a, const ExtInterval& b, double eps) noexcept;

/// Signed margin by which A sits inside B: the minimum over the finite
/// endpoints of B of the distance to the matching endpoint of A. Negative
/// when an endpoint of A pokes out, -inf when the kinds make A unbounded on
/// a side where B is bounded, +inf when B is the whole line and A is not.
/// Zero for R inside R.
double inclusion_margin(const ExtInterval& a, const ExtInterval& b) noexcept;

inline ExtInterval operator+(const ExtInterval& a, const ExtInterval& b) noexcept
{
    return minkowski_add(a, b);
}

inline ExtInterval operator*(double t, const ExtInterval& a) noexcept { return scale(t, a); }

} // namespace cvx
