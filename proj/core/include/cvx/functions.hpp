#pragma once

#include "cvx/interval.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cvx {

inline constexpr double default_eps = 1e-9;

/// A real function given by breakpoints and values, read as its
/// piecewise-linear interpolant on [xs.front(), xs.back()].
class SampledFunction {
public:
    /// Throws LengthMismatch, GridViolation (n < 2 or xs not strictly
    /// increasing) or NonFinite.
    SampledFunction(std::vector<double> xs, std::vector<double> ys);

    std::span<const double> xs() const noexcept { return xs_; }
    std::span<const double> ys() const noexcept { return ys_; }
    std::size_t size() const noexcept { return xs_.size(); }
    double lo() const noexcept { return xs_.front(); }
    double hi() const noexcept { return xs_.back(); }

    /// Interpolated value; exact at breakpoints. Throws DomainViolation.
    double operator()(double x) const;

    /// Slope of segment i, between breakpoints i and i+1.
    double slope(std::size_t i) const noexcept
    {
        return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    }

    friend bool operator==(const SampledFunction&, const SampledFunction&) = default;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

SampledFunction make_sampled(std::vector<double> xs, std::vector<double> ys);

inline double eval(const SampledFunction& f, double x) { return f(x); }

SampledFunction negate(const SampledFunction& f);

/// The same function with the breakpoints `grid` (which must lie in the
/// domain and be strictly increasing).
SampledFunction resample(const SampledFunction& f, std::span<const double> grid);

/// Sorted union of both breakpoint sets. Throws DomainMismatch unless both
/// domains coincide exactly.
std::vector<double> merged_grid(const SampledFunction& f, const SampledFunction& g);

/// f restricted to [a, b]; throws DomainViolation if [a, b] is not inside
/// the domain or a >= b.
SampledFunction restrict_to(const SampledFunction& f, double a, double b);

bool is_convex(const SampledFunction& f, double eps = default_eps);
bool is_concave(const SampledFunction& f, double eps = default_eps);
bool is_increasing(const SampledFunction& f, double eps = default_eps);
bool is_decreasing(const SampledFunction& f, double eps = default_eps);

/// f - g on the merged grid.
SampledFunction difference(const SampledFunction& f, const SampledFunction& g);

/// Greatest convex minorant, reported on the breakpoints of f.
SampledFunction lower_convex_envelope(const SampledFunction& f);

/// Least concave majorant, -lower_convex_envelope(-f).
SampledFunction upper_concave_envelope(const SampledFunction& f);

/// Indices of the breakpoints of f that are vertices of its lower convex
/// hull (collinear boundary points included). Always contains 0 and n-1.
std::vector<std::size_t> lower_hull_indices(const SampledFunction& f);

struct AffineMap {
    double m = 0.0;
    double c = 0.0;

    double operator()(double x) const noexcept { return m * x + c; }
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// A set-valued function of a single kind whose endpoints are sampled
/// functions sharing one grid.
class IntervalFunction {
public:
    Kind kind() const noexcept { return kind_; }
    std::span<const double> xs() const noexcept { return xs_; }
    double lo() const noexcept { return xs_.front(); }
    double hi() const noexcept { return xs_.back(); }

    // Present exactly when the kind has the corresponding endpoint.
    const std::optional<SampledFunction>& lower() const noexcept { return lower_; }
    const std::optional<SampledFunction>& upper() const noexcept { return upper_; }

    ExtInterval operator()(double x) const;

    friend IntervalFunction make_interval_function(Kind, std::vector<double>,
                                                   std::optional<std::vector<double>>,
                                                   std::optional<std::vector<double>>);
    friend IntervalFunction resample(const IntervalFunction&, std::span<const double>);

private:
    IntervalFunction() = default;

    Kind kind_ = Kind::AllReals;
    std::vector<double> xs_;
    std::optional<SampledFunction> lower_;
    std::optional<SampledFunction> upper_;
};

/// Throws KindMismatch when the endpoint data present does not match the
/// kind, CrossingEndpoints when lower > upper somewhere, plus the
/// SampledFunction construction errors.
IntervalFunction make_interval_function(Kind kind, std::vector<double> xs,
                                        std::optional<std::vector<double>> lower_ys,
                                        std::optional<std::vector<double>> upper_ys);

IntervalFunction make_interval_function(Kind kind, const std::optional<SampledFunction>& lower,
                                        const std::optional<SampledFunction>& upper);

/// Whole-line valued function on the grid xs.
IntervalFunction make_all_reals(std::vector<double> xs);

IntervalFunction resample(const IntervalFunction& f, std::span<const double> grid);

/// Sorted union of both grids. Throws DomainMismatch unless the domains
/// coincide exactly.
std::vector<double> merged_grid(const IntervalFunction& f, const IntervalFunction& g);

inline ExtInterval eval_ivf(const IntervalFunction& f, double x) { return f(x); }

/// Lower endpoint convex and upper endpoint concave.
bool is_convex_ivf(const IntervalFunction& f, double eps = default_eps);

struct AffineIntervalMap {
    Kind kind = Kind::AllReals;
    std::optional<AffineMap> lower;
    std::optional<AffineMap> upper;

    ExtInterval operator()(double x) const;
};

/// Validates kind/endpoint consistency; for Bounded, lower must not exceed
/// upper by more than eps at the domain ends a and b.
AffineIntervalMap make_affine_interval_map(Kind kind, std::optional<AffineMap> lower,
                                           std::optional<AffineMap> upper, double a, double b,
                                           double eps = 0.0);

} // namespace cvx
