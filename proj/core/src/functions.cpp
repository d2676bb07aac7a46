#include "cvx/functions.hpp"

#include "cvx/error.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace cvx {

namespace {

std::string str(double v)
{
    std::string s = std::to_string(v);
    return s;
}

std::vector<double> merge_sorted(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void require_same_domain(double lo1, double hi1, double lo2, double hi2)
{
    if (lo1 != lo2 || hi1 != hi2)
        throw Error(ErrorCode::DomainMismatch, "domains [" + str(lo1) + ", " + str(hi1) +
                                                   "] and [" + str(lo2) + ", " + str(hi2) +
                                                   "] differ");
}

} // namespace

SampledFunction::SampledFunction(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys))
{
    if (xs_.size() != ys_.size())
        throw Error(ErrorCode::LengthMismatch, std::to_string(xs_.size()) + " breakpoints but " +
                                                   std::to_string(ys_.size()) + " values");
    if (xs_.size() < 2)
        throw Error(ErrorCode::GridViolation, "at least two breakpoints are required");
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
            throw Error(ErrorCode::NonFinite, "non-finite sample at index " + std::to_string(i));
        if (i > 0 && !(xs_[i - 1] < xs_[i]))
            throw Error(ErrorCode::GridViolation,
                        "breakpoints not strictly increasing at index " + std::to_string(i));
    }
}

double SampledFunction::operator()(double x) const
{
    if (!(x >= xs_.front() && x <= xs_.back()))
        throw Error(ErrorCode::DomainViolation, "x = " + str(x) + " outside [" +
                                                    str(xs_.front()) + ", " + str(xs_.back()) +
                                                    "]");
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    const auto k = static_cast<std::size_t>(it - xs_.begin());
    if (*it == x)
        return ys_[k];
    const std::size_t i = k - 1;
    return ys_[i] + (x - xs_[i]) * slope(i);
}

SampledFunction make_sampled(std::vector<double> xs, std::vector<double> ys)
{
    return SampledFunction(std::move(xs), std::move(ys));
}

SampledFunction negate(const SampledFunction& f)
{
    std::vector<double> ys(f.ys().begin(), f.ys().end());
    for (auto& y : ys)
        y = 0.0 - y; // no negative zeros in reports
    return SampledFunction({f.xs().begin(), f.xs().end()}, std::move(ys));
}

SampledFunction resample(const SampledFunction& f, std::span<const double> grid)
{
    std::vector<double> ys;
    ys.reserve(grid.size());
    for (double x : grid)
        ys.push_back(f(x));
    return SampledFunction({grid.begin(), grid.end()}, std::move(ys));
}

std::vector<double> merged_grid(const SampledFunction& f, const SampledFunction& g)
{
    require_same_domain(f.lo(), f.hi(), g.lo(), g.hi());
    return merge_sorted(f.xs(), g.xs());
}

std::vector<double> merged_grid(const IntervalFunction& f, const IntervalFunction& g)
{
    require_same_domain(f.lo(), f.hi(), g.lo(), g.hi());
    return merge_sorted(f.xs(), g.xs());
}

SampledFunction restrict_to(const SampledFunction& f, double a, double b)
{
    if (!(a < b) || a < f.lo() || b > f.hi())
        throw Error(ErrorCode::DomainViolation, "[" + str(a) + ", " + str(b) +
                                                    "] is not a subinterval of [" + str(f.lo()) +
                                                    ", " + str(f.hi()) + "]");
    std::vector<double> xs{a};
    for (double x : f.xs())
        if (x > a && x < b)
            xs.push_back(x);
    xs.push_back(b);
    return resample(f, xs);
}

bool is_convex(const SampledFunction& f, double eps)
{
    for (std::size_t i = 0; i + 2 < f.size(); ++i)
        if (!(f.slope(i) <= f.slope(i + 1) + eps))
            return false;
    return true;
}

bool is_concave(const SampledFunction& f, double eps)
{
    for (std::size_t i = 0; i + 2 < f.size(); ++i)
        if (!(f.slope(i) >= f.slope(i + 1) - eps))
            return false;
    return true;
}

bool is_increasing(const SampledFunction& f, double eps)
{
    const auto ys = f.ys();
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
        if (!(ys[i] <= ys[i + 1] + eps))
            return false;
    return true;
}

bool is_decreasing(const SampledFunction& f, double eps)
{
    const auto ys = f.ys();
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
        if (!(ys[i + 1] <= ys[i] + eps))
            return false;
    return true;
}

SampledFunction difference(const SampledFunction& f, const SampledFunction& g)
{
    const auto grid = merged_grid(f, g);
    std::vector<double> ys;
    ys.reserve(grid.size());
    for (double x : grid)
        ys.push_back(f(x) - g(x));
    return SampledFunction(grid, std::move(ys));
}

std::vector<std::size_t> lower_hull_indices(const SampledFunction& f)
{
    const auto xs = f.xs();
    const auto ys = f.ys();
    const auto chord = [&](std::size_t i, std::size_t j) { return (ys[j] - ys[i]) / (xs[j] - xs[i]); };

    // Monotone chain over the already sorted breakpoints. The pop test
    // compares chord slopes with the same formula is_convex uses, so a
    // convex input keeps every breakpoint.
    std::vector<std::size_t> hull;
    hull.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            if (chord(a, b) > chord(b, i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    return hull;
}

SampledFunction lower_convex_envelope(const SampledFunction& f)
{
    const auto xs = f.xs();
    const auto ys = f.ys();
    const auto hull = lower_hull_indices(f);

    std::vector<double> out(ys.begin(), ys.end());
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const std::size_t p = hull[h];
        const std::size_t q = hull[h + 1];
        const double s = (ys[q] - ys[p]) / (xs[q] - xs[p]);
        for (std::size_t j = p + 1; j < q; ++j)
            out[j] = std::min(ys[p] + (xs[j] - xs[p]) * s, ys[j]);
    }
    return SampledFunction({xs.begin(), xs.end()}, std::move(out));
}

SampledFunction upper_concave_envelope(const SampledFunction& f)
{
    return negate(lower_convex_envelope(negate(f)));
}

// -- interval functions -----------------------------------------------------

ExtInterval IntervalFunction::operator()(double x) const
{
    if (!(x >= xs_.front() && x <= xs_.back()))
        throw Error(ErrorCode::DomainViolation, "x = " + str(x) + " outside [" +
                                                    str(xs_.front()) + ", " + str(xs_.back()) +
                                                    "]");
    switch (kind_) {
    case Kind::Bounded: {
        const double lo = (*lower_)(x);
        // Interpolation may cross touching endpoints by an ulp.
        const double hi = std::max(lo, (*upper_)(x));
        return ExtInterval::bounded(lo, hi);
    }
    case Kind::UpperHalf: return ExtInterval::upper_half((*lower_)(x));
    case Kind::LowerHalf: return ExtInterval::lower_half((*upper_)(x));
    case Kind::AllReals: break;
    }
    return ExtInterval::all_reals();
}

IntervalFunction make_interval_function(Kind kind, std::vector<double> xs,
                                        std::optional<std::vector<double>> lower_ys,
                                        std::optional<std::vector<double>> upper_ys)
{
    if (has_lower(kind) != lower_ys.has_value())
        throw Error(ErrorCode::KindMismatch, std::string("kind ") + std::string(to_string(kind)) +
                                                 (has_lower(kind) ? " requires" : " forbids") +
                                                 " lower endpoint data");
    if (has_upper(kind) != upper_ys.has_value())
        throw Error(ErrorCode::KindMismatch, std::string("kind ") + std::string(to_string(kind)) +
                                                 (has_upper(kind) ? " requires" : " forbids") +
                                                 " upper endpoint data");

    IntervalFunction out;
    out.kind_ = kind;
    // Validates the grid even when no endpoint data is attached.
    SampledFunction grid(xs, std::vector<double>(xs.size(), 0.0));
    if (lower_ys)
        out.lower_.emplace(xs, std::move(*lower_ys));
    if (upper_ys)
        out.upper_.emplace(xs, std::move(*upper_ys));
    if (out.lower_ && out.upper_) {
        const auto lo = out.lower_->ys();
        const auto hi = out.upper_->ys();
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i])
                throw Error(ErrorCode::CrossingEndpoints,
                            "lower endpoint " + str(lo[i]) + " exceeds upper endpoint " +
                                str(hi[i]) + " at x = " + str(xs[i]));
    }
    out.xs_ = std::move(xs);
    return out;
}

IntervalFunction make_interval_function(Kind kind, const std::optional<SampledFunction>& lower,
                                        const std::optional<SampledFunction>& upper)
{
    if (!lower && !upper)
        throw Error(ErrorCode::KindMismatch, "no endpoint function to take the grid from");
    std::vector<double> grid;
    if (lower && upper)
        grid = merged_grid(*lower, *upper);
    else
        grid.assign((lower ? *lower : *upper).xs().begin(), (lower ? *lower : *upper).xs().end());

    const auto values = [&](const std::optional<SampledFunction>& f)
        -> std::optional<std::vector<double>> {
        if (!f)
            return std::nullopt;
        const auto r = resample(*f, grid);
        return std::vector<double>(r.ys().begin(), r.ys().end());
    };
    return make_interval_function(kind, grid, values(lower), values(upper));
}

IntervalFunction make_all_reals(std::vector<double> xs)
{
    return make_interval_function(Kind::AllReals, std::move(xs), std::nullopt, std::nullopt);
}

IntervalFunction resample(const IntervalFunction& f, std::span<const double> grid)
{
    IntervalFunction out;
    out.kind_ = f.kind_;
    out.xs_.assign(grid.begin(), grid.end());
    if (f.lower_)
        out.lower_ = resample(*f.lower_, grid);
    if (f.upper_)
        out.upper_ = resample(*f.upper_, grid);
    return out;
}

bool is_convex_ivf(const IntervalFunction& f, double eps)
{
    return (!f.lower() || is_convex(*f.lower(), eps)) && (!f.upper() || is_concave(*f.upper(), eps));
}

ExtInterval AffineIntervalMap::operator()(double x) const
{
    switch (kind) {
    case Kind::Bounded: {
        const double lo = (*lower)(x);
        return ExtInterval::bounded(lo, std::max(lo, (*upper)(x)));
    }
    case Kind::UpperHalf: return ExtInterval::upper_half((*lower)(x));
    case Kind::LowerHalf: return ExtInterval::lower_half((*upper)(x));
    case Kind::AllReals: break;
    }
    return ExtInterval::all_reals();
}

AffineIntervalMap make_affine_interval_map(Kind kind, std::optional<AffineMap> lower,
                                           std::optional<AffineMap> upper, double a, double b,
                                           double eps)
{
    if (has_lower(kind) != lower.has_value() || has_upper(kind) != upper.has_value())
        throw Error(ErrorCode::KindMismatch,
                    "affine endpoints do not match kind " + std::string(to_string(kind)));
    for (const auto* m : {lower ? &*lower : nullptr, upper ? &*upper : nullptr})
        if (m && !(std::isfinite(m->m) && std::isfinite(m->c)))
            throw Error(ErrorCode::NonFinite, "affine endpoint coefficients must be finite");
    if (lower && upper)
        for (double x : {a, b})
            if ((*lower)(x) > (*upper)(x) + eps)
                throw Error(ErrorCode::CrossingEndpoints,
                            "affine endpoints cross at x = " + str(x));
    return AffineIntervalMap{kind, lower, upper};
}

} // namespace cvx
