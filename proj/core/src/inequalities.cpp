#include "cvx/inequalities.hpp"

#include "cvx/error.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <cmath>
#include <limits>
#include <string>

namespace cvx {

namespace {

CheckReport ordered_report(double greater, double lesser, double eps)
{
    CheckReport r;
    r.slack = greater - lesser;
    r.holds = r.slack >= -eps;
    r.equality = std::abs(r.slack) <= eps;
    r.slacks = {r.slack};
    return r;
}

// Claims lhs >= rhs.
CheckReport ge_report(double lhs, double rhs, double eps)
{
    auto r = ordered_report(lhs, rhs, eps);
    r.lhs = lhs;
    r.rhs = rhs;
    return r;
}

// Claims lhs <= rhs.
CheckReport le_report(double lhs, double rhs, double eps)
{
    auto r = ordered_report(rhs, lhs, eps);
    r.lhs = lhs;
    r.rhs = rhs;
    return r;
}

// Claims lhs ⊂ rhs.
CheckReport subset_report(const ExtInterval& lhs, const ExtInterval& rhs, double eps)
{
    CheckReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = inclusion_margin(lhs, rhs);
    r.holds = r.slack >= -eps;
    r.equality = std::abs(r.slack) <= eps;
    r.slacks = {r.slack};
    return r;
}

// The three-point expressions are symmetric; evaluating on the sorted
// triple makes reports bit-identical under permutation.
std::array<double, 3> sorted3(double x, double y, double z)
{
    std::array<double, 3> p{x, y, z};
    std::sort(p.begin(), p.end());
    return p;
}

double mean3(double x, double y, double z)
{
    return std::clamp((x + y + z) / 3.0, std::min({x, y, z}), std::max({x, y, z}));
}

struct Sides {
    double lhs;
    double rhs;
};

Sides popoviciu_sides(double fx, double fy, double fz, double fmean, double fxy, double fyz,
                      double fxz)
{
    return {(fx + fy + fz) / 3.0 + fmean, (2.0 / 3.0) * (fxy + fyz + fxz)};
}

struct SetSides {
    ExtInterval lhs;
    ExtInterval rhs;
};

SetSides popoviciu_set_sides(const ExtInterval& fx, const ExtInterval& fy, const ExtInterval& fz,
                             const ExtInterval& fmean, const ExtInterval& fxy,
                             const ExtInterval& fyz, const ExtInterval& fxz)
{
    return {scale(1.0 / 3.0, fx + fy + fz) + fmean, scale(2.0 / 3.0, fxy + fyz + fxz)};
}

Witness triple_witness(double x, double y, double z, std::vector<std::size_t> indices = {})
{
    Witness w;
    w.x = x;
    w.y = y;
    w.z = z;
    w.indices = std::move(indices);
    return w;
}

// Upper triangle of g((x_i + x_j)/2), i <= j.
template <class Value, class Fn>
class MidpointTable {
public:
    MidpointTable(std::span<const double> xs, Fn&& g) : n_(xs.size())
    {
        values_.reserve(n_ * (n_ + 1) / 2);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                values_.push_back(g((xs[i] + xs[j]) / 2.0));
    }

    const Value& operator()(std::size_t i, std::size_t j) const
    {
        if (i > j)
            std::swap(i, j);
        return values_[i * n_ - i * (i - 1) / 2 + (j - i)];
    }

private:
    std::size_t n_;
    std::vector<Value> values_;
};

template <class Value, class Fn>
MidpointTable<Value, Fn> make_table(std::span<const double> xs, Fn&& g)
{
    return MidpointTable<Value, Fn>(xs, std::forward<Fn>(g));
}

void note(ScanResult& s, const CheckReport& r)
{
    ++s.evaluated;
    if (r.equality)
        ++s.equalities;
    s.min_slack = s.evaluated == 1 ? r.slack : std::min(s.min_slack, r.slack);
}

void require_interval(double a, double b)
{
    if (!(a < b))
        throw Error(ErrorCode::DomainViolation,
                    "endpoints a = " + std::to_string(a) + ", b = " + std::to_string(b) +
                        " do not form an interval");
}

void require_within(double v, double a, double b, const char* what)
{
    if (!(v >= a && v <= b))
        throw Error(ErrorCode::DomainViolation, std::string(what) + " = " + std::to_string(v) +
                                                    " outside [" + std::to_string(a) + ", " +
                                                    std::to_string(b) + "]");
}

IntervalFunction restrict_ivf(const IntervalFunction& F, double a, double b)
{
    require_interval(a, b);
    if (a < F.lo() || b > F.hi())
        throw Error(ErrorCode::DomainViolation, "[a, b] is not inside the domain");
    std::vector<double> grid{a};
    for (double x : F.xs())
        if (x > a && x < b)
            grid.push_back(x);
    grid.push_back(b);
    return resample(F, grid);
}

void require_convex_on(const SampledFunction& f, double a, double b, double eps)
{
    if (!is_convex(restrict_to(f, a, b), eps))
        throw Error(ErrorCode::NotConvex, "function is not convex on [" + std::to_string(a) +
                                              ", " + std::to_string(b) + "]");
}

} // namespace

// -- Popoviciu ---------------------------------------------------------------

CheckReport popoviciu_check(const SampledFunction& f, double x, double y, double z, double eps)
{
    const auto [p, q, r3] = sorted3(x, y, z);
    const auto s = popoviciu_sides(f(p), f(q), f(r3), f(mean3(p, q, r3)), f((p + q) / 2.0),
                                   f((q + r3) / 2.0), f((p + r3) / 2.0));
    auto r = ge_report(s.lhs, s.rhs, eps);
    if (!r.holds)
        r.witness = triple_witness(x, y, z);
    return r;
}

std::vector<double> midpoint_refined_grid(std::span<const double> xs)
{
    // Midpoints that differ from another point only by rounding are the
    // same point; original breakpoints take precedence.
    const double scale = std::max(std::abs(xs.front()), std::abs(xs.back()));
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
    const auto near_breakpoint = [&](double m) {
        const auto it = std::lower_bound(xs.begin(), xs.end(), m);
        return (it != xs.end() && *it - m <= tol) || (it != xs.begin() && m - *(it - 1) <= tol);
    };

    std::vector<double> mids;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (const double m = (xs[i] + xs[j]) / 2.0; !near_breakpoint(m))
                mids.push_back(m);
    std::sort(mids.begin(), mids.end());
    mids.erase(std::unique(mids.begin(), mids.end(),
                           [tol](double p, double q) { return q - p <= tol; }),
               mids.end());

    std::vector<double> out;
    out.reserve(xs.size() + mids.size());
    std::merge(xs.begin(), xs.end(), mids.begin(), mids.end(), std::back_inserter(out));
    return out;
}

ScanResult popoviciu_scan(const SampledFunction& f, double eps)
{
    const auto xs = midpoint_refined_grid(f.xs());
    const std::size_t n = xs.size();
    std::vector<double> ys;
    ys.reserve(n);
    for (double x : xs)
        ys.push_back(f(x));
    const auto mid = make_table<double>(xs, [&](double x) { return f(x); });

    ScanResult out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const auto s = popoviciu_sides(ys[i], ys[j], ys[k], f(mean3(xs[i], xs[j], xs[k])),
                                               mid(i, j), mid(j, k), mid(i, k));
                auto r = ge_report(s.lhs, s.rhs, eps);
                note(out, r);
                if (!r.holds) {
                    r.witness = triple_witness(xs[i], xs[j], xs[k], {i, j, k});
                    out.violation = std::move(r);
                    return out;
                }
            }
    return out;
}

CheckReport popoviciu_inclusion_check(const IntervalFunction& F, double x, double y, double z,
                                      double eps)
{
    const auto [p, q, r3] = sorted3(x, y, z);
    const auto s = popoviciu_set_sides(F(p), F(q), F(r3), F(mean3(p, q, r3)), F((p + q) / 2.0),
                                       F((q + r3) / 2.0), F((p + r3) / 2.0));
    auto r = subset_report(s.lhs, s.rhs, eps);
    if (!r.holds)
        r.witness = triple_witness(x, y, z);
    return r;
}

ScanResult popoviciu_inclusion_scan(const IntervalFunction& F, double eps)
{
    const auto xs = midpoint_refined_grid(F.xs());
    const std::size_t n = xs.size();
    std::vector<ExtInterval> at;
    at.reserve(n);
    for (double x : xs)
        at.push_back(F(x));
    const auto mid = make_table<ExtInterval>(xs, [&](double x) { return F(x); });

    ScanResult out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const auto s = popoviciu_set_sides(at[i], at[j], at[k],
                                                   F(mean3(xs[i], xs[j], xs[k])), mid(i, j),
                                                   mid(j, k), mid(i, k));
                auto r = subset_report(s.lhs, s.rhs, eps);
                note(out, r);
                if (!r.holds) {
                    r.witness = triple_witness(xs[i], xs[j], xs[k], {i, j, k});
                    out.violation = std::move(r);
                    return out;
                }
            }
    return out;
}

// -- monotone difference inequality -------------------------------------------

namespace {

Sides prop3_sides(const SampledFunction& phi, const SampledFunction& psi, double x, double y,
                  double t)
{
    const double z = std::clamp((1.0 - t) * x + t * y, x, y);
    return {(1.0 - t) * phi(x) + t * psi(y), (1.0 - t) * phi(z) + t * psi(z)};
}

CheckReport prop3_report(const Sides& s, Direction direction, double eps)
{
    return direction == Direction::IncreasingConvex ? ge_report(s.lhs, s.rhs, eps)
                                                    : le_report(s.lhs, s.rhs, eps);
}

Witness pair_witness(double x, double y, double t, std::vector<std::size_t> indices = {})
{
    Witness w;
    w.x = x;
    w.y = y;
    w.t = t;
    w.indices = std::move(indices);
    return w;
}

} // namespace

CheckReport prop3_check(const SampledFunction& phi, const SampledFunction& psi, double x, double y,
                        double t, Direction direction, double eps)
{
    (void)merged_grid(phi, psi);
    if (!(t > 0.0 && t < 1.0))
        throw Error(ErrorCode::RangeViolation, "t = " + std::to_string(t) + " outside (0, 1)");
    if (x > y)
        throw Error(ErrorCode::RangeViolation, "x must not exceed y");
    auto r = prop3_report(prop3_sides(phi, psi, x, y, t), direction, eps);
    if (!r.holds)
        r.witness = pair_witness(x, y, t);
    return r;
}

Prop3Scan prop3_scan(const SampledFunction& phi, const SampledFunction& psi, Direction direction,
                     double eps, int t_values)
{
    if (t_values < 1)
        throw Error(ErrorCode::RangeViolation, "t grid needs at least one value");
    const auto grid = merged_grid(phi, psi);
    const auto diff = difference(psi, phi);

    Prop3Scan out;
    if (direction == Direction::IncreasingConvex) {
        out.difference_monotone = is_increasing(diff, eps);
        out.psi_shape = is_convex(psi, eps);
    } else {
        out.difference_monotone = is_decreasing(diff, eps);
        out.psi_shape = is_concave(psi, eps);
    }

    auto& scan = out.scan;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
            for (int k = 1; k <= t_values; ++k) {
                const double t = static_cast<double>(k) / (t_values + 1);
                auto r = prop3_report(prop3_sides(phi, psi, grid[i], grid[j], t), direction, eps);
                note(scan, r);
                if (!r.holds && !scan.violation) {
                    r.witness = pair_witness(grid[i], grid[j], t, {i, j});
                    scan.violation = std::move(r);
                }
            }
    out.equality_everywhere = scan.evaluated > 0 && scan.equalities == scan.evaluated;
    return out;
}

InclusionCensus prop3_setvalued_census(const IntervalFunction& Phi, const IntervalFunction& Psi,
                                       double eps, int t_values)
{
    if (t_values < 1)
        throw Error(ErrorCode::RangeViolation, "t grid needs at least one value");
    const auto grid = merged_grid(Phi, Psi);
    InclusionCensus out;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
            for (int k = 1; k <= t_values; ++k) {
                const double t = static_cast<double>(k) / (t_values + 1);
                const double x = grid[i];
                const double y = grid[j];
                const double z = std::clamp((1.0 - t) * x + t * y, x, y);
                const auto lhs = scale(1.0 - t, Phi(x)) + scale(t, Psi(y));
                const auto rhs = scale(1.0 - t, Phi(z)) + scale(t, Psi(z));
                const bool within = is_subset_within(lhs, rhs, eps);
                const bool contains = is_subset_within(rhs, lhs, eps);
                ++out.evaluated;
                if (within && contains)
                    ++out.equal;
                else if (contains)
                    ++out.lhs_contains_rhs;
                else if (within)
                    ++out.lhs_within_rhs;
                else
                    ++out.incomparable;
            }
    return out;
}

// -- convex combinations of points against the endpoints ----------------------

EndpointWeights endpoint_weights(const Lemma5Input& input, double eps)
{
    require_interval(input.a, input.b);
    if (input.points.empty() || input.points.size() != input.weights.size())
        throw Error(ErrorCode::WeightViolation,
                    std::to_string(input.points.size()) + " points but " +
                        std::to_string(input.weights.size()) + " weights");
    double total = 0.0;
    double barycenter = 0.0;
    for (std::size_t i = 0; i < input.points.size(); ++i) {
        require_within(input.points[i], input.a, input.b, "point");
        const double w = input.weights[i];
        if (!(w >= 0.0) || !std::isfinite(w))
            throw Error(ErrorCode::WeightViolation, "weight " + std::to_string(w) +
                                                        " is negative or not finite");
        total += w;
        barycenter += w * input.points[i];
    }
    if (std::abs(total - 1.0) > eps)
        throw Error(ErrorCode::WeightViolation,
                    "weights sum to " + std::to_string(total) + ", not 1");
    const double lambda2 = std::clamp((barycenter - input.a) / (input.b - input.a), 0.0, 1.0);
    return {1.0 - lambda2, lambda2};
}

namespace {

CheckReport lemma5_core(const SampledFunction& f, const Lemma5Input& input, EndpointWeights lambda,
                        double eps)
{
    require_convex_on(f, input.a, input.b, eps);
    double lhs = 0.0;
    double barycenter = 0.0;
    for (std::size_t i = 0; i < input.points.size(); ++i) {
        lhs += input.weights[i] * f(input.points[i]);
        barycenter += input.weights[i] * input.points[i];
    }
    const double rhs = lambda.lambda1 * f(input.a) + lambda.lambda2 * f(input.b);
    auto r = le_report(lhs, rhs, eps);
    if (!r.holds) {
        Witness w;
        w.x = barycenter;
        r.witness = std::move(w);
    }
    return r;
}

} // namespace

CheckReport lemma5_check(const SampledFunction& f, const Lemma5Input& input, double eps)
{
    return lemma5_core(f, input, endpoint_weights(input, eps), eps);
}

CheckReport lemma5_check(const SampledFunction& f, const Lemma5Input& input,
                         EndpointWeights lambda, double eps)
{
    (void)endpoint_weights(input, eps);
    if (!(lambda.lambda1 >= 0.0 && lambda.lambda2 >= 0.0) ||
        std::abs(lambda.lambda1 + lambda.lambda2 - 1.0) > eps)
        throw Error(ErrorCode::WeightViolation, "endpoint weights must be a convex combination");
    double barycenter = 0.0;
    for (std::size_t i = 0; i < input.points.size(); ++i)
        barycenter += input.weights[i] * input.points[i];
    const double endpoint_mean = lambda.lambda1 * input.a + lambda.lambda2 * input.b;
    if (std::abs(endpoint_mean - barycenter) > eps)
        throw Error(ErrorCode::BarycenterViolation,
                    "sum mu_i x_i = " + std::to_string(barycenter) +
                        " but lambda1 a + lambda2 b = " + std::to_string(endpoint_mean));
    return lemma5_core(f, input, lambda, eps);
}

CheckReport prop6_check(const SampledFunction& f, double x, double y, double z, double a,
                        double b, double eps)
{
    require_interval(a, b);
    require_within(x, a, b, "x");
    require_within(y, a, b, "y");
    require_within(z, a, b, "z");
    const auto sorted = sorted3(x, y, z);
    const double centre = (sorted[0] + sorted[1] + sorted[2]) / 3.0;
    if (std::abs(centre - (a + b) / 2.0) > eps)
        throw Error(ErrorCode::BarycenterViolation,
                    "(x+y+z)/3 = " + std::to_string(centre) + " but (a+b)/2 = " +
                        std::to_string((a + b) / 2.0));
    require_convex_on(f, a, b, eps);

    const double outer = f(a) + f(b);
    const auto [p, q, r3] = sorted3(x, y, z);
    const auto s = popoviciu_sides(f(p), f(q), f(r3), f(mean3(p, q, r3)), f((p + q) / 2.0),
                                   f((q + r3) / 2.0), f((p + r3) / 2.0));
    CheckReport r;
    r.lhs = outer;
    r.middle = s.lhs;
    r.rhs = s.rhs;
    r.slacks = {outer - s.lhs, s.lhs - s.rhs};
    r.slack = std::min(r.slacks[0], r.slacks[1]);
    r.holds = r.slack >= -eps;
    r.equality = std::abs(r.slack) <= eps;
    if (!r.holds)
        r.witness = triple_witness(x, y, z);
    return r;
}

Prop7Report prop7_check(const IntervalFunction& F, const Lemma5Input& input, double eps)
{
    const auto lambda = endpoint_weights(input, eps);
    if (!is_convex_ivf(restrict_ivf(F, input.a, input.b), eps))
        throw Error(ErrorCode::NotConvexIVF, "set-valued function is not convex on [a, b]");

    Prop7Report out;

    // Direct: Minkowski arithmetic on the set values.
    ExtInterval lhs = scale(input.weights[0], F(input.points[0]));
    for (std::size_t i = 1; i < input.points.size(); ++i)
        lhs = lhs + scale(input.weights[i], F(input.points[i]));
    const ExtInterval rhs = scale(lambda.lambda1, F(input.a)) + scale(lambda.lambda2, F(input.b));
    out.direct = subset_report(rhs, lhs, eps);
    // Reported in the order of the claim: sum mu_i F(x_i) ⊃ endpoint combination.
    out.direct.lhs = lhs;
    out.direct.rhs = rhs;

    // Decomposed: the convex lower endpoint and the negated concave upper one.
    CheckReport& d = out.decomposed;
    std::optional<CheckReport> low;
    std::optional<CheckReport> high;
    if (F.lower())
        low = lemma5_check(*F.lower(), input, eps);
    if (F.upper())
        high = lemma5_check(negate(*F.upper()), input, eps);

    const auto as_set = [&](auto side) {
        const auto pick = [&](const std::optional<CheckReport>& r, bool flip) {
            const double v = std::get<double>(side(*r));
            return flip ? -v : v;
        };
        switch (F.kind()) {
        case Kind::Bounded: return ExtInterval::bounded(pick(low, false), pick(high, true));
        case Kind::UpperHalf: return ExtInterval::upper_half(pick(low, false));
        case Kind::LowerHalf: return ExtInterval::lower_half(pick(high, true));
        case Kind::AllReals: break;
        }
        return ExtInterval::all_reals();
    };
    d.lhs = as_set([](const CheckReport& r) { return r.lhs; });
    d.rhs = as_set([](const CheckReport& r) { return r.rhs; });
    if (low)
        d.slacks.push_back(low->slack);
    if (high)
        d.slacks.push_back(high->slack);
    d.slack = d.slacks.empty() ? 0.0 : *std::min_element(d.slacks.begin(), d.slacks.end());
    if (d.slacks.empty())
        d.slacks.push_back(0.0);
    d.holds = d.slack >= -eps;
    d.equality = std::abs(d.slack) <= eps;

    for (auto* r : {&out.direct, &out.decomposed})
        if (!r->holds) {
            Witness w;
            w.x = lambda.lambda1 * input.a + lambda.lambda2 * input.b;
            r->witness = std::move(w);
        }

    out.paths_agree = out.direct.holds == d.holds && out.direct.slack == d.slack &&
                      out.direct.lhs == d.lhs && out.direct.rhs == d.rhs;
    return out;
}

ConvexityCrossCheck convexity_cross_check(const SampledFunction& f, double eps)
{
    ConvexityCrossCheck out;
    out.convex = is_convex(f, eps);
    out.scan = popoviciu_scan(f, eps);
    out.agree = out.convex == out.scan.ok();
    out.internal_error = out.convex && !out.scan.ok();
    out.scan_incomplete = !out.convex && out.scan.ok();
    return out;
}

} // namespace cvx
