#include "cvx/sandwich.hpp"

#include "cvx/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cvx {

std::string_view to_string(Clause clause) noexcept
{
    return clause == Clause::FLeCombination ? "f_le_combination" : "combination_le_g";
}

std::string_view to_string(Side side) noexcept
{
    return side == Side::Lower ? "lower" : "upper";
}

std::string_view to_string(Inclusion inclusion) noexcept
{
    return inclusion == Inclusion::FContainsCombination ? "F_contains_combination_G"
                                                        : "G_within_combination_F";
}

namespace {

double combined_point(double x, double y, double t)
{
    const double z = t * x + (1.0 - t) * y;
    return std::clamp(z, std::min(x, y), std::max(x, y));
}

Violation make_violation(const SampledFunction& f, const SampledFunction& g, double x, double y,
                         double t, Clause clause)
{
    Violation v{x, y, t, 0.0, 0.0, clause};
    return reevaluate(v, f, g);
}

// Segment of the hull bracketing breakpoint j: returns the witness (x, y, t)
// with t*x + (1-t)*y = xs[j].
struct Bracket {
    double x;
    double y;
    double t;
};

Bracket bracket(std::span<const double> xs, const std::vector<std::size_t>& hull, std::size_t j)
{
    const auto it = std::lower_bound(hull.begin(), hull.end(), j);
    if (*it == j)
        return {xs[j], xs[j], 1.0};
    const std::size_t q = *it;
    const std::size_t p = *(it - 1);
    return {xs[p], xs[q], (xs[q] - xs[j]) / (xs[q] - xs[p])};
}

} // namespace

Violation reevaluate(const Violation& v, const SampledFunction& f, const SampledFunction& g)
{
    Violation out = v;
    const double z = combined_point(v.x, v.y, v.t);
    if (v.clause == Clause::FLeCombination) {
        out.lhs = f(z);
        out.rhs = v.t * g(v.x) + (1.0 - v.t) * g(v.y);
    } else {
        out.lhs = v.t * f(v.x) + (1.0 - v.t) * f(v.y);
        out.rhs = g(z);
    }
    return out;
}

std::optional<Violation> check_condition_iii(const SampledFunction& f, const SampledFunction& g,
                                             double eps)
{
    const auto grid = merged_grid(f, g);
    const auto fr = resample(f, grid);
    const auto gr = resample(g, grid);
    const auto g_env = lower_convex_envelope(gr);
    const auto f_env = upper_concave_envelope(fr);

    double worst = eps;
    std::optional<std::pair<std::size_t, Clause>> at;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double below = fr.ys()[j] - g_env.ys()[j];
        if (below > worst) {
            worst = below;
            at = {j, Clause::FLeCombination};
        }
        const double above = f_env.ys()[j] - gr.ys()[j];
        if (above > worst) {
            worst = above;
            at = {j, Clause::CombinationLeG};
        }
    }
    if (!at)
        return std::nullopt;

    const auto [j, clause] = *at;
    const auto hull = clause == Clause::FLeCombination ? lower_hull_indices(gr)
                                                       : lower_hull_indices(negate(fr));
    const auto b = bracket(grid, hull, j);
    return make_violation(f, g, b.x, b.y, b.t, clause);
}

std::optional<Violation> check_condition_iii_sampled(const SampledFunction& f,
                                                     const SampledFunction& g, int t_grid_size,
                                                     double eps, bool include_crossings)
{
    if (t_grid_size < 2)
        throw Error(ErrorCode::RangeViolation, "t grid needs at least two values");
    const auto grid = merged_grid(f, g);
    const std::size_t n = grid.size();

    std::vector<double> uniform;
    for (int k = 0; k < t_grid_size; ++k)
        uniform.push_back(static_cast<double>(k) / (t_grid_size - 1));

    std::vector<double> ts;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = grid[i];
            const double y = grid[j];
            ts = uniform;
            if (include_crossings)
                for (std::size_t m = i + 1; m < j; ++m)
                    ts.push_back((y - grid[m]) / (y - x));
            std::sort(ts.begin(), ts.end());
            for (double t : ts) {
                const double z = combined_point(x, y, t);
                const double fz = f(z);
                const double gz = g(z);
                const double comb_g = t * g(x) + (1.0 - t) * g(y);
                const double comb_f = t * f(x) + (1.0 - t) * f(y);
                if (fz - comb_g > eps)
                    return Violation{x, y, t, fz, comb_g, Clause::FLeCombination};
                if (comb_f - gz > eps)
                    return Violation{x, y, t, comb_f, gz, Clause::CombinationLeG};
            }
        }
    }
    return std::nullopt;
}

namespace {

bool satisfied(const Constraint& h, double m, double c)
{
    const double v = m * h.x + c;
    return h.lower ? v >= h.value : v <= h.value;
}

// Best witness derivable from a small infeasible core, judged on the
// original (unrelaxed) functions.
std::optional<Violation> witness_from_core(const std::vector<Constraint>& core,
                                           const SampledFunction& f, const SampledFunction& g)
{
    std::optional<Violation> best;
    const auto consider = [&](const Violation& v) {
        if (!best || v.gap() > best->gap())
            best = v;
    };

    for (const auto& a : core)
        for (const auto& b : core)
            if (a.lower && !b.lower && a.x == b.x)
                consider(make_violation(f, g, a.x, a.x, 1.0, Clause::FLeCombination));

    if (core.size() == 3) {
        auto pts = core;
        std::sort(pts.begin(), pts.end(),
                  [](const Constraint& l, const Constraint& r) { return l.x < r.x; });
        const auto& lo = pts[0];
        const auto& mid = pts[1];
        const auto& hi = pts[2];
        if (lo.x < mid.x && mid.x < hi.x && lo.lower == hi.lower && mid.lower != lo.lower) {
            const double t = (hi.x - mid.x) / (hi.x - lo.x);
            // A lower constraint squeezed between two upper ones means f pokes
            // above the chord of g; the mirror case means the chord of f
            // passes above g.
            consider(make_violation(f, g, lo.x, hi.x, t,
                                    mid.lower ? Clause::FLeCombination : Clause::CombinationLeG));
        }
    }
    return best;
}

} // namespace

AffineOutcome find_affine_separator(const SampledFunction& f, const SampledFunction& g,
                                    double eps)
{
    const auto grid = merged_grid(f, g);
    const double relax = 0.5 * eps;

    std::vector<Constraint> constraints;
    constraints.reserve(2 * grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        constraints.push_back({i, grid[i], f(grid[i]) - relax, true});
    for (std::size_t i = 0; i < grid.size(); ++i)
        constraints.push_back({i, grid[i], g(grid[i]) + relax, false});

    constexpr double inf = std::numeric_limits<double>::infinity();
    double m = 0.0;
    double c = 0.0;
    std::vector<Constraint> core;

    for (std::size_t k = 0; k < constraints.size() && core.empty(); ++k) {
        const auto& hk = constraints[k];
        if (satisfied(hk, m, c))
            continue;

        // Move onto the boundary line c = value_k - m x_k and find the
        // interval of slopes the earlier constraints still allow there.
        double m_lo = -inf;
        double m_hi = inf;
        std::optional<std::size_t> by_lo;
        std::optional<std::size_t> by_hi;
        for (std::size_t j = 0; j < k; ++j) {
            const auto& hj = constraints[j];
            const double d = hj.x - hk.x;
            const double r = hj.value - hk.value;
            if (d == 0.0) {
                if (hj.lower ? r > 0.0 : r < 0.0) {
                    core = {hk, hj};
                    break;
                }
                continue;
            }
            const double bound = r / d;
            if (hj.lower == (d > 0.0)) {
                if (bound > m_lo) {
                    m_lo = bound;
                    by_lo = j;
                }
            } else if (bound < m_hi) {
                m_hi = bound;
                by_hi = j;
            }
        }
        if (!core.empty())
            break;
        if (m_lo > m_hi) {
            core = {hk, constraints[*by_lo], constraints[*by_hi]};
            break;
        }
        m = std::clamp(m, m_lo, m_hi);
        c = hk.value - m * hk.x;
    }

    if (core.empty())
        return AffineMap{m, c};

    auto witness = witness_from_core(core, f, g);
    if (!witness || !(witness->gap() > relax)) {
        // Only reachable when rounding decided the core; fall back to the
        // envelope witness, which is exact for piecewise-linear data.
        if (auto env = check_condition_iii(f, g, 0.0))
            witness = env;
    }
    if (!witness)
        throw std::logic_error("infeasible affine system without a cross-condition witness");
    return Infeasible{*witness, std::move(core)};
}

EnvelopeOutcome convex_concave_separators(const SampledFunction& f, const SampledFunction& g,
                                          double eps)
{
    if (auto v = check_condition_iii(f, g, eps))
        return Infeasible{*v, {}};
    const auto grid = merged_grid(f, g);
    return SeparatorPair{lower_convex_envelope(resample(g, grid)),
                         upper_concave_envelope(resample(f, grid))};
}

bool verify_separator(const SampledFunction& f, const SampledFunction& g, const AffineMap& h,
                      double eps)
{
    for (double x : merged_grid(f, g)) {
        const double hx = h(x);
        if (!(f(x) <= hx + eps && hx <= g(x) + eps))
            return false;
    }
    return true;
}

bool verify_separator(const SampledFunction& f, const SampledFunction& g,
                      const SeparatorPair& h, double eps)
{
    if (!is_convex(h.convex, eps) || !is_concave(h.concave, eps))
        return false;
    for (double x : merged_grid(f, g)) {
        const double fx = f(x);
        const double gx = g(x);
        for (const auto* s : {&h.convex, &h.concave}) {
            const double hx = (*s)(x);
            if (!(fx <= hx + eps && hx <= gx + eps))
                return false;
        }
    }
    return true;
}

// -- set-valued -------------------------------------------------------------

bool kinds_compatible(Kind f, Kind g) noexcept
{
    return (!has_lower(f) || has_lower(g)) && (!has_upper(f) || has_upper(g));
}

namespace {

void require_compatible(const IntervalFunction& F, const IntervalFunction& G)
{
    // Validates the shared domain as a side effect.
    (void)merged_grid(F, G);
    if (!kinds_compatible(F.kind(), G.kind()))
        throw Error(ErrorCode::KindIncompatible,
                    "F of kind " + std::string(to_string(F.kind())) +
                        " cannot contain G of kind " + std::string(to_string(G.kind())));
}

Inclusion inclusion_for(Side side, Clause clause)
{
    // Lower subproblem is (F.lower, G.lower), upper is (G.upper, F.upper).
    const bool first = (side == Side::Lower) == (clause == Clause::FLeCombination);
    return first ? Inclusion::FContainsCombination : Inclusion::GWithinCombination;
}

SetViolation lift(const Violation& v, Side side)
{
    return SetViolation{v, side, inclusion_for(side, v.clause)};
}

} // namespace

std::optional<SetViolation> check_condition_iii_setvalued(const IntervalFunction& F,
                                                          const IntervalFunction& G, double eps)
{
    require_compatible(F, G);
    if (F.lower())
        if (auto v = check_condition_iii(*F.lower(), *G.lower(), eps))
            return lift(*v, Side::Lower);
    if (F.upper())
        if (auto v = check_condition_iii(*G.upper(), *F.upper(), eps))
            return lift(*v, Side::Upper);
    return std::nullopt;
}

IntervalOutcome find_affine_interval_separator(const IntervalFunction& F,
                                               const IntervalFunction& G, double eps)
{
    require_compatible(F, G);
    std::optional<AffineMap> lower;
    std::optional<AffineMap> upper;
    if (F.lower()) {
        auto r = find_affine_separator(*F.lower(), *G.lower(), eps);
        if (auto* bad = std::get_if<Infeasible>(&r))
            return SetInfeasible{lift(bad->witness, Side::Lower), std::move(bad->core)};
        lower = std::get<AffineMap>(r);
    }
    if (F.upper()) {
        auto r = find_affine_separator(*G.upper(), *F.upper(), eps);
        if (auto* bad = std::get_if<Infeasible>(&r))
            return SetInfeasible{lift(bad->witness, Side::Upper), std::move(bad->core)};
        upper = std::get<AffineMap>(r);
    }
    return make_affine_interval_map(F.kind(), lower, upper, F.lo(), F.hi(), eps);
}

IntervalEnvelopeOutcome convex_concave_interval_separators(const IntervalFunction& F,
                                                           const IntervalFunction& G, double eps)
{
    require_compatible(F, G);
    IntervalSeparatorPair out;
    out.convex.kind = out.concave.kind = F.kind();
    if (F.lower()) {
        auto r = convex_concave_separators(*F.lower(), *G.lower(), eps);
        if (auto* bad = std::get_if<Infeasible>(&r))
            return SetInfeasible{lift(bad->witness, Side::Lower), {}};
        auto& pair = std::get<SeparatorPair>(r);
        out.convex.lower = std::move(pair.convex);
        out.concave.lower = std::move(pair.concave);
    }
    if (F.upper()) {
        // Subproblem (G.upper, F.upper): its convex separator is the convex
        // upper endpoint of the concave H2 and vice versa.
        auto r = convex_concave_separators(*G.upper(), *F.upper(), eps);
        if (auto* bad = std::get_if<Infeasible>(&r))
            return SetInfeasible{lift(bad->witness, Side::Upper), {}};
        auto& pair = std::get<SeparatorPair>(r);
        out.convex.upper = std::move(pair.concave);
        out.concave.upper = std::move(pair.convex);
    }
    return out;
}

bool verify_separator(const IntervalFunction& F, const IntervalFunction& G,
                      const AffineIntervalMap& H, double eps)
{
    for (double x : merged_grid(F, G)) {
        const auto hx = H(x);
        if (!is_subset_within(hx, F(x), eps) || !is_subset_within(G(x), hx, eps))
            return false;
    }
    return true;
}

} // namespace cvx
