#pragma once

#include "cvx/functions.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace cvx {

using Value = std::variant<double, ExtInterval>;

/// Point tuple at which an inequality or inclusion failed. Only the
/// coordinates meaningful for the particular check are set.
struct Witness {
    std::optional<double> x;
    std::optional<double> y;
    std::optional<double> z;
    std::optional<double> t;
    std::vector<std::size_t> indices;
};

/// Both sides of a checked inequality (or inclusion). `slack` is oriented so
/// that the claimed relation reads slack >= 0: greater side minus lesser
/// side, or the inclusion margin for sets. holds <=> slack >= -eps and the
/// witness is present exactly when the check fails.
struct CheckReport {
    bool holds = true;
    Value lhs = 0.0;
    Value rhs = 0.0;
    double slack = 0.0;
    bool equality = false;
    std::optional<Witness> witness;
    // Per-clause slacks for chained inequalities (one entry otherwise).
    std::vector<double> slacks;
    // Middle term of a chain a >= middle >= b.
    std::optional<Value> middle;
};

// -- Popoviciu ---------------------------------------------------------------

/// (f(x)+f(y)+f(z))/3 + f((x+y+z)/3) >= (2/3)(f((x+y)/2)+f((y+z)/2)+f((x+z)/2)).
/// Throws DomainViolation.
CheckReport popoviciu_check(const SampledFunction& f, double x, double y, double z,
                            double eps = default_eps);

struct ScanResult {
    std::optional<CheckReport> violation; // first failure in (i, j, k) order
    std::size_t evaluated = 0;
    std::size_t equalities = 0;
    double min_slack = 0.0;

    bool ok() const noexcept { return !violation.has_value(); }
};

/// The breakpoints together with every pairwise midpoint, sorted and
/// deduplicated.
std::vector<double> midpoint_refined_grid(std::span<const double> xs);

/// Every triple i <= j <= k of the midpoint-refined grid; witness indices
/// refer to that grid. A failure disproves convexity; success does not
/// prove it. Cost grows with the cube of the refined size.
ScanResult popoviciu_scan(const SampledFunction& f, double eps = default_eps);

/// Set-valued analogue: lhs ⊂ rhs within eps, built with Minkowski
/// arithmetic. Throws DomainViolation.
CheckReport popoviciu_inclusion_check(const IntervalFunction& F, double x, double y, double z,
                                      double eps = default_eps);

ScanResult popoviciu_inclusion_scan(const IntervalFunction& F, double eps = default_eps);

// -- monotone difference inequality -------------------------------------------

/// IncreasingConvex: psi - phi increasing and psi convex, conclusion ">=".
/// DecreasingConcave: psi - phi decreasing and psi concave, conclusion "<=".
enum class Direction { IncreasingConvex, DecreasingConcave };

/// lhs = (1-t)phi(x) + t psi(y), rhs = ((1-t)phi + t psi)((1-t)x + t y).
/// Throws RangeViolation (t outside (0,1) or x > y), DomainViolation.
CheckReport prop3_check(const SampledFunction& phi, const SampledFunction& psi, double x, double y,
                        double t, Direction direction = Direction::IncreasingConvex,
                        double eps = default_eps);

struct Prop3Scan {
    bool difference_monotone = false;
    bool psi_shape = false; // convex or concave per direction
    ScanResult scan;
    bool equality_everywhere = false;

    bool hypotheses_hold() const noexcept { return difference_monotone && psi_shape; }
};

inline constexpr int default_t_values = 33;

/// Hypothesis report plus a scan over all breakpoint pairs x < y of the
/// merged grid against t = k/(t_values+1), k = 1..t_values.
Prop3Scan prop3_scan(const SampledFunction& phi, const SampledFunction& psi,
                     Direction direction = Direction::IncreasingConvex, double eps = default_eps,
                     int t_values = default_t_values);

/// Observations for the set-valued version of the monotone difference
/// inequality, which has no established statement. Counts how
/// (1-t)Phi(x) + t Psi(y) relates to ((1-t)Phi + t Psi)((1-t)x + t y) by
/// inclusion; asserts nothing.
struct InclusionCensus {
    std::size_t evaluated = 0;
    std::size_t equal = 0;
    std::size_t lhs_contains_rhs = 0; // strict
    std::size_t lhs_within_rhs = 0;   // strict
    std::size_t incomparable = 0;
};

InclusionCensus prop3_setvalued_census(const IntervalFunction& Phi, const IntervalFunction& Psi,
                                       double eps = default_eps,
                                       int t_values = default_t_values);

// -- convex combinations of points against the endpoints ----------------------

struct Lemma5Input {
    std::vector<double> points;
    std::vector<double> weights;
    double a = 0.0;
    double b = 1.0;
};

struct EndpointWeights {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// Validates the input (DomainViolation, WeightViolation) and derives the
/// endpoint weights from the barycenter.
EndpointWeights endpoint_weights(const Lemma5Input& input, double eps = default_eps);

/// sum mu_i f(x_i) <= lambda1 f(a) + lambda2 f(b) for convex f on [a, b].
/// Throws NotConvex, WeightViolation, DomainViolation.
CheckReport lemma5_check(const SampledFunction& f, const Lemma5Input& input,
                         double eps = default_eps);

/// Explicit endpoint weights, validated against the barycenter identity
/// (BarycenterViolation).
CheckReport lemma5_check(const SampledFunction& f, const Lemma5Input& input,
                         EndpointWeights lambda, double eps = default_eps);

/// f(a)+f(b) >= (f(x)+f(y)+f(z))/3 + f((x+y+z)/3) >= (2/3) sum f(midpoints)
/// for convex f when (x+y+z)/3 = (a+b)/2. Throws BarycenterViolation,
/// NotConvex, DomainViolation.
CheckReport prop6_check(const SampledFunction& f, double x, double y, double z, double a,
                        double b, double eps = default_eps);

struct Prop7Report {
    CheckReport direct;     // interval arithmetic on the set values
    CheckReport decomposed; // lemma5 on the lower endpoint and the negated upper one
    bool paths_agree = false;
};

/// sum mu_i F(x_i) ⊃ lambda1 F(a) + lambda2 F(b) for convex set-valued F.
/// Throws NotConvexIVF, WeightViolation, DomainViolation.
Prop7Report prop7_check(const IntervalFunction& F, const Lemma5Input& input,
                        double eps = default_eps);

// -- characterisation cross-check ----------------------------------------------

struct ConvexityCrossCheck {
    bool convex = false;
    ScanResult scan;
    bool agree = false;
    // Convex but the scan found a violation: contradicts the characterisation.
    bool internal_error = false;
    // Not convex yet no violating triple on this grid.
    bool scan_incomplete = false;
};

ConvexityCrossCheck convexity_cross_check(const SampledFunction& f, double eps = default_eps);

} // namespace cvx
