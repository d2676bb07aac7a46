#pragma once

#include "cvx/functions.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace cvx {

/// Which half of the cross condition failed:
///   FLeCombination:  f(tx+(1-t)y) <= t g(x) + (1-t) g(y)
///   CombinationLeG:  t f(x) + (1-t) f(y) <= g(tx+(1-t)y)
enum class Clause { FLeCombination, CombinationLeG };

std::string_view to_string(Clause clause) noexcept;

/// A concrete (x, y, t) at which one clause fails; lhs > rhs is the failure.
struct Violation {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    Clause clause = Clause::FLeCombination;

    double gap() const noexcept { return lhs - rhs; }
    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Recomputes both sides of the violated clause from f and g.
Violation reevaluate(const Violation& v, const SampledFunction& f, const SampledFunction& g);

/// One half-plane of the affine feasibility problem in (m, c):
/// lower: m x + c >= value (from f), upper: m x + c <= value (from g).
struct Constraint {
    std::size_t index = 0; // breakpoint index in the merged grid
    double x = 0.0;
    double value = 0.0;
    bool lower = true;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Infeasible {
    Violation witness;
    std::vector<Constraint> core; // empty when produced by the envelope test
};

struct SeparatorPair {
    SampledFunction convex;  // h1, the convex envelope of g
    SampledFunction concave; // h2, the concave envelope of f
};

using AffineOutcome = std::variant<AffineMap, Infeasible>;
using EnvelopeOutcome = std::variant<SeparatorPair, Infeasible>;

/// Exact cross-condition test for piecewise-linear f, g through the convex
/// envelope of g and the concave envelope of f. Returns the largest gap
/// violation, or nullopt when the condition holds within eps. Throws
/// DomainMismatch.
std::optional<Violation> check_condition_iii(const SampledFunction& f, const SampledFunction& g,
                                             double eps = default_eps);

/// Brute-force falsifier: every breakpoint pair x_i < x_j against the
/// uniform t grid k/(t_grid_size-1), optionally extended with every t that
/// lands on a breakpoint between them (which makes the enumeration exact).
/// First violation in (i, j, t) order wins.
std::optional<Violation> check_condition_iii_sampled(const SampledFunction& f,
                                                     const SampledFunction& g, int t_grid_size,
                                                     double eps = default_eps,
                                                     bool include_crossings = false);

/// Affine h with f <= h <= g at every merged breakpoint (each side relaxed by
/// eps/2), found by a deterministic incremental half-plane feasibility pass.
AffineOutcome find_affine_separator(const SampledFunction& f, const SampledFunction& g,
                                    double eps = default_eps);

/// h1 = lce(g), h2 = uce(f); feasible exactly when the cross condition holds.
EnvelopeOutcome convex_concave_separators(const SampledFunction& f, const SampledFunction& g,
                                          double eps = default_eps);

bool verify_separator(const SampledFunction& f, const SampledFunction& g, const AffineMap& h,
                      double eps = default_eps);
bool verify_separator(const SampledFunction& f, const SampledFunction& g,
                      const SeparatorPair& h, double eps = default_eps);

// -- set-valued -------------------------------------------------------------

enum class Side { Lower, Upper };

/// FContainsCombination: F(tx+(1-t)y) contains tG(x)+(1-t)G(y)
/// GWithinCombination:   G(tx+(1-t)y) is inside tF(x)+(1-t)F(y)
enum class Inclusion { FContainsCombination, GWithinCombination };

std::string_view to_string(Side side) noexcept;
std::string_view to_string(Inclusion inclusion) noexcept;

/// A failure of the set-valued cross condition, expressed through the real
/// endpoint subproblem that fails. For the lower side the subproblem is
/// (F.lower, G.lower); for the upper side it is (G.upper, F.upper).
struct SetViolation {
    Violation endpoint;
    Side side = Side::Lower;
    Inclusion inclusion = Inclusion::FContainsCombination;
};

struct SetInfeasible {
    SetViolation witness;
    std::vector<Constraint> core;
};

using IntervalOutcome = std::variant<AffineIntervalMap, SetInfeasible>;

/// Whether some H with F ⊃ H ⊃ G can exist given only the kinds: every
/// bounded side of F needs a bounded side of G.
bool kinds_compatible(Kind f, Kind g) noexcept;

/// Throws DomainMismatch, KindIncompatible.
std::optional<SetViolation> check_condition_iii_setvalued(const IntervalFunction& F,
                                                          const IntervalFunction& G,
                                                          double eps = default_eps);

/// H takes the kind of F. Throws DomainMismatch, KindIncompatible.
IntervalOutcome find_affine_interval_separator(const IntervalFunction& F,
                                               const IntervalFunction& G,
                                               double eps = default_eps);

/// Endpoint functions of a set-valued separator; present per kind.
struct IntervalSeparator {
    Kind kind = Kind::AllReals;
    std::optional<SampledFunction> lower;
    std::optional<SampledFunction> upper;
};

/// Convex H1 (convex lower, concave upper endpoint) and concave H2 (concave
/// lower, convex upper endpoint), both of F's kind, with F ⊃ H ⊃ G. Built
/// from the envelopes of the two endpoint subproblems.
struct IntervalSeparatorPair {
    IntervalSeparator convex;
    IntervalSeparator concave;
};

using IntervalEnvelopeOutcome = std::variant<IntervalSeparatorPair, SetInfeasible>;

/// Throws DomainMismatch, KindIncompatible.
IntervalEnvelopeOutcome convex_concave_interval_separators(const IntervalFunction& F,
                                                           const IntervalFunction& G,
                                                           double eps = default_eps);

/// F ⊃ H ⊃ G at every merged breakpoint within eps.
bool verify_separator(const IntervalFunction& F, const IntervalFunction& G,
                      const AffineIntervalMap& H, double eps = default_eps);

} // namespace cvx
