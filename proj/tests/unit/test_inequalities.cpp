#include "cvx/inequalities.hpp"
#include "error_code.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace cvx;
using cvx::testing::code_of;
using cvx::testing::Rng;

namespace {

std::vector<double> grid(double a, double b, int n)
{
    std::vector<double> xs;
    for (int i = 0; i < n; ++i)
        xs.push_back(i == n - 1 ? b : a + (b - a) * i / (n - 1));
    return xs;
}

template <class Fn>
SampledFunction sampled(double a, double b, int n, Fn fn)
{
    auto xs = grid(a, b, n);
    std::vector<double> ys;
    for (double x : xs)
        ys.push_back(fn(x));
    return SampledFunction(std::move(xs), std::move(ys));
}

template <class Lo, class Hi>
IntervalFunction bounded_ivf(double a, double b, int n, Lo lo, Hi hi)
{
    auto xs = grid(a, b, n);
    std::vector<double> l, u;
    for (double x : xs) {
        l.push_back(lo(x));
        u.push_back(hi(x));
    }
    return make_interval_function(Kind::Bounded, std::move(xs), l, u);
}

double real(const Value& v) { return std::get<double>(v); }
const ExtInterval& set(const Value& v) { return std::get<ExtInterval>(v); }

constexpr double tight = 1e-12;

} // namespace

// -- Popoviciu ---------------------------------------------------------------

TEST_CASE("Popoviciu hand values for x^2 at (0, 1, 2)")
{
    const auto f = sampled(0, 2, 101, [](double x) { return x * x; });
    const auto r = popoviciu_check(f, 0, 1, 2);
    CHECK(r.holds);
    CHECK(std::abs(real(r.lhs) - 8.0 / 3.0) <= tight);
    CHECK(std::abs(real(r.rhs) - 7.0 / 3.0) <= tight);
    CHECK(std::abs(r.slack - 1.0 / 3.0) <= tight);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("Popoviciu degenerate and affine cases are equalities")
{
    const auto sq = sampled(-1, 1, 21, [](double x) { return x * x; });
    const auto d = popoviciu_check(sq, 0.3, 0.3, 0.3);
    CHECK(d.equality);
    CHECK(real(d.lhs) == doctest::Approx(2 * sq(0.3)));

    const auto id = make_sampled({-5, 5}, {-5, 5});
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const double x = testing::uniform(rng, -5, 5);
        const double y = testing::uniform(rng, -5, 5);
        const double z = testing::uniform(rng, -5, 5);
        const auto r = popoviciu_check(id, x, y, z);
        CHECK(r.equality);
        CHECK(std::abs(real(r.lhs) - real(r.rhs)) <= tight);
        CHECK(real(r.lhs) == doctest::Approx(2 * (x + y + z) / 3).scale(1.0));
    }
}

TEST_CASE("Popoviciu reports do not depend on argument order")
{
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = testing::random_function(rng, testing::uniform_int(rng, 2, 10));
        std::array<double, 3> p{testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1),
                                testing::uniform(rng, -1, 1)};
        const auto base = popoviciu_check(f, p[0], p[1], p[2]);
        std::sort(p.begin(), p.end());
        do {
            const auto r = popoviciu_check(f, p[0], p[1], p[2]);
            CHECK(r.holds == base.holds);
            CHECK(real(r.lhs) == real(base.lhs));
            CHECK(real(r.rhs) == real(base.rhs));
            CHECK(r.slack == base.slack);
            CHECK(r.equality == base.equality);
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("Popoviciu domain errors")
{
    const auto f = make_sampled({0, 1}, {0, 1});
    CHECK(code_of([&] { popoviciu_check(f, 0, 1, 2); }) == ErrorCode::DomainViolation);
}

TEST_CASE("midpoint refinement")
{
    const std::vector<double> xs{0, 1, 3};
    CHECK(midpoint_refined_grid(xs) == std::vector<double>{0, 0.5, 1, 1.5, 2, 3});
    CHECK(midpoint_refined_grid(grid(-1, 1, 51)).size() == 101);
}

TEST_CASE("Popoviciu scan on convex and non-convex samples")
{
    for (auto fn : {+[](double x) { return x * x; }, +[](double x) { return std::exp(x); },
                    +[](double x) { return std::abs(x); }}) {
        const auto r = popoviciu_scan(sampled(-1, 1, 51, fn));
        CHECK(r.ok());
        CHECK(r.evaluated > 0);
        CHECK(r.min_slack >= -default_eps);
    }

    const auto cube = sampled(-1, 1, 1001, [](double x) { return x * x * x; });
    const auto r = popoviciu_scan(cube);
    REQUIRE_FALSE(r.ok());
    const auto& w = *r.violation->witness;
    const auto again = popoviciu_check(cube, *w.x, *w.y, *w.z);
    CHECK_FALSE(again.holds);
    CHECK(again.slack == r.violation->slack);
    CHECK(*w.z < 0.0);
}

TEST_CASE("Popoviciu scan never fires on convex functions")
{
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = testing::random_convex(rng, testing::uniform_int(rng, 2, 8));
        CHECK(popoviciu_scan(f).ok());
    }
}

TEST_CASE("set-valued Popoviciu hand values")
{
    const auto F = bounded_ivf(-1, 1, 21, [](double x) { return x * x; },
                               [](double x) { return 2 - x * x; });
    const auto r = popoviciu_inclusion_check(F, -1, 0, 1);
    CHECK(r.holds);
    const auto& lhs = set(r.lhs);
    const auto& rhs = set(r.rhs);
    CHECK(std::abs(lhs.lo() - 2.0 / 3.0) <= tight);
    CHECK(std::abs(lhs.hi() - 10.0 / 3.0) <= tight);
    CHECK(std::abs(rhs.lo() - 1.0 / 3.0) <= tight);
    CHECK(std::abs(rhs.hi() - 11.0 / 3.0) <= tight);
    CHECK(popoviciu_inclusion_scan(F).ok());

    const auto C = bounded_ivf(-1, 1, 5, [](double) { return 0.0; }, [](double) { return 1.0; });
    const auto c = popoviciu_inclusion_check(C, -1, 0.5, 1);
    CHECK(c.equality);
    CHECK(set(c.lhs) == ExtInterval::bounded(0, 2));

    const auto bad = bounded_ivf(-1, 1, 21, [](double x) { return -x * x; },
                                 [](double x) { return x * x; });
    const auto s = popoviciu_inclusion_scan(bad);
    REQUIRE_FALSE(s.ok());
    const auto& w = *s.violation->witness;
    CHECK_FALSE(popoviciu_inclusion_check(bad, *w.x, *w.y, *w.z).holds);
}

// -- monotone difference inequality -------------------------------------------

TEST_CASE("monotone difference inequality examples")
{
    const auto phi = sampled(0, 1, 101, [](double x) { return x * x - x; });
    const auto psi = sampled(0, 1, 101, [](double x) { return x * x; });
    const auto r = prop3_check(phi, psi, 0, 1, 0.5);
    CHECK(r.holds);
    CHECK(std::abs(real(r.lhs) - 0.5) <= tight);
    CHECK(std::abs(real(r.rhs) - 0.0) <= tight);

    const auto s = prop3_scan(phi, psi);
    CHECK(s.difference_monotone);
    CHECK(s.psi_shape);
    CHECK(s.scan.ok());
    CHECK(s.scan.evaluated == 101 * 100 / 2 * 33);

    const auto broken = sampled(0, 1, 101, [](double x) { return x * x + x; });
    const auto b = prop3_check(broken, psi, 0, 0.5, 0.5);
    CHECK_FALSE(b.holds);
    CHECK(std::abs(real(b.lhs) - 0.125) <= tight);
    CHECK(std::abs(real(b.rhs) - 0.1875) <= tight);
    REQUIRE(b.witness.has_value());
    CHECK(*b.witness->t == 0.5);

    const auto bs = prop3_scan(broken, psi);
    CHECK_FALSE(bs.difference_monotone);
    CHECK_FALSE(bs.scan.ok());

    CHECK(code_of([&] { prop3_check(phi, psi, 0, 1, 1.0); }) == ErrorCode::RangeViolation);
    CHECK(code_of([&] { prop3_check(phi, psi, 1, 0, 0.5); }) == ErrorCode::RangeViolation);
}

TEST_CASE("monotone difference degenerates to convexity when phi = psi")
{
    const auto f = sampled(-1, 1, 41, [](double x) { return std::exp(x); });
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        double x = testing::uniform(rng, -1, 1);
        double y = testing::uniform(rng, -1, 1);
        if (x > y)
            std::swap(x, y);
        const double t = testing::uniform(rng, 0.01, 0.99);
        const auto r = prop3_check(f, f, x, y, t);
        CHECK(r.holds);
        // Both sides are the two halves of the convexity definition.
        CHECK(real(r.lhs) == doctest::Approx((1 - t) * f(x) + t * f(y)));
    }
}

TEST_CASE("equality everywhere exactly for a constant shift of an affine function")
{
    const auto lin = sampled(0, 1, 11, [](double x) { return 2 * x + 1; });
    const auto shifted = sampled(0, 1, 11, [](double x) { return 2 * x + 1 - 3; });
    CHECK(prop3_scan(shifted, lin).equality_everywhere);

    const auto sq = sampled(0, 1, 11, [](double x) { return x * x; });
    CHECK_FALSE(prop3_scan(sq, sq).equality_everywhere);

    const auto id = sampled(0, 1, 11, [](double x) { return x; });
    const auto bent = sampled(0, 1, 11, [](double x) { return x - x * x; });
    CHECK_FALSE(prop3_scan(bent, id).equality_everywhere);
}

TEST_CASE("monotone difference holds on random instances satisfying the hypotheses")
{
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = testing::uniform_int(rng, 2, 9);
        const auto psi = testing::random_convex(rng, n);
        std::vector<double> xs(psi.xs().begin(), psi.xs().end());
        // phi = psi - (increasing d).
        std::vector<double> d(n);
        for (auto& v : d)
            v = testing::uniform(rng, -1, 1);
        std::sort(d.begin(), d.end());
        std::vector<double> phi_y(n);
        for (std::size_t i = 0; i < n; ++i)
            phi_y[i] = psi.ys()[i] - d[i];
        const SampledFunction phi(xs, phi_y);
        const auto s = prop3_scan(phi, psi, Direction::IncreasingConvex, default_eps, 9);
        CHECK(s.hypotheses_hold());
        CHECK(s.scan.ok());

        const auto concave = negate(psi);
        std::vector<double> phi2(n);
        for (std::size_t i = 0; i < n; ++i)
            phi2[i] = concave.ys()[i] - (-d[i]);
        const auto s2 = prop3_scan(SampledFunction(xs, phi2), concave,
                                   Direction::DecreasingConcave, default_eps, 9);
        CHECK(s2.hypotheses_hold());
        CHECK(s2.scan.ok());
    }
}

TEST_CASE("set-valued census only counts")
{
    const auto F = bounded_ivf(0, 1, 11, [](double x) { return x * x; },
                               [](double x) { return 2 - x * x; });
    const auto c = prop3_setvalued_census(F, F, default_eps, 3);
    CHECK(c.evaluated == 11 * 10 / 2 * 3);
    CHECK(c.equal + c.lhs_contains_rhs + c.lhs_within_rhs + c.incomparable == c.evaluated);
}

// -- endpoint weights ---------------------------------------------------------

TEST_CASE("endpoint weights hand values")
{
    const auto f = sampled(0, 2, 101, [](double x) { return x * x; });
    const Lemma5Input in{{0.5, 1.5, 1.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.0, 2.0};
    const auto w = endpoint_weights(in);
    CHECK(w.lambda1 == doctest::Approx(0.5));
    CHECK(w.lambda2 == doctest::Approx(0.5));
    const auto r = lemma5_check(f, in);
    CHECK(r.holds);
    CHECK(std::abs(real(r.lhs) - 3.5 / 3) <= tight);
    CHECK(std::abs(real(r.rhs) - 2.0) <= tight);

    const auto single = lemma5_check(f, Lemma5Input{{0.0}, {1.0}, 0.0, 2.0});
    CHECK(single.equality);

    CHECK(code_of([&] { lemma5_check(f, in, EndpointWeights{0.25, 0.75}); }) ==
          ErrorCode::BarycenterViolation);
    CHECK(lemma5_check(f, in, EndpointWeights{0.5, 0.5}).holds);
}

TEST_CASE("endpoint weights input validation")
{
    const auto f = sampled(0, 2, 5, [](double x) { return x * x; });
    CHECK(code_of([&] { lemma5_check(f, {{0.5}, {0.5}, 0, 2}); }) == ErrorCode::WeightViolation);
    CHECK(code_of([&] { lemma5_check(f, {{0.5, 1}, {1.5, -0.5}, 0, 2}); }) ==
          ErrorCode::WeightViolation);
    CHECK(code_of([&] { lemma5_check(f, {{0.5, 1}, {1.0}, 0, 2}); }) ==
          ErrorCode::WeightViolation);
    CHECK(code_of([&] { lemma5_check(f, {{2.5}, {1.0}, 0, 2}); }) == ErrorCode::DomainViolation);
    CHECK(code_of([&] { lemma5_check(f, {{0.5}, {1.0}, 0, 3}); }) == ErrorCode::DomainViolation);

    const auto cube = sampled(-1, 1, 21, [](double x) { return x * x * x; });
    CHECK(code_of([&] { lemma5_check(cube, {{0.0}, {1.0}, -1, 1}); }) == ErrorCode::NotConvex);
    // Convex on the sub-interval is enough.
    CHECK(lemma5_check(cube, {{0.5}, {1.0}, 0, 1}).holds);
}

TEST_CASE("endpoint bound holds on random convex instances and is tight for affine f")
{
    Rng rng(55);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto f = testing::random_convex(rng, testing::uniform_int(rng, 2, 12));
        double a = testing::uniform(rng, -1, 1);
        double b = testing::uniform(rng, -1, 1);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        const int k = testing::uniform_int(rng, 1, 5);
        Lemma5Input in{{}, {}, a, b};
        double total = 0;
        for (int i = 0; i < k; ++i) {
            in.points.push_back(testing::uniform(rng, a, b));
            in.weights.push_back(testing::uniform(rng, 0.01, 1));
            total += in.weights.back();
        }
        for (auto& mu : in.weights)
            mu /= total;
        const auto r = lemma5_check(f, in);
        CHECK(r.holds);

        const auto line = make_sampled({-1, 1}, {-0.3, 1.7});
        const auto e = lemma5_check(line, in);
        CHECK(std::abs(real(e.lhs) - real(e.rhs)) <= 1e-12);
    }
}

TEST_CASE("double inequality under the barycenter constraint")
{
    const auto f = sampled(0, 2, 101, [](double x) { return x * x; });
    const auto r = prop6_check(f, 0, 1, 2, 0, 2);
    CHECK(r.holds);
    CHECK(std::abs(real(r.lhs) - 4.0) <= tight);
    CHECK(std::abs(real(*r.middle) - 8.0 / 3) <= tight);
    CHECK(std::abs(real(r.rhs) - 7.0 / 3) <= tight);
    REQUIRE(r.slacks.size() == 2);
    CHECK(std::abs(r.slacks[0] - 4.0 / 3) <= tight);
    CHECK(std::abs(r.slacks[1] - 1.0 / 3) <= tight);

    // Degenerate triple: first slack is the midpoint convexity gap.
    const auto d = prop6_check(f, 1, 1, 1, 0, 2);
    CHECK(d.slacks[0] == doctest::Approx(f(0) + f(2) - 2 * f(1)));
    CHECK(d.slacks[1] == doctest::Approx(0.0).scale(1.0));

    const auto line = sampled(0, 2, 3, [](double x) { return 3 * x - 1; });
    const auto e = prop6_check(line, 0.5, 1, 1.5, 0, 2);
    CHECK(e.equality);

    CHECK(code_of([&] { prop6_check(f, 0, 0.5, 1, 0, 2); }) == ErrorCode::BarycenterViolation);
    const auto cube = sampled(-1, 1, 21, [](double x) { return x * x * x; });
    CHECK(code_of([&] { prop6_check(cube, -1, 0, 1, -1, 1); }) == ErrorCode::NotConvex);
}

TEST_CASE("double inequality holds on random convex instances")
{
    Rng rng(66);
    for (int trial = 0; trial < 500; ++trial) {
        const auto f = testing::random_convex(rng, testing::uniform_int(rng, 2, 12));
        const double x = testing::uniform(rng, -0.5, 0.5);
        const double y = testing::uniform(rng, -0.5, 0.5);
        const double z = testing::uniform(rng, -0.5, 0.5);
        const double mean = (x + y + z) / 3;
        const double r = std::max({mean - std::min({x, y, z}), std::max({x, y, z}) - mean,
                                   testing::uniform(rng, 0, 0.4)}) +
                       1e-9;
        if (mean - r < -1 || mean + r > 1)
            continue;
        const auto rep = prop6_check(f, x, y, z, mean - r, mean + r);
        CHECK(rep.holds);
        CHECK(rep.slacks[0] >= -default_eps);
        CHECK(rep.slacks[1] >= -default_eps);
    }
}

TEST_CASE("set-valued convex combination inclusion")
{
    const auto F = bounded_ivf(-1, 1, 21, [](double x) { return x * x; },
                               [](double x) { return 2 - x * x; });
    const auto r = prop7_check(F, {{-0.5, 0.5}, {0.5, 0.5}, -1, 1});
    CHECK(r.direct.holds);
    CHECK(r.decomposed.holds);
    CHECK(r.paths_agree);
    CHECK(set(r.direct.lhs) == ExtInterval::bounded(0.25, 1.75));
    CHECK(set(r.direct.rhs) == ExtInterval::bounded(1, 1));

    const auto C = bounded_ivf(-1, 1, 3, [](double) { return -1.0; }, [](double) { return 4.0; });
    const auto c = prop7_check(C, {{0.2}, {1.0}, -1, 1});
    CHECK(c.direct.equality);

    const auto R = make_all_reals(grid(-1, 1, 3));
    const auto a = prop7_check(R, {{0.2, 0.4}, {0.5, 0.5}, -1, 1});
    CHECK(a.direct.holds);
    CHECK(set(a.direct.lhs) == ExtInterval::all_reals());
    CHECK(a.paths_agree);

    const auto bad = bounded_ivf(-1, 1, 21, [](double x) { return -x * x; },
                                 [](double x) { return x * x + 1; });
    CHECK(code_of([&] { prop7_check(bad, {{0.0}, {1.0}, -1, 1}); }) == ErrorCode::NotConvexIVF);
}

TEST_CASE("both inclusion paths agree on random convex set-valued functions")
{
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const Kind kind = testing::all_kinds[trial % 4];
        const auto F = testing::random_convex_ivf(rng, kind, testing::uniform_int(rng, 2, 10));
        const double a = testing::uniform(rng, -1, 0);
        const double b = testing::uniform(rng, 0.01, 1);
        const int k = testing::uniform_int(rng, 1, 4);
        Lemma5Input in{{}, {}, a, b};
        double total = 0;
        for (int i = 0; i < k; ++i) {
            in.points.push_back(testing::uniform(rng, a, b));
            in.weights.push_back(testing::uniform(rng, 0.01, 1));
            total += in.weights.back();
        }
        for (auto& mu : in.weights)
            mu /= total;
        const auto r = prop7_check(F, in);
        CHECK(r.paths_agree);
        CHECK(r.direct.holds);
    }
}

TEST_CASE("slope convexity against the Popoviciu scan")
{
    const auto sq = sampled(-1, 1, 21, [](double x) { return x * x; });
    const auto a = convexity_cross_check(sq);
    CHECK(a.convex);
    CHECK(a.scan.ok());
    CHECK(a.agree);

    const auto cube = sampled(-1, 1, 101, [](double x) { return x * x * x; });
    const auto b = convexity_cross_check(cube);
    CHECK_FALSE(b.convex);
    CHECK_FALSE(b.scan.ok());
    CHECK(b.agree);
    CHECK_FALSE(b.internal_error);

    const auto line = sampled(-1, 1, 11, [](double x) { return 0.5 * x; });
    const auto c = convexity_cross_check(line);
    CHECK(c.agree);
    CHECK(c.scan.equalities == c.scan.evaluated);
}
