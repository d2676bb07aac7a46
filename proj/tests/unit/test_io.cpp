#include "json_io.hpp"

#include <doctest.h>

#include <string>

using namespace cvx;
using namespace cvx::io;

namespace {

const std::string fixtures = CVX_FIXTURES_DIR;

} // namespace

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) {
        const auto s = format_number(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("sampled functions from documents and inline sources")
{
    const auto f = load_sampled(fixtures + "/square.json");
    CHECK(f.size() == 5);
    CHECK(f(0.5) == 0.25);

    const auto g = load_sampled("expr:x^2@[-1,1]:5");
    CHECK(g == f);

    const auto h = load_sampled(R"({"type":"sampled","xs":[0,1],"ys":[2,3]})");
    CHECK(h(0.5) == 2.5);

    const auto c = load_sampled(fixtures + "/cube_expr.json");
    CHECK(c.size() == 201);
    CHECK(c(1.0) == 1.0);

    CHECK(sampled_from_json(to_json(f)) == f);
}

TEST_CASE("bad inputs are reported")
{
    CHECK_THROWS(load_sampled(fixtures + "/unsorted.json"));
    CHECK_THROWS_AS(load_sampled(fixtures + "/malformed.json"), InputError);
    CHECK_THROWS_AS(load_sampled(fixtures + "/does-not-exist.json"), InputError);
    CHECK_THROWS_AS(load_sampled("expr:x^2@[-1,1]"), InputError);
    CHECK_THROWS_AS(load_sampled(R"({"type":"nope"})"), InputError);
    CHECK_THROWS_AS(kind_from_string("huge"), InputError);
}

TEST_CASE("interval functions")
{
    const auto band = load_interval_function(fixtures + "/band.json");
    CHECK(band.kind() == Kind::Bounded);
    CHECK(band(0.0) == ExtInterval::bounded(0, 2));

    const auto formula = load_interval_function(fixtures + "/band_formula.json");
    CHECK(formula(0.0) == ExtInterval::bounded(-1, 3));
    CHECK(formula.xs().size() == 101);

    const auto half = load_interval_function(fixtures + "/halfline.json");
    CHECK(half(1.0) == ExtInterval::upper_half(0));

    const auto inl = load_interval_function("ivf:bounded:x^2;2-x^2@[-1,1]:5");
    CHECK(inl(0.5) == ExtInterval::bounded(0.25, 1.75));
    const auto lower = load_interval_function("ivf:lower_half:1-x@[0,1]:3");
    CHECK(lower(0.5) == ExtInterval::lower_half(0.5));
    const auto all = load_interval_function("ivf:all_reals@[0,1]:3");
    CHECK(all(0.5) == ExtInterval::all_reals());

    CHECK(interval_function_from_json(to_json(band))(0.25) == band(0.25));
}

TEST_CASE("interval values serialise by kind")
{
    for (const auto& v : {ExtInterval::bounded(-1, 2), ExtInterval::upper_half(3),
                          ExtInterval::lower_half(-4), ExtInterval::all_reals()})
        CHECK(interval_from_json(to_json(v)) == v);
    CHECK(to_json(ExtInterval::all_reals()).at("kind") == "all_reals");
}
