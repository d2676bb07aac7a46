#include "cvx/expr.hpp"
#include "error_code.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <optional>
#include <string>

using namespace cvx;
using namespace cvx::expr;
using cvx::testing::code_of;
using cvx::testing::Rng;
using cvx::testing::random_expr;
using cvx::testing::reference;

namespace {

std::optional<double> evaluate(const Expr& e, double x)
{
    try {
        return eval_expr(e, x);
    } catch (const EvalError&) {
        return std::nullopt;
    }
}

} // namespace

TEST_CASE("precedence and associativity")
{
    CHECK(eval_expr(parse("2+3*4"), 0) == 14);
    CHECK(eval_expr(parse("2^3^2"), 0) == 512);
    CHECK(eval_expr(parse("-x^2"), 2) == -4);
    CHECK(eval_expr(parse("(-x)^2"), 2) == 4);
    CHECK(eval_expr(parse("2^-1"), 0) == 0.5);
    CHECK(eval_expr(parse("10-4-3"), 0) == 3);
    CHECK(eval_expr(parse("12/3/2"), 0) == 2);
    CHECK(eval_expr(parse("--x"), 5) == 5);
    CHECK(eval_expr(parse("2*-x"), 3) == -6);
    CHECK(eval_expr(parse(" 1.5e1 + x "), 0) == 15);
}

TEST_CASE("parse trees")
{
    const auto x = Expr::variable();
    CHECK(parse("x^2-1") ==
          Expr::binary(BinaryOp::Sub, Expr::binary(BinaryOp::Pow, x, Expr::constant(2)),
                       Expr::constant(1)));
    CHECK(parse("abs(x)") == Expr::unary(UnaryOp::Abs, x));
    CHECK(parse("min(x, 1)") == Expr::call(CallOp::Min, x, Expr::constant(1)));
    CHECK(print(parse("x^2-1")) == "((x ^ 2) - 1)");
}

TEST_CASE("syntax errors carry the offset and the expected tokens")
{
    try {
        parse("2*+x");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 2);
        CHECK_FALSE(e.expected().empty());
        CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
    }
    for (const char* bad : {"", "x+", "(x", "x)", "foo(x)", "abs x", "min(x)", "1..2", "x y", "^2"})
        CHECK_THROWS_AS(parse(bad), SyntaxError);
}

TEST_CASE("evaluation examples and errors")
{
    CHECK(eval_expr(parse("x^2-1"), 2) == 3);
    CHECK(eval_expr(parse("max(x, 1-x)"), 0.25) == 0.75);
    CHECK(eval_expr(parse("exp(0)+log(1)"), 0) == 1);
    try {
        eval_expr(parse("1/x"), 0);
        FAIL("expected an evaluation error");
    } catch (const EvalError& e) {
        CHECK(e.kind() == EvalErrorKind::DivisionByZero);
        CHECK(e.x() == 0.0);
    }
    CHECK_THROWS_AS(eval_expr(parse("log(x)"), -1), EvalError);
    CHECK_THROWS_AS(eval_expr(parse("x^0.5"), -1), EvalError);
    CHECK_THROWS_AS(eval_expr(parse("exp(x)"), 1000), EvalError);
    CHECK(eval_expr(parse("x^0.5"), 4) == doctest::Approx(2.0));
}

TEST_CASE("sampling")
{
    const auto id = sample(parse("x"), 0, 1, 2);
    CHECK(id == make_sampled({0, 1}, {0, 1}));
    const auto sq = sample(parse("x^2"), -1, 1, 3);
    CHECK(sq == make_sampled({-1, 0, 1}, {1, 0, 1}));
    CHECK(sample(parse("abs(x)"), -1, 1, 3).ys()[0] == 1);
    CHECK(sample(parse("abs(x)"), -1, 1, 3) == sq);

    const auto g = uniform_grid(-1, 1, 1001);
    CHECK(g.front() == -1);
    CHECK(g.back() == 1);
    CHECK(g[500] == 0);

    CHECK(code_of([] { sample(parse("x"), 1, 0, 5); }) == ErrorCode::RangeViolation);
    CHECK(code_of([] { sample(parse("x"), 0, 1, 1); }) == ErrorCode::RangeViolation);
    CHECK_THROWS_AS(sample(parse("1/x"), -1, 1, 3), EvalError);
}

TEST_CASE("printing round-trips generated expressions")
{
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto e = random_expr(rng, 5);
        const auto text = print(e);
        const auto back = parse(text);
        CHECK(back == e);
        CHECK(print(back) == text);
    }
}

TEST_CASE("evaluation agrees with the reference semantics")
{
    Rng rng(100);
    int compared = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto e = random_expr(rng, 4);
        const double x = testing::uniform(rng, -3, 3);
        const auto got = evaluate(e, x);
        const auto want = reference(e.root(), x);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(*got == *want);
            ++compared;
        }
    }
    CHECK(compared > 5000);
}
