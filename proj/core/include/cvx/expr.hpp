#pragma once

#include "cvx/functions.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cvx::expr {

enum class UnaryOp { Neg, Abs, Exp, Log };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class CallOp { Min, Max };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant {
    double value;
};
struct Variable {};
struct Unary {
    UnaryOp op;
    NodePtr arg;
};
struct Binary {
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
};
struct Call {
    CallOp op;
    NodePtr first;
    NodePtr second;
};

struct Node {
    std::variant<Constant, Variable, Unary, Binary, Call> data;
};

/// Immutable expression tree in the single variable x.
class Expr {
public:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    const Node& root() const noexcept { return *root_; }
    const NodePtr& ptr() const noexcept { return root_; }

    static Expr constant(double v);
    static Expr variable();
    static Expr unary(UnaryOp op, Expr arg);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr call(CallOp op, Expr first, Expr second);

private:
    NodePtr root_;
};

/// Structural equality.
bool operator==(const Expr& a, const Expr& b);

/// Thrown by parse. what() reads
///   "syntax error at offset N: expected one of: A, B, ..."
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

enum class EvalErrorKind { DivisionByZero, LogNonPositive, NonFinite };

std::string_view to_string(EvalErrorKind kind) noexcept;

class EvalError : public std::runtime_error {
public:
    EvalError(EvalErrorKind kind, double x);

    EvalErrorKind kind() const noexcept { return kind_; }
    double x() const noexcept { return x_; }

private:
    EvalErrorKind kind_;
    double x_;
};

/// expr   := term (('+'|'-') term)*
/// term   := unary (('*'|'/') unary)*
/// unary  := '-' unary | power
/// power  := atom ('^' unary)?
/// atom   := number | 'x' | ident '(' args ')' | '(' expr ')'
/// So ^ binds tighter than unary minus and associates to the right.
Expr parse(std::string_view text);

/// Fully parenthesised form that parses back to the same tree.
std::string print(const Expr& e);

double eval_expr(const Expr& e, double x);

/// n uniform samples on [a, b]. Throws RangeViolation for a >= b or n < 2;
/// EvalError propagates with the offending x.
SampledFunction sample(const Expr& e, double a, double b, std::size_t n);

/// Uniform grid a + (b - a) i / (n - 1) with exact end points.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

} // namespace cvx::expr
