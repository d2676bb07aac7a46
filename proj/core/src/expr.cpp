#include "cvx/expr.hpp"

#include "cvx/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace cvx::expr {

// -- construction --------------------------------------------------------------

Expr Expr::constant(double v) { return Expr(std::make_shared<const Node>(Node{Constant{v}})); }
Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{Variable{}})); }

Expr Expr::unary(UnaryOp op, Expr arg)
{
    return Expr(std::make_shared<const Node>(Node{Unary{op, arg.ptr()}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
    return Expr(std::make_shared<const Node>(Node{Binary{op, lhs.ptr(), rhs.ptr()}}));
}

Expr Expr::call(CallOp op, Expr first, Expr second)
{
    return Expr(std::make_shared<const Node>(Node{Call{op, first.ptr(), second.ptr()}}));
}

namespace {

bool same(const Node& a, const Node& b)
{
    if (a.data.index() != b.data.index())
        return false;
    return std::visit(
        [&](const auto& l) -> bool {
            using T = std::decay_t<decltype(l)>;
            const auto& r = std::get<T>(b.data);
            if constexpr (std::is_same_v<T, Constant>)
                return l.value == r.value;
            else if constexpr (std::is_same_v<T, Variable>)
                return true;
            else if constexpr (std::is_same_v<T, Unary>)
                return l.op == r.op && same(*l.arg, *r.arg);
            else if constexpr (std::is_same_v<T, Binary>)
                return l.op == r.op && same(*l.lhs, *r.lhs) && same(*l.rhs, *r.rhs);
            else
                return l.op == r.op && same(*l.first, *r.first) && same(*l.second, *r.second);
        },
        a.data);
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ", ";
        out += items[i];
    }
    return out;
}

} // namespace

bool operator==(const Expr& a, const Expr& b) { return same(a.root(), b.root()); }

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                         ": expected one of: " + join(expected)),
      offset_(offset), expected_(std::move(expected))
{
}

std::string_view to_string(EvalErrorKind kind) noexcept
{
    switch (kind) {
    case EvalErrorKind::DivisionByZero: return "division by zero";
    case EvalErrorKind::LogNonPositive: return "logarithm of a non-positive number";
    case EvalErrorKind::NonFinite: return "non-finite result";
    }
    return "unknown";
}

EvalError::EvalError(EvalErrorKind kind, double x)
    : std::runtime_error(std::string(to_string(kind)) + " at x = " + std::to_string(x)),
      kind_(kind), x_(x)
{
}

// -- parser ------------------------------------------------------------------------

namespace {

const std::vector<std::string> operand_start{"'('", "'-'", "'x'", "function name", "number"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all()
    {
        auto e = expression();
        skip_space();
        if (pos_ != text_.size())
            throw SyntaxError(pos_, {"'*'", "'+'", "'-'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c))
            throw SyntaxError(pos_, {std::string("'") + c + "'"});
    }

    Expr expression()
    {
        auto lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(BinaryOp::Add, lhs, term());
            else if (accept('-'))
                lhs = Expr::binary(BinaryOp::Sub, lhs, term());
            else
                return lhs;
        }
    }

    Expr term()
    {
        auto lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = Expr::binary(BinaryOp::Mul, lhs, unary());
            else if (accept('/'))
                lhs = Expr::binary(BinaryOp::Div, lhs, unary());
            else
                return lhs;
        }
    }

    Expr unary()
    {
        if (accept('-'))
            return Expr::unary(UnaryOp::Neg, unary());
        return power();
    }

    Expr power()
    {
        auto base = atom();
        if (accept('^'))
            return Expr::binary(BinaryOp::Pow, base, unary());
        return base;
    }

    Expr atom()
    {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            auto inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        throw SyntaxError(pos_, operand_start);
    }

    Expr number()
    {
        // decimal literal: digits [. digits] [(e|E) [+|-] digits]
        const std::size_t start = pos_;
        std::size_t p = pos_;
        const auto digits = [&] {
            const std::size_t from = p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p])))
                ++p;
            return p - from;
        };
        std::size_t count = digits();
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            count += digits();
        }
        if (count == 0)
            throw SyntaxError(start, {"digit"});
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            ++p;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-'))
                ++p;
            if (digits() == 0)
                throw SyntaxError(p, {"digit"});
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + p, value);
        if (ec != std::errc() || end != text_.data() + p || !std::isfinite(value))
            throw SyntaxError(start, {"finite number"});
        pos_ = p;
        return Expr::constant(value);
    }

    Expr identifier()
    {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        while (p < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_'))
            ++p;
        const std::string_view name = text_.substr(start, p - start);
        pos_ = p;
        if (name == "x")
            return Expr::variable();

        std::optional<UnaryOp> unary_op;
        std::optional<CallOp> call_op;
        if (name == "abs")
            unary_op = UnaryOp::Abs;
        else if (name == "exp")
            unary_op = UnaryOp::Exp;
        else if (name == "log")
            unary_op = UnaryOp::Log;
        else if (name == "min")
            call_op = CallOp::Min;
        else if (name == "max")
            call_op = CallOp::Max;
        else
            throw SyntaxError(start, {"'x'", "abs", "exp", "log", "max", "min"});

        expect('(');
        auto first = expression();
        if (unary_op) {
            expect(')');
            return Expr::unary(*unary_op, first);
        }
        expect(',');
        auto second = expression();
        expect(')');
        return Expr::call(*call_op, first, second);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// -- printer ---------------------------------------------------------------------

namespace {

std::string number_text(double v)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

void print_into(const Node& n, std::string& out)
{
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Constant>) {
                out += number_text(node.value);
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += 'x';
            } else if constexpr (std::is_same_v<T, Unary>) {
                switch (node.op) {
                case UnaryOp::Neg: out += "(-"; break;
                case UnaryOp::Abs: out += "abs("; break;
                case UnaryOp::Exp: out += "exp("; break;
                case UnaryOp::Log: out += "log("; break;
                }
                print_into(*node.arg, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Binary>) {
                static constexpr const char* symbols[] = {" + ", " - ", " * ", " / ", " ^ "};
                out += '(';
                print_into(*node.lhs, out);
                out += symbols[static_cast<int>(node.op)];
                print_into(*node.rhs, out);
                out += ')';
            } else {
                out += node.op == CallOp::Min ? "min(" : "max(";
                print_into(*node.first, out);
                out += ", ";
                print_into(*node.second, out);
                out += ')';
            }
        },
        n.data);
}

} // namespace

std::string print(const Expr& e)
{
    std::string out;
    print_into(e.root(), out);
    return out;
}

// -- evaluation --------------------------------------------------------------------

namespace {

double checked(double v, double x)
{
    if (!std::isfinite(v))
        throw EvalError(EvalErrorKind::NonFinite, x);
    return v;
}

double integer_power(double base, long long n)
{
    double result = 1.0;
    for (long long k = 0; k < n; ++k)
        result *= base;
    return result;
}

double power(double base, double exponent, double x)
{
    constexpr double max_repeat = 64.0;
    if (exponent >= 0.0 && exponent <= max_repeat && std::floor(exponent) == exponent)
        return integer_power(base, static_cast<long long>(exponent));
    if (!(base > 0.0))
        throw EvalError(EvalErrorKind::LogNonPositive, x);
    return std::exp(exponent * std::log(base));
}

double eval_node(const Node& n, double x)
{
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return node.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return x;
            } else if constexpr (std::is_same_v<T, Unary>) {
                const double a = eval_node(*node.arg, x);
                switch (node.op) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Abs: return std::abs(a);
                case UnaryOp::Exp: return checked(std::exp(a), x);
                case UnaryOp::Log:
                    if (!(a > 0.0))
                        throw EvalError(EvalErrorKind::LogNonPositive, x);
                    return std::log(a);
                }
                return 0.0;
            } else if constexpr (std::is_same_v<T, Binary>) {
                const double a = eval_node(*node.lhs, x);
                const double b = eval_node(*node.rhs, x);
                switch (node.op) {
                case BinaryOp::Add: return checked(a + b, x);
                case BinaryOp::Sub: return checked(a - b, x);
                case BinaryOp::Mul: return checked(a * b, x);
                case BinaryOp::Div:
                    if (b == 0.0)
                        throw EvalError(EvalErrorKind::DivisionByZero, x);
                    return checked(a / b, x);
                case BinaryOp::Pow: return checked(power(a, b, x), x);
                }
                return 0.0;
            } else {
                const double a = eval_node(*node.first, x);
                const double b = eval_node(*node.second, x);
                return node.op == CallOp::Min ? std::min(a, b) : std::max(a, b);
            }
        },
        n.data);
}

} // namespace

double eval_expr(const Expr& e, double x) { return eval_node(e.root(), x); }

std::vector<double> uniform_grid(double a, double b, std::size_t n)
{
    if (!(a < b) || n < 2)
        throw Error(ErrorCode::RangeViolation, "sampling needs a < b and at least two points");
    std::vector<double> xs(n);
    const double width = b - a;
    const double steps = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = a + width * static_cast<double>(i) / steps;
    xs.back() = b;
    return xs;
}

SampledFunction sample(const Expr& e, double a, double b, std::size_t n)
{
    auto xs = uniform_grid(a, b, n);
    std::vector<double> ys;
    ys.reserve(n);
    for (double x : xs)
        ys.push_back(eval_expr(e, x));
    return SampledFunction(std::move(xs), std::move(ys));
}

} // namespace cvx::expr
