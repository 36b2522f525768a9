#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hilfer {

/// Parsed right-hand side f(x, y).
///
/// Grammar (whitespace insignificant):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          right associative
///     primary := number | 'x' | 'y' | name '(' expr (',' expr)* ')' | '(' expr ')'
///
/// with functions sin, cos, exp, log, abs, sqrt (one argument) and pow (two).
class RhsExpr {
public:
    enum class Kind { Number, VarX, VarY, Neg, Add, Sub, Mul, Div, Pow, Call };
    enum class Func { Sin, Cos, Exp, Log, Abs, Sqrt, Pow };

    struct Node {
        Kind kind;
        double value = 0.0;
        Func func = Func::Sin;
        std::size_t offset = 0; // byte offset in the source text
        std::vector<std::shared_ptr<const Node>> args;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit RhsExpr(NodePtr root) : root_(std::move(root)) {}

    const Node& root() const noexcept { return *root_; }

private:
    NodePtr root_;
};

RhsExpr parse_rhs(std::string_view text);

double eval_rhs(const RhsExpr& e, double x, double y);

/// Fully parenthesised normal form; parse_rhs(to_string(e)) == e.
std::string to_string(const RhsExpr& e);

/// Structural equality (source offsets ignored).
bool operator==(const RhsExpr& lhs, const RhsExpr& rhs);

struct Interval {
    double lo;
    double hi;
};

/// Right-hand side as used by the solver: either a parsed expression or one of
/// the builtins `zero` and `linear:<lambda>`, which skip the parser.
class Rhs {
public:
    using Fn = std::function<double(double, double)>;

    static Rhs zero();
    static Rhs linear(double lambda);
    static Rhs expression(RhsExpr e);
    /// Builtin name or expression text.
    static Rhs parse(std::string_view text);

    double operator()(double x, double y) const { return fn_(x, y); }
    const std::string& text() const noexcept { return text_; }

private:
    Rhs(Fn fn, std::string text) : fn_(std::move(fn)), text_(std::move(text)) {}

    Fn fn_;
    std::string text_;
};

/// Heuristic Lipschitz constant in y: the largest central-difference |df/dy|
/// over a samples x samples lattice, times 1.25. Not a proof of anything.
double estimate_lipschitz(const Rhs& f, Interval x_range, Interval y_range, int samples);

} // namespace hilfer
