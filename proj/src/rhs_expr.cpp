#include "hilfer/rhs_expr.hpp"

#include "hilfer/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

namespace hilfer {

namespace {

using Node = RhsExpr::Node;
using NodePtr = RhsExpr::NodePtr;
using Kind = RhsExpr::Kind;
using Func = RhsExpr::Func;

struct FuncInfo {
    std::string_view name;
    Func func;
    std::size_t arity;
};

constexpr std::array<FuncInfo, 7> kFunctions = {{
    {"sin", Func::Sin, 1},
    {"cos", Func::Cos, 1},
    {"exp", Func::Exp, 1},
    {"log", Func::Log, 1},
    {"abs", Func::Abs, 1},
    {"sqrt", Func::Sqrt, 1},
    {"pow", Func::Pow, 2},
}};

std::string_view func_name(Func f) {
    for (const auto& info : kFunctions) {
        if (info.func == f) {
            return info.name;
        }
    }
    return "?";
}

NodePtr make(Kind kind, std::size_t offset, std::vector<NodePtr> args = {}, double value = 0.0,
             Func func = Func::Sin) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->offset = offset;
    n->args = std::move(args);
    n->value = value;
    n->func = func;
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("expected operator or end of input");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::string got = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                              : std::string("end of input");
        throw ParseError(pos_, msg + ", got " + got);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('+')) {
                lhs = make(Kind::Add, at, {lhs, term()});
            } else if (accept('-')) {
                lhs = make(Kind::Sub, at, {lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('*')) {
                lhs = make(Kind::Mul, at, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Kind::Div, at, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        skip_ws();
        const std::size_t at = pos_;
        if (accept('-')) {
            return make(Kind::Neg, at, {unary()});
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        skip_ws();
        const std::size_t at = pos_;
        if (accept('^')) {
            return make(Kind::Pow, at, {base, unary()});
        }
        return base;
    }

    NodePtr primary() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) {
            fail("expected number, variable, function or '('");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
                ++end;
            }
            const std::string_view name = text_.substr(pos_, end - pos_);
            if (name == "x" || name == "y") {
                pos_ = end;
                return make(name == "x" ? Kind::VarX : Kind::VarY, at);
            }
            for (const auto& info : kFunctions) {
                if (info.name == name) {
                    pos_ = end;
                    return call(info, at);
                }
            }
            throw ParseError(at, "unknown identifier '" + std::string(name) + "'");
        }
        if (accept('(')) {
            NodePtr inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        fail("expected number, variable, function or '('");
    }

    NodePtr call(const FuncInfo& info, std::size_t at) {
        if (!accept('(')) {
            fail("expected '(' after " + std::string(info.name));
        }
        std::vector<NodePtr> args;
        args.push_back(expr());
        while (accept(',')) {
            args.push_back(expr());
        }
        if (!accept(')')) {
            fail("expected ',' or ')'");
        }
        if (args.size() != info.arity) {
            throw ParseError(at, std::string(info.name) + " takes " + std::to_string(info.arity) +
                                     " argument(s), got " + std::to_string(args.size()));
        }
        return make(Kind::Call, at, std::move(args), 0.0, info.func);
    }

    NodePtr number() {
        const std::size_t at = pos_;
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
        if (ec != std::errc() || !std::isfinite(v)) {
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return make(Kind::Number, at, {}, v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

[[noreturn]] void domain_fail(const Node& n, const std::string& what) {
    throw DomainError(what + " (node at offset " + std::to_string(n.offset) + ")");
}

double eval(const Node& n, double x, double y) {
    switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::VarX: return x;
    case Kind::VarY: return y;
    case Kind::Neg: return -eval(*n.args[0], x, y);
    case Kind::Add: return eval(*n.args[0], x, y) + eval(*n.args[1], x, y);
    case Kind::Sub: return eval(*n.args[0], x, y) - eval(*n.args[1], x, y);
    case Kind::Mul: return eval(*n.args[0], x, y) * eval(*n.args[1], x, y);
    case Kind::Div: {
        const double d = eval(*n.args[1], x, y);
        if (d == 0.0) {
            domain_fail(n, "division by zero");
        }
        return eval(*n.args[0], x, y) / d;
    }
    case Kind::Pow:
    case Kind::Call:
        break;
    }
    const double a0 = eval(*n.args[0], x, y);
    const bool is_pow = n.kind == Kind::Pow || n.func == Func::Pow;
    if (is_pow) {
        const double a1 = eval(*n.args[1], x, y);
        if (a0 < 0.0 && a1 != std::floor(a1)) {
            domain_fail(n, "negative base " + std::to_string(a0) + " with non-integer exponent");
        }
        if (a0 == 0.0 && a1 < 0.0) {
            domain_fail(n, "zero base with negative exponent");
        }
        return std::pow(a0, a1);
    }
    switch (n.func) {
    case Func::Sin: return std::sin(a0);
    case Func::Cos: return std::cos(a0);
    case Func::Exp: return std::exp(a0);
    case Func::Log:
        if (!(a0 > 0.0)) {
            domain_fail(n, "log of non-positive value " + std::to_string(a0));
        }
        return std::log(a0);
    case Func::Abs: return std::abs(a0);
    case Func::Sqrt:
        if (a0 < 0.0) {
            domain_fail(n, "sqrt of negative value " + std::to_string(a0));
        }
        return std::sqrt(a0);
    case Func::Pow: break;
    }
    domain_fail(n, "unknown function");
}

void print(std::ostringstream& os, const Node& n) {
    auto binary = [&](const char* op) {
        os << '(';
        print(os, *n.args[0]);
        os << ' ' << op << ' ';
        print(os, *n.args[1]);
        os << ')';
    };
    switch (n.kind) {
    case Kind::Number: os << n.value; return;
    case Kind::VarX: os << 'x'; return;
    case Kind::VarY: os << 'y'; return;
    case Kind::Neg:
        os << "(-";
        print(os, *n.args[0]);
        os << ')';
        return;
    case Kind::Add: binary("+"); return;
    case Kind::Sub: binary("-"); return;
    case Kind::Mul: binary("*"); return;
    case Kind::Div: binary("/"); return;
    case Kind::Pow: binary("^"); return;
    case Kind::Call:
        os << func_name(n.func) << '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) {
                os << ", ";
            }
            print(os, *n.args[i]);
        }
        os << ')';
        return;
    }
}

bool equal(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) {
        return false;
    }
    if (a.kind == Kind::Number && a.value != b.value) {
        return false;
    }
    if (a.kind == Kind::Call && a.func != b.func) {
        return false;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(*a.args[i], *b.args[i])) {
            return false;
        }
    }
    return true;
}

} // namespace

RhsExpr parse_rhs(std::string_view text) { return RhsExpr(Parser(text).parse()); }

double eval_rhs(const RhsExpr& e, double x, double y) {
    const double v = eval(e.root(), x, y);
    if (!std::isfinite(v)) {
        throw DomainError("non-finite value of f at x = " + std::to_string(x) +
                          ", y = " + std::to_string(y));
    }
    return v;
}

std::string to_string(const RhsExpr& e) {
    std::ostringstream os;
    os.precision(17);
    print(os, e.root());
    return os.str();
}

bool operator==(const RhsExpr& lhs, const RhsExpr& rhs) { return equal(lhs.root(), rhs.root()); }

Rhs Rhs::zero() {
    return Rhs([](double, double) { return 0.0; }, "zero");
}

Rhs Rhs::linear(double lambda) {
    std::ostringstream os;
    os.precision(17);
    os << "linear:" << lambda;
    return Rhs([lambda](double, double y) { return lambda * y; }, os.str());
}

Rhs Rhs::expression(RhsExpr e) {
    std::string text = to_string(e);
    return Rhs([e = std::move(e)](double x, double y) { return eval_rhs(e, x, y); },
               std::move(text));
}

Rhs Rhs::parse(std::string_view text) {
    if (text == "zero") {
        return zero();
    }
    constexpr std::string_view prefix = "linear:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view num = text.substr(prefix.size());
        double lambda = 0.0;
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), lambda);
        if (ec != std::errc() || ptr != num.data() + num.size() || !std::isfinite(lambda)) {
            throw ParseError(prefix.size(), "expected a number after 'linear:'");
        }
        return linear(lambda);
    }
    return expression(parse_rhs(text));
}

double estimate_lipschitz(const Rhs& f, Interval x_range, Interval y_range, int samples) {
    if (samples < 100) {
        throw ValidationError("samples", "need at least 100 lattice points per axis");
    }
    if (!(x_range.lo <= x_range.hi) || !(y_range.lo < y_range.hi)) {
        throw ValidationError("range", "empty sampling range");
    }
    const double dy = 1e-6 * (y_range.hi - y_range.lo);
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = x_range.lo + (x_range.hi - x_range.lo) * i / (samples - 1);
        for (int j = 0; j < samples; ++j) {
            const double y = y_range.lo + (y_range.hi - y_range.lo) * j / (samples - 1);
            double slope;
            try {
                slope = (f(x, y + dy) - f(x, y - dy)) / (2.0 * dy);
            } catch (const DomainError& e) {
                throw DomainError(std::string(e.what()) + " while sampling at lattice point (" +
                                  std::to_string(x) + ", " + std::to_string(y) + ")");
            }
            best = std::max(best, std::abs(slope));
        }
    }
    return 1.25 * best;
}

} // namespace hilfer
