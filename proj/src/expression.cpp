#include "nurecon/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "nurecon/error.hpp"

namespace nurecon {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Expr Expr::sine(double omega, double scale) {
    return {[omega, scale](double x) { return scale * std::sin(omega * x); },
            num(scale) + "*sin(" + num(omega) + "*x)"};
}

Expr Expr::cosine(double omega, double scale) {
    return {[omega, scale](double x) { return scale * std::cos(omega * x); },
            num(scale) + "*cos(" + num(omega) + "*x)"};
}

Expr Expr::exponential(double q) {
    return {[q](double x) { return std::exp(q * x); }, "exp(" + num(q) + "*x)"};
}

Expr Expr::gaussian(double c) {
    return {[c](double x) { return std::exp(c * x * x); }, "exp(" + num(c) + "*x^2)"};
}

Expr Expr::constant(double c) {
    return {[c](double) { return c; }, num(c)};
}

Expr Expr::product(Expr a, Expr b) {
    std::string label = "(" + a.label() + ")*(" + b.label() + ")";
    return {[a = std::move(a), b = std::move(b)](double x) { return a(x) * b(x); },
            std::move(label)};
}

Expr Expr::custom(Fn fn, std::string label) {
    return {std::move(fn), std::move(label)};
}

// ---------------------------------------------------------------------------
// Recursive-descent parser producing an immutable tree.

namespace {

struct Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

double eval(const Node& n, double x) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number: return n.value;
        case K::Var: return x;
        case K::Neg: return -eval(*n.lhs, x);
        case K::Add: return eval(*n.lhs, x) + eval(*n.rhs, x);
        case K::Sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
        case K::Mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
        case K::Div: return eval(*n.lhs, x) / eval(*n.rhs, x);
        case K::Pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
        case K::Sin: return std::sin(eval(*n.lhs, x));
        case K::Cos: return std::cos(eval(*n.lhs, x));
        case K::Exp: return std::exp(eval(*n.lhs, x));
    }
    return 0.0;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParameterError("expression '" + std::string(s_) + "': " + msg + " at position " +
                             std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
        return std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)});
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Node::Kind::Add, lhs, term());
            else if (accept('-')) lhs = make(Node::Kind::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Node::Kind::Mul, lhs, unary());
            else if (accept('/')) lhs = make(Node::Kind::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (accept('^')) return make(Node::Kind::Pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
            if (ec != std::errc()) fail("malformed number");
            pos_ = static_cast<std::size_t>(ptr - s_.data());
            return make(Node::Kind::Number, nullptr, nullptr, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view word = s_.substr(start, pos_ - start);
            if (word == "x") return make(Node::Kind::Var);
            if (word == "pi") return make(Node::Kind::Number, nullptr, nullptr, std::numbers::pi);
            Node::Kind k;
            if (word == "sin") k = Node::Kind::Sin;
            else if (word == "cos") k = Node::Kind::Cos;
            else if (word == "exp") k = Node::Kind::Exp;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(word) + "'");
            }
            if (!accept('(')) fail("expected '(' after function name");
            auto arg = expr();
            if (!accept(')')) fail("expected ')'");
            return make(k, arg);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Expr parse_expression(std::string_view text) {
    NodePtr root = Parser(text).parse();
    return {[root](double x) { return eval(*root, x); }, std::string(text)};
}

}  // namespace nurecon
