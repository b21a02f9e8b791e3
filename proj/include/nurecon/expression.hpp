#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace nurecon {

/// A pure real map x -> value with a human-readable label.
///
/// Built either from one of the closed forms below, from a product of two
/// expressions, from a caller-supplied callable, or by parsing a string in
/// the small grammar accepted by parse_expression().
class Expr {
public:
    using Fn = std::function<double(double)>;

    Expr() = default;
    Expr(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}

    double operator()(double x) const { return fn_(x); }
    const std::string& label() const noexcept { return label_; }
    explicit operator bool() const noexcept { return static_cast<bool>(fn_); }

    /// scale * sin(omega * x)
    static Expr sine(double omega, double scale = 1.0);
    /// scale * cos(omega * x)
    static Expr cosine(double omega, double scale = 1.0);
    /// exp(q * x)
    static Expr exponential(double q);
    /// exp(c * x^2)
    static Expr gaussian(double c);
    static Expr constant(double c);
    static Expr product(Expr a, Expr b);
    static Expr custom(Fn fn, std::string label = "custom");

private:
    Fn fn_;
    std::string label_;
};

/// Parses an expression in x.
///
/// Grammar (usual precedence, '^' right-associative, unary minus allowed):
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func   := 'sin' | 'cos' | 'exp'
///
/// Throws ParameterError with the offending position on malformed input.
Expr parse_expression(std::string_view text);

}  // namespace nurecon
