#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace hausdorff {

/// A parsed real expression in the single variable `t`, used for the
/// "expr" density kind. Supports + - * / ^, unary minus, parentheses,
/// numeric literals, the constant `pi` and the functions exp, log, sqrt,
/// sin, cos, abs.
class Expression {
public:
    struct Node;

    static Expression parse(std::string_view text);

    double operator()(double t) const;

    /// The expression with t replaced by 1/t.
    Expression substitute_reciprocal() const;

    /// Product of this expression with t^exponent.
    Expression times_power(double exponent) const;

    /// Fully parenthesised text that parses back to an equal expression.
    std::string to_string() const;

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace hausdorff
