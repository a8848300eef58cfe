#pragma once

// Arithmetic expression language used for p(x), sigma(x), Phi(x) and radial
// profiles in scenario files.
//
//   expr    ::= term { ('+' | '-') term }
//   term    ::= unary { ('*' | '/') unary }
//   unary   ::= '-' unary | power
//   power   ::= primary [ '^' unary ]          (right associative)
//   primary ::= number | variable | constant | call | '(' expr ')'
//   call    ::= name '(' expr [ ',' expr ] ')'
//
// Variables are x1, x2, ... (1-based coordinates) and r = |x|. Constants are
// pi and e. Functions: exp, log, abs, sqrt (one argument), min, max (two).

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pxhardy {

enum class Func { Exp, Log, Abs, Sqrt, Min, Max };

class Expr {
public:
    enum class Kind { Number, Variable, Radius, Constant, Negate, Binary, Call };

    struct Node {
        Kind kind = Kind::Number;
        double value = 0.0;      // Number, and the numeric value of Constant
        std::size_t index = 0;   // Variable: 0-based coordinate
        char op = 0;             // Binary: + - * / ^
        Func func = Func::Exp;   // Call
        std::string name;        // Constant
        std::vector<std::shared_ptr<const Node>> args;
    };

    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> root);

    /// Evaluate at a point. The point must have at least `dimension()`
    /// coordinates. Singularities (log of a non-positive number, division by
    /// zero, ...) raise EvalError instead of returning inf/nan.
    double eval(std::span<const double> point) const;

    /// Exact gradient by forward-mode differentiation (central differences
    /// beyond eight coordinates). Writes grad (same size as point) and returns
    /// the value. abs, min and max use one-sided branches at their kinks; the
    /// gradient of r is taken as zero at the origin.
    double eval_gradient(std::span<const double> point, std::span<double> grad) const;
    std::vector<double> gradient(std::span<const double> point) const;

    /// Smallest point dimension this expression can be evaluated at.
    std::size_t dimension() const noexcept { return dimension_; }
    bool uses_radius() const noexcept { return uses_radius_; }
    bool is_constant() const noexcept { return dimension_ == 0 && !uses_radius_; }

    /// Fully parenthesised text that parses back to a structurally equal tree.
    std::string to_string() const;

    const Node& root() const { return *root_; }
    bool empty() const noexcept { return !root_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> root_;
    std::size_t dimension_ = 0;
    bool uses_radius_ = false;
};

Expr parse(std::string_view text);

/// Central-difference gradient (e(x + h e_i) - e(x - h e_i)) / (2h). When `h`
/// is not given the step is 1e-5 * max(1, |x_i|) per coordinate.
std::vector<double> grad_numeric(const Expr& e, std::span<const double> point,
                                 std::optional<double> h = std::nullopt);

}  // namespace pxhardy
