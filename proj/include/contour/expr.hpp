#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace contour {

using Vec3 = std::array<double, 3>;

/// Value with its gradient in (u, v, w).
struct Dual {
    double value = 0;
    Vec3 grad{0, 0, 0};
};

class ExprSyntaxError : public std::runtime_error {
public:
    ExprSyntaxError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position(position) {}
    std::size_t position;
};

/// Arithmetic expression in the variables u, v, w.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | primary
///   primary := number | name | fn '(' expr (',' expr)* ')' | '(' expr ')'
///   fn      := sin | cos | pow
///
/// A name other than u, v, w must be one of the supplied definitions, which
/// are themselves expressions (they may use earlier definitions by name).
/// Parsing produces a flat tape; evaluation is pure and thread-safe.
class Expr {
public:
    Expr() = default;
    static Expr parse(const std::string& text, const std::vector<std::pair<std::string, std::string>>& defs = {});

    double eval(const Vec3& p) const;
    Dual eval_grad(const Vec3& p) const;
    std::size_t size() const { return tape_.size(); }
    const std::string& source() const { return source_; }

    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Sin, Cos, Pow };
    struct Node {
        Op op;
        int a = -1, b = -1;  // operand slots
        double value = 0;    // Const
        int var = 0;         // Var
    };

private:
    std::vector<Node> tape_;
    std::string source_;
    friend class ExprParser;
};

}  // namespace contour
