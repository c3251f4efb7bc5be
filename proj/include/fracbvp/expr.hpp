#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracbvp {

enum class Var { T, X, Y };

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Bindings {
    std::optional<double> t;
    std::optional<double> x;
    std::optional<double> y;
};

struct ExprNode;

// Immutable arithmetic expression over variables t, x, y. Supports decimal
// literals, constants pi and e, + - * / ^ with constant exponents, unary
// minus, and the unary functions sin cos exp atan abs sqrt gammaf (the latter
// restricted to constant arguments).
class ExprAst {
public:
    double eval(const Bindings& b) const;   // throws EvalError
    std::string print() const;
    bool uses(Var v) const;
    bool is_constant() const;

    friend bool operator==(const ExprAst& a, const ExprAst& b);

private:
    friend ExprAst parse_expr(std::string_view text);
    explicit ExprAst(std::shared_ptr<const ExprNode> root);
    std::shared_ptr<const ExprNode> root_;
};

// Recursive-descent parse with precedence ^ > unary- > * / > + -, left
// associativity for + - * /, right for ^. Throws ParseError with the byte
// offset of the offending token.
ExprAst parse_expr(std::string_view text);

double eval_expr(const ExprAst& ast, double t, double x, double y);

} // namespace fracbvp
