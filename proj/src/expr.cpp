#include "fracbvp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "fracbvp/gamma.hpp"

namespace fracbvp {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

enum class NodeTag { Number, Constant, Variable, Negate, Binary, Call };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Exp, Atan, Abs, Sqrt, Gammaf };

struct ExprNode {
    NodeTag tag;
    double number = 0.0;            // Number
    char constant = 0;              // Constant: 'p' for pi, 'e'
    Var var = Var::T;               // Variable
    BinOp op = BinOp::Add;          // Binary
    Func func = Func::Sin;          // Call
    std::shared_ptr<const ExprNode> lhs; // Binary left / Negate / Call argument
    std::shared_ptr<const ExprNode> rhs; // Binary right
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->tag = NodeTag::Number;
    n->number = v;
    return n;
}

NodePtr make_constant(char c) {
    auto n = std::make_shared<ExprNode>();
    n->tag = NodeTag::Constant;
    n->constant = c;
    return n;
}

NodePtr make_variable(Var v) {
    auto n = std::make_shared<ExprNode>();
    n->tag = NodeTag::Variable;
    n->var = v;
    return n;
}

NodePtr make_negate(NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->tag = NodeTag::Negate;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_binary(BinOp op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->tag = NodeTag::Binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_call(Func f, NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->tag = NodeTag::Call;
    n->func = f;
    n->lhs = std::move(a);
    return n;
}

bool node_is_constant(const ExprNode& n) {
    switch (n.tag) {
        case NodeTag::Number:
        case NodeTag::Constant: return true;
        case NodeTag::Variable: return false;
        case NodeTag::Negate:
        case NodeTag::Call: return node_is_constant(*n.lhs);
        case NodeTag::Binary: return node_is_constant(*n.lhs) && node_is_constant(*n.rhs);
    }
    return false;
}

bool node_uses(const ExprNode& n, Var v) {
    switch (n.tag) {
        case NodeTag::Number:
        case NodeTag::Constant: return false;
        case NodeTag::Variable: return n.var == v;
        case NodeTag::Negate:
        case NodeTag::Call: return node_uses(*n.lhs, v);
        case NodeTag::Binary: return node_uses(*n.lhs, v) || node_uses(*n.rhs, v);
    }
    return false;
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Atan: return "atan";
        case Func::Abs: return "abs";
        case Func::Sqrt: return "sqrt";
        case Func::Gammaf: return "gammaf";
    }
    return "?";
}

double node_eval(const ExprNode& n, const Bindings& b) {
    double v = 0.0;
    switch (n.tag) {
        case NodeTag::Number: v = n.number; break;
        case NodeTag::Constant: v = n.constant == 'p' ? M_PI : M_E; break;
        case NodeTag::Variable: {
            const std::optional<double>* slot = nullptr;
            const char* name = "";
            switch (n.var) {
                case Var::T: slot = &b.t; name = "t"; break;
                case Var::X: slot = &b.x; name = "x"; break;
                case Var::Y: slot = &b.y; name = "y"; break;
            }
            if (!slot->has_value())
                throw EvalError(std::string("unbound variable ") + name);
            v = **slot;
            break;
        }
        case NodeTag::Negate: v = -node_eval(*n.lhs, b); break;
        case NodeTag::Binary: {
            const double a = node_eval(*n.lhs, b);
            const double c = node_eval(*n.rhs, b);
            switch (n.op) {
                case BinOp::Add: v = a + c; break;
                case BinOp::Sub: v = a - c; break;
                case BinOp::Mul: v = a * c; break;
                case BinOp::Div: v = a / c; break;
                case BinOp::Pow: v = std::pow(a, c); break;
            }
            break;
        }
        case NodeTag::Call: {
            const double a = node_eval(*n.lhs, b);
            switch (n.func) {
                case Func::Sin: v = std::sin(a); break;
                case Func::Cos: v = std::cos(a); break;
                case Func::Exp: v = std::exp(a); break;
                case Func::Atan: v = std::atan(a); break;
                case Func::Abs: v = std::fabs(a); break;
                case Func::Sqrt: v = std::sqrt(a); break;
                case Func::Gammaf:
                    if (!(a > 0.0)) throw EvalError("gammaf requires a positive argument");
                    v = gamma_fn(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite value while evaluating subexpression";
        throw EvalError(msg.str());
    }
    return v;
}

int precedence(const ExprNode& n) {
    switch (n.tag) {
        case NodeTag::Binary:
            switch (n.op) {
                case BinOp::Add:
                case BinOp::Sub: return 1;
                case BinOp::Mul:
                case BinOp::Div: return 2;
                case BinOp::Pow: return 4;
            }
            return 1;
        case NodeTag::Negate: return 3;
        default: return 5;
    }
}

void node_print(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int parent_prec, bool needs_higher,
                 std::string& out) {
    const int cp = precedence(child);
    const bool parens = needs_higher ? cp <= parent_prec : cp < parent_prec;
    if (parens) out += '(';
    node_print(child, out);
    if (parens) out += ')';
}

void node_print(const ExprNode& n, std::string& out) {
    switch (n.tag) {
        case NodeTag::Number: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", n.number);
            out += buf;
            break;
        }
        case NodeTag::Constant: out += n.constant == 'p' ? "pi" : "e"; break;
        case NodeTag::Variable:
            out += n.var == Var::T ? 't' : n.var == Var::X ? 'x' : 'y';
            break;
        case NodeTag::Negate:
            out += '-';
            print_child(*n.lhs, precedence(n), false, out);
            break;
        case NodeTag::Binary: {
            const int p = precedence(n);
            const char* op = nullptr;
            switch (n.op) {
                case BinOp::Add: op = " + "; break;
                case BinOp::Sub: op = " - "; break;
                case BinOp::Mul: op = "*"; break;
                case BinOp::Div: op = "/"; break;
                case BinOp::Pow: op = "^"; break;
            }
            // left operand needs strictly higher precedence for the
            // right-associative ^, the right operand needs it for the rest
            print_child(*n.lhs, p, n.op == BinOp::Pow, out);
            out += op;
            print_child(*n.rhs, p, n.op != BinOp::Pow, out);
            break;
        }
        case NodeTag::Call:
            out += func_name(n.func);
            out += '(';
            node_print(*n.lhs, out);
            out += ')';
            break;
    }
}

bool node_equal(const ExprNode& a, const ExprNode& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
        case NodeTag::Number: return a.number == b.number;
        case NodeTag::Constant: return a.constant == b.constant;
        case NodeTag::Variable: return a.var == b.var;
        case NodeTag::Negate: return node_equal(*a.lhs, *b.lhs);
        case NodeTag::Binary:
            return a.op == b.op && node_equal(*a.lhs, *b.lhs) && node_equal(*a.rhs, *b.rhs);
        case NodeTag::Call: return a.func == b.func && node_equal(*a.lhs, *b.lhs);
    }
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

private:
    NodePtr expression() {
        NodePtr left = term();
        for (;;) {
            skip_ws();
            if (consume('+')) left = make_binary(BinOp::Add, left, term());
            else if (consume('-')) left = make_binary(BinOp::Sub, left, term());
            else return left;
        }
    }

    NodePtr term() {
        NodePtr left = unary();
        for (;;) {
            skip_ws();
            if (consume('*')) left = make_binary(BinOp::Mul, left, unary());
            else if (consume('/')) left = make_binary(BinOp::Div, left, unary());
            else return left;
        }
    }

    NodePtr unary() {
        skip_ws();
        if (consume('-')) return make_negate(unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        skip_ws();
        if (consume('^')) {
            const std::size_t exp_pos = position();
            NodePtr exponent = unary(); // right-associative
            if (!node_is_constant(*exponent))
                throw ParseError(exp_pos, "exponent must be a constant expression");
            return make_binary(BinOp::Pow, base, exponent);
        }
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError(pos_, "expected expression");
        const char c = text_[pos_];
        if (consume('(')) {
            NodePtr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return identifier();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc())
            throw ParseError(pos_, "malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make_number(value);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "pi") return make_constant('p');
        if (name == "e") return make_constant('e');
        if (name == "t") return make_variable(Var::T);
        if (name == "x") return make_variable(Var::X);
        if (name == "y") return make_variable(Var::Y);

        Func f;
        if (name == "sin") f = Func::Sin;
        else if (name == "cos") f = Func::Cos;
        else if (name == "exp") f = Func::Exp;
        else if (name == "atan") f = Func::Atan;
        else if (name == "abs") f = Func::Abs;
        else if (name == "sqrt") f = Func::Sqrt;
        else if (name == "gammaf") f = Func::Gammaf;
        else throw ParseError(start, "unknown identifier '" + name + "'");

        skip_ws();
        expect('(');
        const std::size_t arg_pos = position();
        NodePtr arg = expression();
        expect(')');
        if (f == Func::Gammaf && !node_is_constant(*arg))
            throw ParseError(arg_pos, "gammaf requires a constant argument");
        return make_call(f, arg);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::size_t position() {
        skip_ws();
        return pos_;
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!consume(c))
            throw ParseError(pos_, std::string("expected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ExprAst::ExprAst(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

double ExprAst::eval(const Bindings& b) const { return node_eval(*root_, b); }

std::string ExprAst::print() const {
    std::string out;
    node_print(*root_, out);
    return out;
}

bool ExprAst::uses(Var v) const { return node_uses(*root_, v); }

bool ExprAst::is_constant() const { return node_is_constant(*root_); }

bool operator==(const ExprAst& a, const ExprAst& b) {
    return node_equal(*a.root_, *b.root_);
}

ExprAst parse_expr(std::string_view text) {
    return ExprAst(Parser(text).parse());
}

double eval_expr(const ExprAst& ast, double t, double x, double y) {
    Bindings b;
    b.t = t;
    b.x = x;
    b.y = y;
    return ast.eval(b);
}

} // namespace fracbvp
