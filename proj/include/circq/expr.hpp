#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "circq/jet.hpp"
#include "circq/types.hpp"

namespace circq::expr {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Func };

enum class Func { Sin, Cos, Exp, Log, Sqrt };

const char* func_name(Func f) noexcept;

/// Immutable expression tree node. Children are shared, so subtrees may be
/// reused freely between fields.
struct Node {
    NodeKind kind;
    double constant = 0.0;  // Constant
    int variable = 0;       // Variable: 0-based index of x1..x4
    int exponent = 0;       // Pow
    Func func = Func::Sin;  // Func
    std::shared_ptr<const Node> lhs{};  // unary operand or left child
    std::shared_ptr<const Node> rhs{};
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_constant(double v);
NodePtr make_variable(int index);
NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
NodePtr make_pow(NodePtr base, int exponent);
NodePtr make_neg(NodePtr operand);
NodePtr make_func(Func f, NodePtr arg);

bool structurally_equal(const Node& a, const Node& b) noexcept;

/// Minimal-parenthesis rendering that parses back to the same tree.
std::string print(const Node& n);

/// A scalar field on R^4 given by an expression in x1..x4.
class ScalarField {
public:
    ScalarField(NodePtr root, std::string source);

    const Node& root() const noexcept { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }
    const std::string& source() const noexcept { return source_; }

    std::string print() const { return expr::print(*root_); }

    /// Value, gradient and Hessian at `p`. Throws DomainError naming the
    /// offending subexpression when p leaves the expression's domain.
    FieldJet eval_jet(const Point& p) const;

    double eval(const Point& p) const { return eval_jet(p).value; }

private:
    NodePtr root_;
    std::string source_;
};

/// Recursive-descent parser for
///   expr   := term { ("+"|"-") term }
///   term   := factor { ("*"|"/") factor }
///   factor := ["-"] base [ "^" integer ]
///   base   := number | "x1".."x4" | func "(" expr ")" | "(" expr ")"
/// Throws ParseError with the byte offset of the first problem.
ScalarField parse(std::string_view source);

}  // namespace circq::expr

namespace circq {
using expr::ScalarField;
}
