#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivs/geometry.hpp"

namespace ivs {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression tree over x1..xn, constants, + - * /, unary minus, integer
// powers, and sin/cos/exp/tanh/ln.
struct Expr {
    enum class Kind { Number, Var, Add, Sub, Mul, Div, Neg, Pow, Func };
    enum class Fn { Sin, Cos, Exp, Tanh, Ln };

    Kind kind = Kind::Number;
    double number = 0.0;  // Number
    int var = 0;          // Var, 1-based
    int exponent = 0;     // Pow
    Fn fn = Fn::Sin;      // Func
    ExprPtr lhs, rhs;
};

// A parsed map f: R^n -> R^n, immutable and cheap to copy.
struct MapSpec {
    int n = 0;
    std::vector<ExprPtr> components;
    std::string name = "anonymous";
    bool has_partial_ops = false;  // contains division or ln
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, int line, int column);
    int line;
    int column;
};

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

// Parses the map grammar:
//   map    := "n" "=" int ";" line*
//   line   := "f" int "=" expr ";"
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | atom ("^" int)*
//   atom   := number | "x" int | func "(" expr ")" | "(" expr ")"
//   func   := sin | cos | exp | tanh | ln
MapSpec parse_map(const std::string& source, const std::string& name = "anonymous");

// Canonical printer; parse(print(parse(s))) == parse(s).
std::string print_expr(const Expr& e);
std::string print_map(const MapSpec& m);

// f(x). Throws EvalError on ln of a non-positive value or division by zero,
// naming the offending subexpression.
Vec eval(const MapSpec& m, const Vec& x);

// Df(x) by forward-mode dual numbers, one pass per input coordinate.
Mat jacobian(const MapSpec& m, const Vec& x);

// Gradient of g(x) = <f(x), v>, differentiated directly through the dual
// pass (equals Df(x)^T v up to association order).
Vec directional_gradient(const MapSpec& m, const Vec& x, const Vec& v);

double jacobian_det(const MapSpec& m, const Vec& x);

// Built-in corpus: identity, linear 2I, exp-polar, slab, rotation, shear.
const std::vector<MapSpec>& corpus();
const MapSpec& corpus_map(const std::string& name);

}  // namespace ivs
