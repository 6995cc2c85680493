#pragma once
// Small scalar expression language over named variables: +, -, *, /, ^ with
// rational exponents, and the elementary functions sin, cos, sinh, cosh, exp,
// log, sqrt. Expressions evaluate over plain doubles and over Jet3, with the
// guarantee that the jet value slot is bit-identical to the scalar evaluation
// at the same point.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grw/jet.hpp"

namespace grw {

struct ParseError : std::runtime_error {
  size_t offset;  // byte offset into the source text
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct EvalError : std::runtime_error {
  size_t offset;  // byte offset of the offending node in the source text
  EvalError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (expression byte " + std::to_string(off) + ")"),
        offset(off) {}
};

struct Rational {
  long long num = 0;
  long long den = 1;
  bool operator==(const Rational&) const = default;
};

enum class NodeKind : uint8_t { Constant, Variable, Unary, Binary, Power };
enum class UnaryFn : uint8_t { Neg, Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt };
enum class BinOp : uint8_t { Add, Sub, Mul, Div };

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  uint32_t offset = 0;
  double value = 0.0;  // Constant
  int var = -1;        // Variable: index into ExprAst::variables
  UnaryFn fn = UnaryFn::Neg;
  BinOp op = BinOp::Add;
  int a = -1, b = -1;  // children
  Rational exponent;   // Power
};

struct ExprAst {
  std::vector<ExprNode> nodes;
  int root = -1;
  std::vector<std::string> variables;  // declaration order == environment order
};

// Parses `text` over the given variable names. Unknown identifiers (that are
// not function names) and malformed syntax raise ParseError with the byte
// offset of the problem.
ExprAst parse_expr(std::string_view text, std::vector<std::string> variables);

// env is indexed by the variable order declared at parse time.
double eval_scalar(const ExprAst& ast, std::span<const double> env);
Jet3 eval_jet(const ExprAst& ast, std::span<const Jet3> env);

// Precedence-aware printer; parse(print(ast)) reproduces the tree.
std::string print_expr(const ExprAst& ast);

// True if the expression contains no variables; *value receives its value.
bool expr_is_constant(const ExprAst& ast, double* value = nullptr);

// Structural equality (used by round-trip tests).
bool expr_equal(const ExprAst& a, const ExprAst& b);

}  // namespace grw
