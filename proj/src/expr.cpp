#include "grw/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>

namespace grw {
namespace {

struct Token {
  enum Kind { Number, Ident, Op, LParen, RParen, End } kind = End;
  double number = 0.0;
  std::string text;
  char op = 0;
  size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      size_t start = pos_;
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '.'))
        ++pos_;
      // exponent part: only when followed by digits (so "2e" is an error, and
      // an identifier like "exp" never merges into a number)
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        size_t ep = pos_ + 1;
        if (ep < src_.size() && (src_[ep] == '+' || src_[ep] == '-')) ++ep;
        if (ep < src_.size() && std::isdigit(static_cast<unsigned char>(src_[ep]))) {
          pos_ = ep;
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        }
      }
      std::string num(src_.substr(start, pos_ - start));
      char* end = nullptr;
      tok_.number = std::strtod(num.c_str(), &end);
      if (end == nullptr || *end != '\0')
        throw ParseError("malformed number '" + num + "'", start);
      tok_.kind = Token::Number;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (c == '(') {
      tok_.kind = Token::LParen;
      ++pos_;
      return;
    }
    if (c == ')') {
      tok_.kind = Token::RParen;
      ++pos_;
      return;
    }
    if (std::strchr("+-*/^", c) != nullptr) {
      tok_.kind = Token::Op;
      tok_.op = c;
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view src_;
  size_t pos_ = 0;
  Token tok_;
};

bool lookup_fn(const std::string& name, UnaryFn* fn) {
  if (name == "sin") *fn = UnaryFn::Sin;
  else if (name == "cos") *fn = UnaryFn::Cos;
  else if (name == "sinh") *fn = UnaryFn::Sinh;
  else if (name == "cosh") *fn = UnaryFn::Cosh;
  else if (name == "exp") *fn = UnaryFn::Exp;
  else if (name == "log") *fn = UnaryFn::Log;
  else if (name == "sqrt") *fn = UnaryFn::Sqrt;
  else return false;
  return true;
}

const char* fn_name(UnaryFn fn) {
  switch (fn) {
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Sinh: return "sinh";
    case UnaryFn::Cosh: return "cosh";
    case UnaryFn::Exp: return "exp";
    case UnaryFn::Log: return "log";
    case UnaryFn::Sqrt: return "sqrt";
    case UnaryFn::Neg: return "-";
  }
  return "?";
}

// Snap a parse-time constant to an exact small rational (continued fractions).
bool to_rational(double v, Rational* out, long long max_den = 64) {
  if (!std::isfinite(v)) return false;
  double x = v;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(x);
    if (fl > 4e18 || fl < -4e18) return false;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - v) <= 1e-12 * std::max(1.0, std::abs(v))) {
      out->num = p1;
      out->den = q1;
      return true;
    }
    double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string> vars) : lex_(text) {
    ast_.variables = std::move(vars);
  }

  ExprAst run() {
    ast_.root = parse_sum();
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input after expression", lex_.peek().offset);
    return std::move(ast_);
  }

 private:
  int add_node(ExprNode n) {
    ast_.nodes.push_back(n);
    return static_cast<int>(ast_.nodes.size() - 1);
  }

  int parse_sum() {
    int left = parse_product();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().op == '+' || lex_.peek().op == '-')) {
      Token t = lex_.take();
      int right = parse_product();
      ExprNode n;
      n.kind = NodeKind::Binary;
      n.op = t.op == '+' ? BinOp::Add : BinOp::Sub;
      n.offset = static_cast<uint32_t>(t.offset);
      n.a = left;
      n.b = right;
      left = add_node(n);
    }
    return left;
  }

  int parse_product() {
    int left = parse_unary();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().op == '*' || lex_.peek().op == '/')) {
      Token t = lex_.take();
      int right = parse_unary();
      ExprNode n;
      n.kind = NodeKind::Binary;
      n.op = t.op == '*' ? BinOp::Mul : BinOp::Div;
      n.offset = static_cast<uint32_t>(t.offset);
      n.a = left;
      n.b = right;
      left = add_node(n);
    }
    return left;
  }

  int parse_unary() {
    if (lex_.peek().kind == Token::Op && lex_.peek().op == '-') {
      Token t = lex_.take();
      int child = parse_unary();
      // Fold a negated literal into the constant so printing round-trips.
      if (ast_.nodes[child].kind == NodeKind::Constant) {
        ast_.nodes[child].value = -ast_.nodes[child].value;
        ast_.nodes[child].offset = static_cast<uint32_t>(t.offset);
        return child;
      }
      ExprNode n;
      n.kind = NodeKind::Unary;
      n.fn = UnaryFn::Neg;
      n.offset = static_cast<uint32_t>(t.offset);
      n.a = child;
      return add_node(n);
    }
    if (lex_.peek().kind == Token::Op && lex_.peek().op == '+') {
      lex_.take();  // unary plus is a no-op
      return parse_unary();
    }
    return parse_power();
  }

  int parse_power() {
    int base = parse_atom();
    if (lex_.peek().kind == Token::Op && lex_.peek().op == '^') {
      Token t = lex_.take();
      // right-associative; exponent may carry a unary minus
      int expo = parse_unary();
      ExprNode n;
      n.kind = NodeKind::Power;
      n.offset = static_cast<uint32_t>(t.offset);
      n.a = base;
      n.exponent = fold_exponent(expo, t.offset);
      return add_node(n);
    }
    return base;
  }

  Rational fold_exponent(int node, size_t op_offset) {
    double v;
    if (!subtree_constant(node, &v))
      throw ParseError("exponent must be a constant expression", op_offset);
    Rational r;
    if (!to_rational(v, &r))
      throw ParseError("exponent must be a small rational number", op_offset);
    return r;
  }

  bool subtree_constant(int idx, double* out) {
    const ExprNode& n = ast_.nodes[static_cast<size_t>(idx)];
    switch (n.kind) {
      case NodeKind::Constant:
        *out = n.value;
        return true;
      case NodeKind::Variable:
        return false;
      case NodeKind::Unary: {
        double c;
        if (!subtree_constant(n.a, &c)) return false;
        switch (n.fn) {
          case UnaryFn::Neg: *out = -c; break;
          case UnaryFn::Sin: *out = std::sin(c); break;
          case UnaryFn::Cos: *out = std::cos(c); break;
          case UnaryFn::Sinh: *out = std::sinh(c); break;
          case UnaryFn::Cosh: *out = std::cosh(c); break;
          case UnaryFn::Exp: *out = std::exp(c); break;
          case UnaryFn::Log: *out = std::log(c); break;
          case UnaryFn::Sqrt: *out = std::sqrt(c); break;
        }
        return true;
      }
      case NodeKind::Binary: {
        double l, r;
        if (!subtree_constant(n.a, &l) || !subtree_constant(n.b, &r)) return false;
        switch (n.op) {
          case BinOp::Add: *out = l + r; break;
          case BinOp::Sub: *out = l - r; break;
          case BinOp::Mul: *out = l * r; break;
          case BinOp::Div: *out = l / r; break;
        }
        return true;
      }
      case NodeKind::Power: {
        double b;
        if (!subtree_constant(n.a, &b)) return false;
        *out = pow_value(b, n.exponent.num, n.exponent.den);
        return true;
      }
    }
    return false;
  }

  int parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Number: {
        ExprNode n;
        n.kind = NodeKind::Constant;
        n.value = t.number;
        n.offset = static_cast<uint32_t>(t.offset);
        return add_node(n);
      }
      case Token::Ident: {
        UnaryFn fn;
        if (lookup_fn(t.text, &fn)) {
          if (lex_.peek().kind != Token::LParen)
            throw ParseError("function '" + t.text + "' needs a parenthesized argument",
                             lex_.peek().offset);
          lex_.take();
          int arg = parse_sum();
          if (lex_.peek().kind != Token::RParen)
            throw ParseError("missing ')'", lex_.peek().offset);
          lex_.take();
          ExprNode n;
          n.kind = NodeKind::Unary;
          n.fn = fn;
          n.offset = static_cast<uint32_t>(t.offset);
          n.a = arg;
          return add_node(n);
        }
        for (size_t i = 0; i < ast_.variables.size(); ++i) {
          if (ast_.variables[i] == t.text) {
            ExprNode n;
            n.kind = NodeKind::Variable;
            n.var = static_cast<int>(i);
            n.offset = static_cast<uint32_t>(t.offset);
            return add_node(n);
          }
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.offset);
      }
      case Token::LParen: {
        int inner = parse_sum();
        if (lex_.peek().kind != Token::RParen)
          throw ParseError("missing ')'", lex_.peek().offset);
        lex_.take();
        return inner;
      }
      case Token::Op:
        throw ParseError(std::string("unexpected operator '") + t.op + "'", t.offset);
      case Token::RParen:
        throw ParseError("unexpected ')'", t.offset);
      case Token::End:
        throw ParseError("unexpected end of expression", t.offset);
    }
    throw ParseError("unexpected token", t.offset);
  }

  Lexer lex_;
  ExprAst ast_;
};

}  // namespace

ExprAst parse_expr(std::string_view text, std::vector<std::string> variables) {
  return Parser(text, std::move(variables)).run();
}

double eval_scalar(const ExprAst& ast, std::span<const double> env) {
  std::function<double(int)> ev = [&](int idx) -> double {
    const ExprNode& n = ast.nodes[static_cast<size_t>(idx)];
    switch (n.kind) {
      case NodeKind::Constant:
        return n.value;
      case NodeKind::Variable:
        if (n.var < 0 || static_cast<size_t>(n.var) >= env.size())
          throw EvalError("variable index outside environment", n.offset);
        return env[static_cast<size_t>(n.var)];
      case NodeKind::Unary: {
        double c = ev(n.a);
        switch (n.fn) {
          case UnaryFn::Neg: return -c;
          case UnaryFn::Sin: return std::sin(c);
          case UnaryFn::Cos: return std::cos(c);
          case UnaryFn::Sinh: return std::sinh(c);
          case UnaryFn::Cosh: return std::cosh(c);
          case UnaryFn::Exp: return std::exp(c);
          case UnaryFn::Log:
            if (c <= 0.0) throw EvalError("log of non-positive value", n.offset);
            return std::log(c);
          case UnaryFn::Sqrt:
            if (c < 0.0) throw EvalError("sqrt of negative value", n.offset);
            return std::sqrt(c);
        }
        throw EvalError("bad unary function", n.offset);
      }
      case NodeKind::Binary: {
        double l = ev(n.a), r = ev(n.b);
        switch (n.op) {
          case BinOp::Add: return l + r;
          case BinOp::Sub: return l - r;
          case BinOp::Mul: return l * r;
          case BinOp::Div:
            if (r == 0.0) throw EvalError("division by zero", n.offset);
            return l / r;
        }
        throw EvalError("bad binary operator", n.offset);
      }
      case NodeKind::Power: {
        double b = ev(n.a);
        const Rational& k = n.exponent;
        if (k.den == 1) {
          if (b == 0.0 && k.num < 0) throw EvalError("zero base, negative exponent", n.offset);
          return pow_value(b, k.num, k.den);
        }
        if (k.den == 2) {
          if (b < 0.0) throw EvalError("fractional power of negative value", n.offset);
          return pow_value(b, k.num, k.den);
        }
        if (b <= 0.0) throw EvalError("fractional power needs a positive base", n.offset);
        return pow_value(b, k.num, k.den);
      }
    }
    throw EvalError("bad node", n.offset);
  };
  if (ast.root < 0) throw EvalError("empty expression", 0);
  return ev(ast.root);
}

Jet3 eval_jet(const ExprAst& ast, std::span<const Jet3> env) {
  std::function<Jet3(int)> ev = [&](int idx) -> Jet3 {
    const ExprNode& n = ast.nodes[static_cast<size_t>(idx)];
    try {
      switch (n.kind) {
        case NodeKind::Constant:
          return jet_const(n.value);
        case NodeKind::Variable:
          if (n.var < 0 || static_cast<size_t>(n.var) >= env.size())
            throw EvalError("variable index outside environment", n.offset);
          return env[static_cast<size_t>(n.var)];
        case NodeKind::Unary: {
          Jet3 c = ev(n.a);
          switch (n.fn) {
            case UnaryFn::Neg: return -c;
            case UnaryFn::Sin: return jet_sin(c);
            case UnaryFn::Cos: return jet_cos(c);
            case UnaryFn::Sinh: return jet_sinh(c);
            case UnaryFn::Cosh: return jet_cosh(c);
            case UnaryFn::Exp: return jet_exp(c);
            case UnaryFn::Log: return jet_log(c);
            case UnaryFn::Sqrt: return jet_sqrt(c);
          }
          throw EvalError("bad unary function", n.offset);
        }
        case NodeKind::Binary: {
          Jet3 l = ev(n.a), r = ev(n.b);
          switch (n.op) {
            case BinOp::Add: return l + r;
            case BinOp::Sub: return l - r;
            case BinOp::Mul: return l * r;
            case BinOp::Div: return l / r;
          }
          throw EvalError("bad binary operator", n.offset);
        }
        case NodeKind::Power: {
          Jet3 b = ev(n.a);
          return jet_pow(b, n.exponent.num, n.exponent.den);
        }
      }
    } catch (const JetError& e) {
      throw EvalError(e.what(), n.offset);
    }
    throw EvalError("bad node", n.offset);
  };
  if (ast.root < 0) throw EvalError("empty expression", 0);
  return ev(ast.root);
}

namespace {

int node_prec(const ExprAst& ast, int idx) {
  const ExprNode& n = ast.nodes[static_cast<size_t>(idx)];
  switch (n.kind) {
    case NodeKind::Constant:
      return n.value < 0.0 ? 3 : 5;  // negative literals print with a sign
    case NodeKind::Variable:
      return 5;
    case NodeKind::Unary:
      return n.fn == UnaryFn::Neg ? 3 : 5;  // function calls are atoms
    case NodeKind::Binary:
      return (n.op == BinOp::Add || n.op == BinOp::Sub) ? 1 : 2;
    case NodeKind::Power:
      return 4;
  }
  return 5;
}

void print_node(const ExprAst& ast, int idx, int ctx, std::string* out) {
  const ExprNode& n = ast.nodes[static_cast<size_t>(idx)];
  const int prec = node_prec(ast, idx);
  const bool parens = prec < ctx;
  if (parens) out->push_back('(');
  switch (n.kind) {
    case NodeKind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      *out += buf;
      break;
    }
    case NodeKind::Variable:
      *out += ast.variables[static_cast<size_t>(n.var)];
      break;
    case NodeKind::Unary:
      if (n.fn == UnaryFn::Neg) {
        out->push_back('-');
        print_node(ast, n.a, 4, out);
      } else {
        *out += fn_name(n.fn);
        out->push_back('(');
        print_node(ast, n.a, 0, out);
        out->push_back(')');
      }
      break;
    case NodeKind::Binary: {
      const char opch = n.op == BinOp::Add ? '+' : n.op == BinOp::Sub ? '-'
                        : n.op == BinOp::Mul ? '*' : '/';
      print_node(ast, n.a, prec, out);
      out->push_back(opch);
      print_node(ast, n.b, prec + 1, out);
      break;
    }
    case NodeKind::Power: {
      print_node(ast, n.a, 5, out);
      out->push_back('^');
      const Rational& k = n.exponent;
      char buf[64];
      if (k.den == 1 && k.num >= 0)
        std::snprintf(buf, sizeof buf, "%lld", k.num);
      else if (k.den == 1)
        std::snprintf(buf, sizeof buf, "(%lld)", k.num);
      else
        std::snprintf(buf, sizeof buf, "(%lld/%lld)", k.num, k.den);
      *out += buf;
      break;
    }
  }
  if (parens) out->push_back(')');
}

bool nodes_equal(const ExprAst& x, int i, const ExprAst& y, int j) {
  const ExprNode& a = x.nodes[static_cast<size_t>(i)];
  const ExprNode& b = y.nodes[static_cast<size_t>(j)];
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant:
      return a.value == b.value;
    case NodeKind::Variable:
      return a.var == b.var;
    case NodeKind::Unary:
      return a.fn == b.fn && nodes_equal(x, a.a, y, b.a);
    case NodeKind::Binary:
      return a.op == b.op && nodes_equal(x, a.a, y, b.a) && nodes_equal(x, a.b, y, b.b);
    case NodeKind::Power:
      return a.exponent == b.exponent && nodes_equal(x, a.a, y, b.a);
  }
  return false;
}

}  // namespace

std::string print_expr(const ExprAst& ast) {
  std::string out;
  if (ast.root >= 0) print_node(ast, ast.root, 0, &out);
  return out;
}

bool expr_is_constant(const ExprAst& ast, double* value) {
  for (const ExprNode& n : ast.nodes)
    if (n.kind == NodeKind::Variable) return false;
  if (value != nullptr) *value = eval_scalar(ast, {});
  return true;
}

bool expr_equal(const ExprAst& a, const ExprAst& b) {
  if (a.variables != b.variables) return false;
  if ((a.root < 0) != (b.root < 0)) return false;
  if (a.root < 0) return true;
  return nodes_equal(a, a.root, b, b.root);
}

}  // namespace grw
