// mhdpol - expression parser and dual-number evaluation

#include "mhdpol/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "mhdpol/errors.hpp"

namespace mhdpol {

Dual operator+(const Dual& a, const Dual& b) {
  Dual r{a.v + b.v, {}};
  for (int i = 0; i < 4; i++) r.d[i] = a.d[i] + b.d[i];
  return r;
}

Dual operator-(const Dual& a, const Dual& b) {
  Dual r{a.v - b.v, {}};
  for (int i = 0; i < 4; i++) r.d[i] = a.d[i] - b.d[i];
  return r;
}

Dual operator-(const Dual& a) {
  Dual r{-a.v, {}};
  for (int i = 0; i < 4; i++) r.d[i] = -a.d[i];
  return r;
}

Dual operator*(const Dual& a, const Dual& b) {
  Dual r{a.v * b.v, {}};
  for (int i = 0; i < 4; i++) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

Dual operator/(const Dual& a, const Dual& b) {
  if (b.v == 0.0) throw DomainError("division by zero");
  Dual r{a.v / b.v, {}};
  for (int i = 0; i < 4; i++) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  return r;
}

namespace {

Dual chain(double fv, double dfv, const Dual& a) {
  Dual r{fv, {}};
  for (int i = 0; i < 4; i++) r.d[i] = dfv * a.d[i];
  return r;
}

}  // namespace

enum class NodeKind { Literal, Variable, Add, Sub, Mul, Div, Pow, Neg, Func };
enum class FuncKind { Sin, Cos, Exp, Sqrt, Tanh, Abs };

struct Expr::Node {
  NodeKind kind;
  double literal = 0.0;
  int var_slot = 0;  // 0:t 1:x1 2:x2 3:x3
  FuncKind func = FuncKind::Sin;
  NodePtr lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

NodePtr make_literal(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Literal;
  n->literal = v;
  return n;
}

NodePtr make_var(int slot) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->var_slot = slot;
  return n;
}

NodePtr make_unary(NodeKind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_func(FuncKind f, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Func;
  n->func = f;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

Dual eval_node(const Node& n, double t, const Vec3& x) {
  switch (n.kind) {
    case NodeKind::Literal:
      return Dual::constant(n.literal);
    case NodeKind::Variable:
      return n.var_slot == 0 ? Dual::variable(t, 0)
                             : Dual::variable(x[n.var_slot - 1],
                                              n.var_slot);
    case NodeKind::Add:
      return eval_node(*n.lhs, t, x) + eval_node(*n.rhs, t, x);
    case NodeKind::Sub:
      return eval_node(*n.lhs, t, x) - eval_node(*n.rhs, t, x);
    case NodeKind::Mul:
      return eval_node(*n.lhs, t, x) * eval_node(*n.rhs, t, x);
    case NodeKind::Div:
      return eval_node(*n.lhs, t, x) / eval_node(*n.rhs, t, x);
    case NodeKind::Neg:
      return -eval_node(*n.lhs, t, x);
    case NodeKind::Pow: {
      const Dual a = eval_node(*n.lhs, t, x);
      const Dual b = eval_node(*n.rhs, t, x);
      const bool b_const = b.d[0] == 0 && b.d[1] == 0 && b.d[2] == 0 && b.d[3] == 0;
      const bool b_int = b_const && b.v == std::floor(b.v) && std::abs(b.v) <= 1024.0;
      if (b_int) {
        // d(a^k) = k a^(k-1) da, valid for negative bases at integer exponents.
        const double k = b.v;
        if (a.v == 0.0 && k < 0.0) throw DomainError("zero raised to a negative power");
        const double fv = std::pow(a.v, k);
        const double dfv = (k == 0.0) ? 0.0 : k * std::pow(a.v, k - 1.0);
        return chain(fv, dfv, a);
      }
      if (a.v <= 0.0) throw DomainError("non-integer power of a non-positive base");
      const double fv = std::pow(a.v, b.v);
      Dual r{fv, {}};
      const double lna = std::log(a.v);
      for (int i = 0; i < 4; i++)
        r.d[i] = fv * (b.d[i] * lna + b.v * a.d[i] / a.v);
      return r;
    }
    case NodeKind::Func: {
      const Dual a = eval_node(*n.lhs, t, x);
      switch (n.func) {
        case FuncKind::Sin:
          return chain(std::sin(a.v), std::cos(a.v), a);
        case FuncKind::Cos:
          return chain(std::cos(a.v), -std::sin(a.v), a);
        case FuncKind::Exp: {
          const double e = std::exp(a.v);
          return chain(e, e, a);
        }
        case FuncKind::Sqrt: {
          if (a.v < 0.0) throw DomainError("sqrt of a negative value");
          if (a.v == 0.0) {
            bool flat = true;
            for (int i = 0; i < 4; i++) flat = flat && a.d[i] == 0.0;
            if (!flat) throw DomainError("sqrt derivative singular at zero");
            return Dual::constant(0.0);
          }
          const double s = std::sqrt(a.v);
          return chain(s, 0.5 / s, a);
        }
        case FuncKind::Tanh: {
          const double th = std::tanh(a.v);
          return chain(th, 1.0 - th * th, a);
        }
        case FuncKind::Abs:
          return chain(std::abs(a.v), a.v > 0 ? 1.0 : (a.v < 0 ? -1.0 : 0.0), a);
      }
      throw DomainError("unreachable function kind");
    }
  }
  throw DomainError("unreachable node kind");
}

void print_node(const Node& n, std::string& out) {
  static const char* fname[] = {"sin", "cos", "exp", "sqrt", "tanh", "abs"};
  switch (n.kind) {
    case NodeKind::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.literal);
      out += buf;
      return;
    }
    case NodeKind::Variable: {
      static const char* vn[] = {"t", "x1", "x2", "x3"};
      out += vn[n.var_slot];
      return;
    }
    case NodeKind::Neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ")";
      return;
    case NodeKind::Func:
      out += fname[static_cast<int>(n.func)];
      out += "(";
      print_node(*n.lhs, out);
      out += ")";
      return;
    default: {
      static const char op[] = {'+', '-', '*', '/', '^'};
      out += "(";
      print_node(*n.lhs, out);
      out += op[static_cast<int>(n.kind) - static_cast<int>(NodeKind::Add)];
      print_node(*n.rhs, out);
      out += ")";
      return;
    }
  }
}

// --------------------------------------------------------------------------
// Recursive-descent parser.

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  double number = 0.0;
  std::string ident;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) pos_++;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[end])) ||
                                   src_[end] == '.'))
        end++;
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) e++;
        if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
          e++;
          while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) e++;
          end = e;
        }
      }
      tok_.kind = Tok::Number;
      tok_.number = std::stod(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                                   src_[end] == '_'))
        end++;
      tok_.kind = Tok::Ident;
      tok_.ident = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    pos_++;
    switch (c) {
      case '+': tok_.kind = Tok::Plus; return;
      case '-': tok_.kind = Tok::Minus; return;
      case '*': tok_.kind = Tok::Star; return;
      case '/': tok_.kind = Tok::Slash; return;
      case '^': tok_.kind = Tok::Caret; return;
      case '(': tok_.kind = Tok::LParen; return;
      case ')': tok_.kind = Tok::RParen; return;
      default:
        throw SyntaxError(pos_ - 1, {"number", "identifier", "operator", "(", ")"},
                          std::string("unexpected character '") + c + "' at offset " +
                              std::to_string(pos_ - 1));
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  NodePtr parse() {
    NodePtr e = expr();
    if (lex_.peek().kind != Tok::End)
      throw SyntaxError(lex_.peek().offset, {"operator", "end of input"},
                        "trailing input at offset " + std::to_string(lex_.peek().offset));
    return e;
  }

 private:
  // expr := term (('+'|'-') term)*
  NodePtr expr() {
    NodePtr lhs = term();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      const Tok op = lex_.take().kind;
      lhs = make_binary(op == Tok::Plus ? NodeKind::Add : NodeKind::Sub, lhs, term());
    }
    return lhs;
  }

  // term := power (('*'|'/') power)*
  NodePtr term() {
    NodePtr lhs = power();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      const Tok op = lex_.take().kind;
      lhs = make_binary(op == Tok::Star ? NodeKind::Mul : NodeKind::Div, lhs, power());
    }
    return lhs;
  }

  // power := signed_atom ('^' power)?   -- right associative; the unary minus
  // in signed_atom binds to the base, so "-x1^2" parses as "(-x1)^2".
  NodePtr power() {
    NodePtr base = signed_atom();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      return make_binary(NodeKind::Pow, base, power());
    }
    return base;
  }

  // signed_atom := '-' signed_atom | atom
  NodePtr signed_atom() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return make_unary(NodeKind::Neg, signed_atom());
    }
    return atom();
  }

  NodePtr atom() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        lex_.take();
        return make_literal(t.number);
      case Tok::LParen: {
        lex_.take();
        NodePtr e = expr();
        expect(Tok::RParen, ")");
        return e;
      }
      case Tok::Ident: {
        lex_.take();
        if (lex_.peek().kind == Tok::LParen) {
          FuncKind f;
          if (t.ident == "sin") f = FuncKind::Sin;
          else if (t.ident == "cos") f = FuncKind::Cos;
          else if (t.ident == "exp") f = FuncKind::Exp;
          else if (t.ident == "sqrt") f = FuncKind::Sqrt;
          else if (t.ident == "tanh") f = FuncKind::Tanh;
          else if (t.ident == "abs") f = FuncKind::Abs;
          else throw UnknownIdentifier(t.offset, t.ident);
          lex_.take();
          NodePtr arg = expr();
          expect(Tok::RParen, ")");
          return make_func(f, arg);
        }
        if (t.ident == "t") return make_var(0);
        if (t.ident == "x1") return make_var(1);
        if (t.ident == "x2") return make_var(2);
        if (t.ident == "x3") return make_var(3);
        throw UnknownIdentifier(t.offset, t.ident);
      }
      default:
        throw SyntaxError(t.offset, {"number", "identifier", "(", "-"},
                          "expected an operand at offset " + std::to_string(t.offset));
    }
  }

  void expect(Tok k, const char* what) {
    if (lex_.peek().kind != k)
      throw SyntaxError(lex_.peek().offset, {what},
                        std::string("expected '") + what + "' at offset " +
                            std::to_string(lex_.peek().offset));
    lex_.take();
  }

  Lexer lex_;
};

}  // namespace

Dual Expr::eval(double t, const Vec3& x) const {
  if (!root_) throw DomainError("evaluating an empty expression");
  const Dual r = eval_node(*root_, t, x);
  bool finite = std::isfinite(r.v);
  for (int i = 0; i < 4; i++) finite = finite && std::isfinite(r.d[i]);
  if (!finite) throw DomainError("expression evaluated to a non-finite value");
  return r;
}

std::string Expr::to_string() const {
  if (!root_) return "";
  std::string s;
  print_node(*root_, s);
  return s;
}

Expr parse_expr(const std::string& source) { return Expr(Parser(source).parse()); }

Expr constant_expr(double c) { return Expr(make_literal(c)); }

}  // namespace mhdpol
