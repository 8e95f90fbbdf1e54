#include "dtwist/expr.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace dtwist {

// ---------------------------------------------------------------------------
// Jet2 arithmetic (forward-mode, second order)
// ---------------------------------------------------------------------------

Jet2 jet_constant(double c) { return {c, 0.0, 0.0, 0.0, 0.0, 0.0}; }
Jet2 jet_x(double x) { return {x, 1.0, 0.0, 0.0, 0.0, 0.0}; }
Jet2 jet_y(double y) { return {y, 0.0, 1.0, 0.0, 0.0, 0.0}; }

Jet2 operator-(const Jet2& p) {
  return {-p.v, -p.dx, -p.dy, -p.dxx, -p.dxy, -p.dyy};
}

Jet2 operator+(const Jet2& p, const Jet2& q) {
  return {p.v + q.v,   p.dx + q.dx,   p.dy + q.dy,
          p.dxx + q.dxx, p.dxy + q.dxy, p.dyy + q.dyy};
}

Jet2 operator-(const Jet2& p, const Jet2& q) {
  return {p.v - q.v,   p.dx - q.dx,   p.dy - q.dy,
          p.dxx - q.dxx, p.dxy - q.dxy, p.dyy - q.dyy};
}

Jet2 operator*(const Jet2& p, const Jet2& q) {
  Jet2 r;
  r.v = p.v * q.v;
  r.dx = p.dx * q.v + p.v * q.dx;
  r.dy = p.dy * q.v + p.v * q.dy;
  r.dxx = p.dxx * q.v + 2.0 * p.dx * q.dx + p.v * q.dxx;
  r.dxy = p.dxy * q.v + p.dx * q.dy + p.dy * q.dx + p.v * q.dxy;
  r.dyy = p.dyy * q.v + 2.0 * p.dy * q.dy + p.v * q.dyy;
  return r;
}

Jet2 operator*(double c, const Jet2& q) { return jet_constant(c) * q; }

Jet2 operator/(const Jet2& p, const Jet2& q) {
  if (q.v == 0.0) throw DomainError("division by zero");
  Jet2 r;
  r.v = p.v / q.v;
  r.dx = (p.dx - r.v * q.dx) / q.v;
  r.dy = (p.dy - r.v * q.dy) / q.v;
  r.dxx = (p.dxx - 2.0 * r.dx * q.dx - r.v * q.dxx) / q.v;
  r.dxy = (p.dxy - r.dx * q.dy - r.dy * q.dx - r.v * q.dxy) / q.v;
  r.dyy = (p.dyy - 2.0 * r.dy * q.dy - r.v * q.dyy) / q.v;
  return r;
}

namespace {

// u(w) for a univariate u with derivatives u1 = u'(w.v), u2 = u''(w.v).
Jet2 chain(const Jet2& w, double u0, double u1, double u2) {
  Jet2 r;
  r.v = u0;
  r.dx = u1 * w.dx;
  r.dy = u1 * w.dy;
  r.dxx = u2 * w.dx * w.dx + u1 * w.dxx;
  r.dxy = u2 * w.dx * w.dy + u1 * w.dxy;
  r.dyy = u2 * w.dy * w.dy + u1 * w.dyy;
  return r;
}

}  // namespace

Jet2 jet_exp(const Jet2& p) {
  const double e = std::exp(p.v);
  return chain(p, e, e, e);
}

Jet2 jet_log(const Jet2& p) {
  if (p.v <= 0.0) throw DomainError("log of nonpositive value");
  return chain(p, std::log(p.v), 1.0 / p.v, -1.0 / (p.v * p.v));
}

Jet2 jet_sqrt(const Jet2& p) {
  if (p.v < 0.0) throw DomainError("sqrt of negative value");
  if (p.v == 0.0) throw DomainError("sqrt of zero: derivative undefined");
  const double s = std::sqrt(p.v);
  return chain(p, s, 0.5 / s, -0.25 / (p.v * s));
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

ParseError::ParseError(const std::string& what, std::size_t offset,
                       std::vector<std::string> expected)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

DomainError::DomainError(const std::string& what, std::size_t offset)
    : std::runtime_error(what), offset_(offset) {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string offset_str(std::size_t off) { return std::to_string(off); }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < n && is_digit(src[j])) ++j;
      if (j < n && src[j] == '.') {
        ++j;
        while (j < n && is_digit(src[j])) ++j;
      }
      // Exponent only if a digit actually follows; "2e" stays NUMBER + IDENT.
      if (j < n && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < n && is_digit(src[k])) {
          while (k < n && is_digit(src[k])) ++k;
          j = k;
        }
      }
      out.push_back({Token::Kind::Number, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (is_alpha(c)) {
      std::size_t j = i;
      while (j < n && (is_alpha(src[j]) || is_digit(src[j]) || src[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        out.push_back({Token::Kind::Op, std::string(1, c), i});
        ++i;
        continue;
      case '(':
        out.push_back({Token::Kind::LParen, "(", i});
        ++i;
        continue;
      case ')':
        out.push_back({Token::Kind::RParen, ")", i});
        ++i;
        continue;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) +
                             "' at offset " + offset_str(i),
                         i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

namespace detail {

enum class NodeKind {
  Constant, Variable, Negate, Add, Sub, Mul, Div, PowInt, PowGeneral, Call
};

enum class Axis { X, Y };

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

struct Node {
  NodeKind kind;
  std::size_t pos = 0;  // byte offset of the defining token
  double value = 0.0;   // Constant
  const char* const_name = nullptr;  // "pi" / "e" for named constants
  Axis axis = Axis::X;  // Variable
  long long exponent = 0;  // PowInt
  Func func = Func::Sin;   // Call
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
  }
  return "?";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Evaluation: one templated walk instantiated for double and Jet2, so the
// jet's value lane performs bit-identical arithmetic to the scalar path.
// ---------------------------------------------------------------------------

namespace {

using detail::Func;
using detail::Node;
using detail::NodeKind;

double value_of(double v) { return v; }
double value_of(const Jet2& j) { return j.v; }

template <class T> T constant_like(double c);
template <> double constant_like<double>(double c) { return c; }
template <> Jet2 constant_like<Jet2>(double c) { return jet_constant(c); }

double call_func(Func f, double a, std::size_t pos) {
  switch (f) {
    case Func::Sin: return std::sin(a);
    case Func::Cos: return std::cos(a);
    case Func::Tan: return std::tan(a);
    case Func::Exp: return std::exp(a);
    case Func::Log:
      if (a <= 0.0) throw DomainError("log of nonpositive value", pos);
      return std::log(a);
    case Func::Sqrt:
      if (a < 0.0) throw DomainError("sqrt of negative value", pos);
      return std::sqrt(a);
    case Func::Sinh: return std::sinh(a);
    case Func::Cosh: return std::cosh(a);
    case Func::Tanh: return std::tanh(a);
  }
  throw std::logic_error("unreachable");
}

Jet2 call_func(Func f, const Jet2& a, std::size_t pos) {
  switch (f) {
    case Func::Sin: return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
    case Func::Cos: return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
    case Func::Tan: {
      const double t = std::tan(a.v);
      const double sec2 = 1.0 + t * t;
      return chain(a, t, sec2, 2.0 * t * sec2);
    }
    case Func::Exp: return jet_exp(a);
    case Func::Log:
      if (a.v <= 0.0) throw DomainError("log of nonpositive value", pos);
      return jet_log(a);
    case Func::Sqrt:
      if (a.v < 0.0) throw DomainError("sqrt of negative value", pos);
      if (a.v == 0.0) throw DomainError("sqrt of zero: derivative undefined", pos);
      return jet_sqrt(a);
    case Func::Sinh: return chain(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v));
    case Func::Cosh: return chain(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v));
    case Func::Tanh: {
      const double t = std::tanh(a.v);
      const double sech2 = 1.0 - t * t;
      return chain(a, t, sech2, -2.0 * t * sech2);
    }
  }
  throw std::logic_error("unreachable");
}

template <class T>
T checked_div(const T& p, const T& q, std::size_t pos) {
  if (value_of(q) == 0.0) throw DomainError("division by zero", pos);
  return p / q;
}

// Exponentiation by squaring, MSB first: the multiplication sequence is fixed,
// so double and Jet2 value lanes agree exactly.
template <class T>
T ipow(const T& base, long long n, std::size_t pos) {
  if (n == 0) return constant_like<T>(1.0);
  unsigned long long m =
      n > 0 ? static_cast<unsigned long long>(n)
            : static_cast<unsigned long long>(-(n + 1)) + 1ULL;
  const int top = 63 - std::countl_zero(m);
  T acc = base;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = acc * acc;
    if ((m >> bit) & 1ULL) acc = acc * base;
  }
  if (n < 0) return checked_div(constant_like<T>(1.0), acc, pos);
  return acc;
}

template <class T>
T exp_of(const T& a);
template <> double exp_of<double>(const double& a) { return std::exp(a); }
template <> Jet2 exp_of<Jet2>(const Jet2& a) { return jet_exp(a); }

template <class T>
T log_of(const T& a);
template <> double log_of<double>(const double& a) { return std::log(a); }
template <> Jet2 log_of<Jet2>(const Jet2& a) { return jet_log(a); }

template <class T>
T eval_node(const Node& n, const T& x, const T& y) {
  switch (n.kind) {
    case NodeKind::Constant:
      return constant_like<T>(n.value);
    case NodeKind::Variable:
      return n.axis == detail::Axis::X ? x : y;
    case NodeKind::Negate: {
      T a = eval_node(*n.lhs, x, y);
      return constant_like<T>(0.0) - a;
    }
    case NodeKind::Add:
      return eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y);
    case NodeKind::Sub:
      return eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y);
    case NodeKind::Mul:
      return eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y);
    case NodeKind::Div: {
      T a = eval_node(*n.lhs, x, y);
      T b = eval_node(*n.rhs, x, y);
      return checked_div(a, b, n.pos);
    }
    case NodeKind::PowInt:
      return ipow(eval_node(*n.lhs, x, y), n.exponent, n.pos);
    case NodeKind::PowGeneral: {
      T b = eval_node(*n.lhs, x, y);
      T e = eval_node(*n.rhs, x, y);
      if (value_of(b) <= 0.0)
        throw DomainError("power with non-integer exponent requires a positive base",
                          n.pos);
      return exp_of<T>(e * log_of<T>(b));
    }
    case NodeKind::Call:
      return call_func(n.func, eval_node(*n.lhs, x, y), n.pos);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

using detail::NodePtr;

struct FuncEntry {
  const char* name;
  Func func;
};

constexpr FuncEntry kFuncs[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
    {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
    {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
};

const FuncEntry* lookup_func(const std::string& s) {
  for (const auto& f : kFuncs)
    if (s == f.name) return &f;
  return nullptr;
}

bool subtree_has_variable(const Node& n) {
  if (n.kind == NodeKind::Variable) return true;
  if (n.lhs && subtree_has_variable(*n.lhs)) return true;
  if (n.rhs && subtree_has_variable(*n.rhs)) return true;
  return false;
}

std::string expected_list_str(const std::vector<std::string>& expected) {
  std::string s;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) s += (i + 1 == expected.size()) ? " or " : ", ";
    s += expected[i];
  }
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view src)
      : src_(src), toks_(tokenize(src)) {}

  NodePtr parse() {
    if (toks_.empty())
      throw ParseError("empty expression", 0,
                       {"number", "'x'", "'y'", "'pi'", "'e'", "function", "'('"});
    NodePtr root = parse_expr();
    if (i_ < toks_.size())
      fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
    return root;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const std::size_t off = i_ < toks_.size() ? toks_[i_].position : src_.size();
    const std::string got =
        i_ < toks_.size() ? "'" + toks_[i_].lexeme + "'" : "end of input";
    throw ParseError("syntax error at offset " + offset_str(off) + ": got " + got +
                         ", expected " + expected_list_str(expected),
                     off, std::move(expected));
  }

  bool peek_op(char c) const {
    return i_ < toks_.size() && toks_[i_].kind == Token::Kind::Op &&
           toks_[i_].lexeme[0] == c;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (peek_op('+') || peek_op('-')) {
      const bool add = toks_[i_].lexeme[0] == '+';
      const std::size_t pos = toks_[i_].position;
      ++i_;
      NodePtr rhs = parse_term();
      auto n = std::make_shared<Node>();
      n->kind = add ? NodeKind::Add : NodeKind::Sub;
      n->pos = pos;
      n->lhs = std::move(lhs);
      n->rhs = std::move(rhs);
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (peek_op('*') || peek_op('/')) {
      const bool mul = toks_[i_].lexeme[0] == '*';
      const std::size_t pos = toks_[i_].position;
      ++i_;
      NodePtr rhs = parse_unary();
      auto n = std::make_shared<Node>();
      n->kind = mul ? NodeKind::Mul : NodeKind::Div;
      n->pos = pos;
      n->lhs = std::move(lhs);
      n->rhs = std::move(rhs);
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (peek_op('-')) {
      const std::size_t pos = toks_[i_].position;
      ++i_;
      NodePtr inner = parse_unary();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Negate;
      n->pos = pos;
      n->lhs = std::move(inner);
      return n;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (!peek_op('^')) return base;
    const std::size_t pos = toks_[i_].position;
    ++i_;
    NodePtr exponent = parse_unary();  // right-associative

    auto n = std::make_shared<Node>();
    n->pos = pos;
    n->lhs = std::move(base);
    // A variable-free exponent folds at parse time; integral values take the
    // repeated-multiplication path, which is defined for any base.
    if (!subtree_has_variable(*exponent)) {
      bool folded = false;
      double val = 0.0;
      try {
        val = eval_node<double>(*exponent, 0.0, 0.0);
        folded = true;
      } catch (const DomainError&) {
        // leave as a general power; the error resurfaces at evaluation
      }
      if (folded && std::isfinite(val) && std::nearbyint(val) == val &&
          std::abs(val) <= 2147483647.0) {
        n->kind = NodeKind::PowInt;
        n->exponent = static_cast<long long>(val);
        return n;
      }
    }
    n->kind = NodeKind::PowGeneral;
    n->rhs = std::move(exponent);
    return n;
  }

  NodePtr parse_atom() {
    if (i_ >= toks_.size())
      fail({"number", "'x'", "'y'", "'pi'", "'e'", "function", "'('"});
    const Token& t = toks_[i_];
    switch (t.kind) {
      case Token::Kind::Number: {
        double val = 0.0;
        auto [p, ec] =
            std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), val);
        if (ec != std::errc{} || p != t.lexeme.data() + t.lexeme.size())
          throw ParseError("number literal out of range at offset " +
                               offset_str(t.position),
                           t.position);
        ++i_;
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Constant;
        n->pos = t.position;
        n->value = val;
        return n;
      }
      case Token::Kind::Ident: {
        ++i_;
        auto n = std::make_shared<Node>();
        n->pos = t.position;
        if (t.lexeme == "x" || t.lexeme == "y") {
          n->kind = NodeKind::Variable;
          n->axis = t.lexeme == "x" ? detail::Axis::X : detail::Axis::Y;
          return n;
        }
        if (t.lexeme == "pi") {
          n->kind = NodeKind::Constant;
          n->value = 3.14159265358979323846;
          n->const_name = "pi";
          return n;
        }
        if (t.lexeme == "e") {
          n->kind = NodeKind::Constant;
          n->value = 2.71828182845904523536;
          n->const_name = "e";
          return n;
        }
        if (const FuncEntry* fe = lookup_func(t.lexeme)) {
          n->kind = NodeKind::Call;
          n->func = fe->func;
          if (i_ >= toks_.size() || toks_[i_].kind != Token::Kind::LParen) fail({"'('"});
          ++i_;
          n->lhs = parse_expr();
          if (i_ >= toks_.size() || toks_[i_].kind != Token::Kind::RParen) fail({"')'"});
          ++i_;
          return n;
        }
        throw ParseError("unknown identifier '" + t.lexeme + "' at offset " +
                             offset_str(t.position),
                         t.position,
                         {"'x'", "'y'", "'pi'", "'e'", "function"});
      }
      case Token::Kind::LParen: {
        ++i_;
        NodePtr inner = parse_expr();
        if (i_ >= toks_.size() || toks_[i_].kind != Token::Kind::RParen) fail({"')'"});
        ++i_;
        return inner;
      }
      default:
        fail({"number", "'x'", "'y'", "'pi'", "'e'", "function", "'('"});
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Printer: minimal parentheses such that parse(str()) is the identity.
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: Add/Sub 1, Mul/Div 2, Negate 3, Pow 4, atoms 5.
int node_prec(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::PowInt:
    case NodeKind::PowGeneral: return 4;
    default: return 5;
  }
}

std::string format_shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

void print_node(const Node& n, int min_prec, std::string& out) {
  const bool parens = node_prec(n) < min_prec;
  if (parens) out += '(';
  switch (n.kind) {
    case NodeKind::Constant:
      out += n.const_name ? n.const_name : format_shortest(n.value);
      break;
    case NodeKind::Variable:
      out += n.axis == detail::Axis::X ? 'x' : 'y';
      break;
    case NodeKind::Negate:
      out += '-';
      print_node(*n.lhs, 3, out);
      break;
    case NodeKind::Add:
    case NodeKind::Sub:
      print_node(*n.lhs, 1, out);
      out += n.kind == NodeKind::Add ? '+' : '-';
      print_node(*n.rhs, 2, out);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      print_node(*n.lhs, 2, out);
      out += n.kind == NodeKind::Mul ? '*' : '/';
      print_node(*n.rhs, 3, out);
      break;
    case NodeKind::PowInt:
      print_node(*n.lhs, 5, out);
      out += '^';
      out += std::to_string(n.exponent);
      break;
    case NodeKind::PowGeneral:
      print_node(*n.lhs, 5, out);
      out += '^';
      print_node(*n.rhs, 3, out);
      break;
    case NodeKind::Call:
      out += detail::func_name(n.func);
      out += '(';
      print_node(*n.lhs, 1, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant:
      if (a.value != b.value) return false;
      if ((a.const_name == nullptr) != (b.const_name == nullptr)) return false;
      if (a.const_name && std::string_view(a.const_name) != b.const_name) return false;
      return true;
    case NodeKind::Variable:
      return a.axis == b.axis;
    case NodeKind::PowInt:
      if (a.exponent != b.exponent) return false;
      break;
    case NodeKind::Call:
      if (a.func != b.func) return false;
      break;
    default:
      break;
  }
  if ((a.lhs == nullptr) != (b.lhs == nullptr)) return false;
  if ((a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  if (a.lhs && !nodes_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !nodes_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarField
// ---------------------------------------------------------------------------

ScalarField::ScalarField(std::shared_ptr<const detail::Node> root)
    : root_(std::move(root)) {}

ScalarField ScalarField::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  return ScalarField(std::move(n));
}

double ScalarField::eval(double x, double y) const {
  return eval_node<double>(*root_, x, y);
}

Jet2 ScalarField::eval_jet(double x, double y) const {
  return eval_node<Jet2>(*root_, jet_x(x), jet_y(y));
}

std::string ScalarField::str() const {
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

bool ScalarField::same_ast(const ScalarField& other) const {
  return nodes_equal(*root_, *other.root_);
}

ScalarField parse_expression(std::string_view source) {
  return ScalarField(Parser(source).parse());
}

double eval_scalar(const ScalarField& f, double x, double y) { return f.eval(x, y); }

Jet2 eval_jet2(const ScalarField& f, double x, double y) { return f.eval_jet(x, y); }

// ---------------------------------------------------------------------------
// Grid positivity sweep
// ---------------------------------------------------------------------------

namespace {

double grid_sample(double lo, double hi, int i, int n) {
  if (n == 1) return lo;
  return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n - 1));
}

std::string point_str(double x, double y) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%g, %g)", x, y);
  return buf;
}

}  // namespace

PositivityReport validate_positive(const ScalarField& f, const Rect& region, int grid) {
  if (grid < 2) throw std::invalid_argument("validate_positive: grid must be >= 2");
  if (region.x0 > region.x1 || region.y0 > region.y1)
    throw std::invalid_argument("validate_positive: empty region");

  PositivityReport rep;
  rep.samples_x = region.x0 == region.x1 ? 1 : grid;
  rep.samples_y = region.y0 == region.y1 ? 1 : grid;

  bool first = true;
  for (int i = 0; i < rep.samples_x; ++i) {
    const double x = grid_sample(region.x0, region.x1, i, rep.samples_x);
    for (int j = 0; j < rep.samples_y; ++j) {
      const double y = grid_sample(region.y0, region.y1, j, rep.samples_y);
      double v;
      try {
        v = f.eval(x, y);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at grid point " + point_str(x, y),
                          e.offset());
      }
      if (first || v < rep.min_value) {
        rep.min_value = v;
        rep.min_point = {x, y};
        first = false;
      }
    }
  }
  rep.positive = rep.min_value > 0.0;
  rep.at_least_one = rep.min_value >= 1.0;
  return rep;
}

}  // namespace dtwist
