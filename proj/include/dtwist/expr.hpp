#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dtwist {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Closed axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
};

/// Value of a scalar field at a point together with its first and second
/// partial derivatives. dxy is the single mixed partial (symmetry of second
/// derivatives is built in).
struct Jet2 {
  double v = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dxy = 0.0;
  double dyy = 0.0;
};

Jet2 jet_constant(double c);
Jet2 jet_x(double x);  // seed (x, 1, 0, 0, 0, 0)
Jet2 jet_y(double y);  // seed (y, 0, 1, 0, 0, 0)

Jet2 operator-(const Jet2& p);
Jet2 operator+(const Jet2& p, const Jet2& q);
Jet2 operator-(const Jet2& p, const Jet2& q);
Jet2 operator*(const Jet2& p, const Jet2& q);
Jet2 operator*(double c, const Jet2& q);
Jet2 operator/(const Jet2& p, const Jet2& q);  // throws DomainError on q.v == 0

Jet2 jet_exp(const Jet2& p);
Jet2 jet_log(const Jet2& p);   // throws DomainError on p.v <= 0
Jet2 jet_sqrt(const Jet2& p);  // throws DomainError on p.v <= 0 (derivative pole at 0)

/// Syntax or lexical error, with the byte offset of the offending input and
/// the set of tokens that would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected = {});
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Evaluation-domain failure (log of nonpositive, sqrt of negative, division
/// by zero, nonpositive twisting function, ...). Carries the byte offset of
/// the offending AST node when one applies.
class DomainError : public std::runtime_error {
 public:
  static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);
  explicit DomainError(const std::string& what, std::size_t offset = no_offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct Token {
  enum class Kind { Number, Ident, Op, LParen, RParen };
  Kind kind;
  std::string lexeme;
  std::size_t position;  // byte offset into the source
};

std::vector<Token> tokenize(std::string_view source);

namespace detail {
struct Node;
}

/// Parsed expression over the variables x and y, evaluable as a scalar or as
/// a 2-jet. Immutable; copies share the AST.
class ScalarField {
 public:
  static ScalarField constant(double value);

  double eval(double x, double y) const;
  Jet2 eval_jet(double x, double y) const;

  /// Pretty-prints the AST. parse(str()) reproduces the AST exactly.
  std::string str() const;
  bool same_ast(const ScalarField& other) const;

 private:
  explicit ScalarField(std::shared_ptr<const detail::Node> root);
  std::shared_ptr<const detail::Node> root_;
  friend ScalarField parse_expression(std::string_view);
};

/// Grammar:
///   expr   := term { ("+"|"-") term }
///   term   := unary { ("*"|"/") unary }
///   unary  := "-" unary | power
///   power  := atom [ "^" unary ]
///   atom   := NUMBER | "x" | "y" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"
///   FUNC   := sin|cos|tan|exp|log|sqrt|sinh|cosh|tanh
/// "^" is right-associative and binds tighter than unary minus. A variable-free
/// exponent with integral value is evaluated by repeated multiplication (valid
/// for any base); any other exponent uses exp(e*log(base)) and requires a
/// positive base.
ScalarField parse_expression(std::string_view source);

double eval_scalar(const ScalarField& f, double x, double y);
Jet2 eval_jet2(const ScalarField& f, double x, double y);

struct PositivityReport {
  double min_value = 0.0;
  Point min_point;
  int samples_x = 0;
  int samples_y = 0;
  bool positive = false;      // min_value > 0
  bool at_least_one = false;  // min_value >= 1 (Lemma-1 mode)
};

/// Samples f on a closed uniform grid (grid points per axis, one point on a
/// degenerate axis) and reports the minimum. grid must be >= 2.
PositivityReport validate_positive(const ScalarField& f, const Rect& region, int grid);

}  // namespace dtwist
