#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "fermat/types.hpp"

namespace fermat {

enum class Func { Exp, Log, Sin, Cos, Sqrt };
enum class NamedConst { Pi, E, I };
enum class BinOp { Add, Sub, Mul, Div, Pow };

/// Immutable expression tree over one complex variable z. Nodes are shared,
/// so copies are cheap and safe to use from several threads.
///
/// Grammar (whitespace ignored):
///
///     expr    := term   (('+' | '-') term)*
///     term    := unary  (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          -- right associative
///     primary := number ['i'] | 'i' | 'pi' | 'e' | 'z'
///              | func '(' expr ')' | '(' expr ')'
///     func    := exp | log | sin | cos | sqrt
///
/// The exponent of '^' must not depend on z.
class Expr {
 public:
  struct Literal {
    double value;
    bool imaginary;
  };
  struct Named {
    NamedConst which;
  };
  struct Variable {};
  struct Negate {
    std::shared_ptr<const Expr> operand;
  };
  struct Binary {
    BinOp op;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
  };
  struct Call {
    Func fn;
    std::shared_ptr<const Expr> arg;
  };
  using Node = std::variant<Literal, Named, Variable, Negate, Binary, Call>;

  explicit Expr(Node node) : node_(std::move(node)) {}

  static Expr real(double v) { return Expr(Literal{v, false}); }
  static Expr imag(double v) { return Expr(Literal{v, true}); }
  static Expr named(NamedConst c) { return Expr(Named{c}); }
  static Expr z() { return Expr(Variable{}); }
  /// Builds re + im*i from literals (negative parts become negations).
  static Expr constant(Complex c);
  static Expr negate(const Expr& e);
  static Expr binary(BinOp op, const Expr& lhs, const Expr& rhs);
  static Expr call(Func fn, const Expr& arg);

  const Node& node() const { return node_; }

  bool depends_on_z() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Node node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Parse failure. `column` is the 1-based byte position of the offending token.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, NonConstantExponent };
  ParseError(Kind kind, std::size_t column, const std::string& what);
  Kind kind() const { return kind_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t column_;
};

Expr parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(print(e)) == e.
std::string print(const Expr& e);

/// Complex evaluation; log and sqrt use the principal branch (Im log in (-pi, pi]).
/// Non-finite intermediates propagate.
Complex eval(const Expr& e, Complex z);

/// Evaluates an expression that must not depend on z.
Complex eval_constant(const Expr& e);

/// Principal logarithm with Im in (-pi, pi] (a negative zero imaginary part is
/// treated as +0).
Complex principal_log(Complex z);

/// L(z) = q*z + c with q != 0.
struct AffineMap {
  Complex q{1.0, 0.0};
  Complex c{0.0, 0.0};

  AffineMap() = default;
  AffineMap(Complex q_, Complex c_);
  static AffineMap shift(Complex c_) { return AffineMap(Complex(1.0, 0.0), c_); }
  static AffineMap identity() { return AffineMap(); }

  Complex operator()(Complex z) const { return q * z + c; }
};

}  // namespace fermat
