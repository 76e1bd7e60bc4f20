#include "fermat/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace fermat {

namespace {

std::shared_ptr<const Expr> share(const Expr& e) { return std::make_shared<const Expr>(e); }

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp:
      return "exp";
    case Func::Log:
      return "log";
    case Func::Sin:
      return "sin";
    case Func::Cos:
      return "cos";
    case Func::Sqrt:
      return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail_syntax("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(ParseError::Kind kind, std::size_t at, const std::string& msg) const {
    throw ParseError(kind, at + 1, msg + " at column " + std::to_string(at + 1));
  }
  [[noreturn]] void fail_syntax(const std::string& msg) const { fail(ParseError::Kind::Syntax, pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail_syntax(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                                      : "expected '" + std::string(1, c) + "' before end of input");
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinOp::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) {
      return Expr::negate(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    skip_ws();
    const std::size_t caret = pos_;
    if (accept('^')) {
      Expr exponent = parse_unary();
      if (exponent.depends_on_z()) {
        fail(ParseError::Kind::NonConstantExponent, caret, "exponent of '^' must not depend on z");
      }
      return Expr::binary(BinOp::Pow, base, exponent);
    }
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      fail_syntax("unexpected end of input");
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    fail_syntax("unexpected '" + std::string(1, c) + "'");
  }

  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail_syntax("malformed number");
    }
    // Exponent only when digits follow, so "2e" stays a syntax error rather
    // than silently swallowing the constant e.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail_syntax("malformed number");
    }
    if (pos_ < text_.size() && text_[pos_] == 'i' && (pos_ + 1 >= text_.size() || !is_ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return Expr::imag(value);
    }
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      fail_syntax("unexpected '" + std::string(1, text_[pos_]) + "' after number");
    }
    return Expr::real(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "z") {
      return Expr::z();
    }
    if (name == "pi") {
      return Expr::named(NamedConst::Pi);
    }
    if (name == "e") {
      return Expr::named(NamedConst::E);
    }
    if (name == "i") {
      return Expr::named(NamedConst::I);
    }
    for (Func f : {Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Sqrt}) {
      if (name == func_name(f)) {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return Expr::call(f, arg);
      }
    }
    fail(ParseError::Kind::UnknownIdentifier, start, "unknown identifier '" + std::string(name) + "'");
  }
};

// ---------------------------------------------------------------------------
// Printer

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Negate>) {
          return kPrecUnary;
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          switch (n.op) {
            case BinOp::Add:
            case BinOp::Sub:
              return kPrecAdd;
            case BinOp::Mul:
            case BinOp::Div:
              return kPrecMul;
            case BinOp::Pow:
              return kPrecPow;
          }
          return kPrecAtom;
        } else {
          return kPrecAtom;
        }
      },
      e.node());
}

void render(const Expr& e, std::string& out);

void render_at(const Expr& e, int required, std::string& out) {
  if (precedence(e) < required) {
    out += '(';
    render(e, out);
    out += ')';
  } else {
    render(e, out);
  }
}

void render(const Expr& e, std::string& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          out += format_double(n.value);
          if (n.imaginary) {
            out += 'i';
          }
        } else if constexpr (std::is_same_v<T, Expr::Named>) {
          out += n.which == NamedConst::Pi ? "pi" : n.which == NamedConst::E ? "e" : "i";
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          out += 'z';
        } else if constexpr (std::is_same_v<T, Expr::Negate>) {
          out += '-';
          render_at(*n.operand, kPrecUnary, out);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          switch (n.op) {
            case BinOp::Add:
            case BinOp::Sub:
              render_at(*n.lhs, kPrecAdd, out);
              out += n.op == BinOp::Add ? " + " : " - ";
              render_at(*n.rhs, kPrecMul, out);
              break;
            case BinOp::Mul:
            case BinOp::Div:
              render_at(*n.lhs, kPrecMul, out);
              out += n.op == BinOp::Mul ? "*" : "/";
              render_at(*n.rhs, kPrecUnary, out);
              break;
            case BinOp::Pow:
              render_at(*n.lhs, kPrecAtom, out);
              out += '^';
              render_at(*n.rhs, kPrecUnary, out);
              break;
          }
        } else if constexpr (std::is_same_v<T, Expr::Call>) {
          out += func_name(n.fn);
          out += '(';
          render(*n.arg, out);
          out += ')';
        }
      },
      e.node());
}

// ---------------------------------------------------------------------------
// Evaluation

Complex principal_sqrt(Complex z) { return std::sqrt(Complex(z.real(), z.imag() == 0.0 ? 0.0 : z.imag())); }

Complex integer_power(Complex base, long long n) {
  if (n < 0) {
    return 1.0 / integer_power(base, -n);
  }
  Complex result(1.0, 0.0);
  while (n > 0) {
    if (n & 1) {
      result *= base;
    }
    n >>= 1;
    if (n > 0) {
      base *= base;
    }
  }
  return result;
}

Complex power(Complex base, Complex exponent) {
  if (exponent.imag() == 0.0 && std::abs(exponent.real()) <= 64.0 && exponent.real() == std::round(exponent.real())) {
    return integer_power(base, static_cast<long long>(exponent.real()));
  }
  if (base == Complex(0.0, 0.0)) {
    return exponent.real() > 0.0 ? Complex(0.0, 0.0) : Complex(std::nan(""), std::nan(""));
  }
  return std::exp(exponent * principal_log(base));
}

}  // namespace

Complex principal_log(Complex z) { return std::log(Complex(z.real(), z.imag() == 0.0 ? 0.0 : z.imag())); }

Expr Expr::constant(Complex c) {
  auto part = [](double v, bool imaginary) {
    const Expr lit(Literal{std::abs(v), imaginary});
    return std::signbit(v) ? negate(lit) : lit;
  };
  if (c.imag() == 0.0) {
    return part(c.real(), false);
  }
  if (c.real() == 0.0) {
    return part(c.imag(), true);
  }
  const Expr re = part(c.real(), false);
  const Expr im(Literal{std::abs(c.imag()), true});
  return binary(std::signbit(c.imag()) ? BinOp::Sub : BinOp::Add, re, im);
}

Expr Expr::negate(const Expr& e) { return Expr(Negate{share(e)}); }
Expr Expr::binary(BinOp op, const Expr& lhs, const Expr& rhs) { return Expr(Binary{op, share(lhs), share(rhs)}); }
Expr Expr::call(Func fn, const Expr& arg) { return Expr(Call{fn, share(arg)}); }

bool Expr::depends_on_z() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return n.operand->depends_on_z();
        } else if constexpr (std::is_same_v<T, Binary>) {
          return n.lhs->depends_on_z() || n.rhs->depends_on_z();
        } else if constexpr (std::is_same_v<T, Call>) {
          return n.arg->depends_on_z();
        } else {
          return false;
        }
      },
      node_);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_.index() != b.node_.index()) {
    return false;
  }
  return std::visit(
      [&b](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(b.node_);
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          // Bitwise, so that -0.0 and 0.0 differ.
          return n.imaginary == m.imaginary && std::signbit(n.value) == std::signbit(m.value) &&
                 (n.value == m.value || (std::isnan(n.value) && std::isnan(m.value)));
        } else if constexpr (std::is_same_v<T, Expr::Named>) {
          return n.which == m.which;
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Expr::Negate>) {
          return *n.operand == *m.operand;
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          return n.op == m.op && *n.lhs == *m.lhs && *n.rhs == *m.rhs;
        } else {
          return n.fn == m.fn && *n.arg == *m.arg;
        }
      },
      a.node_);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

ParseError::ParseError(Kind kind, std::size_t column, const std::string& what)
    : Error(what), kind_(kind), column_(column) {}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) {
  std::string out;
  render(e, out);
  return out;
}

Complex eval(const Expr& e, Complex z) {
  return std::visit(
      [z](const auto& n) -> Complex {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return n.imaginary ? Complex(0.0, n.value) : Complex(n.value, 0.0);
        } else if constexpr (std::is_same_v<T, Expr::Named>) {
          switch (n.which) {
            case NamedConst::Pi:
              return {kPi, 0.0};
            case NamedConst::E:
              return {std::exp(1.0), 0.0};
            case NamedConst::I:
              return {0.0, 1.0};
          }
          return {};
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          return z;
        } else if constexpr (std::is_same_v<T, Expr::Negate>) {
          return -eval(*n.operand, z);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          const Complex l = eval(*n.lhs, z);
          const Complex r = eval(*n.rhs, z);
          switch (n.op) {
            case BinOp::Add:
              return l + r;
            case BinOp::Sub:
              return l - r;
            case BinOp::Mul:
              return l * r;
            case BinOp::Div:
              return l / r;
            case BinOp::Pow:
              return power(l, r);
          }
          return {};
        } else {
          const Complex a = eval(*n.arg, z);
          switch (n.fn) {
            case Func::Exp:
              return std::exp(a);
            case Func::Log:
              return principal_log(a);
            case Func::Sin:
              return std::sin(a);
            case Func::Cos:
              return std::cos(a);
            case Func::Sqrt:
              return principal_sqrt(a);
          }
          return {};
        }
      },
      e.node());
}

Complex eval_constant(const Expr& e) {
  if (e.depends_on_z()) {
    throw ParameterError("expected a constant expression, got one depending on z");
  }
  return eval(e, Complex(0.0, 0.0));
}

AffineMap::AffineMap(Complex q_, Complex c_) : q(q_), c(c_) {
  if (!is_finite(q) || !is_finite(c)) {
    throw DomainError("affine map coefficients must be finite");
  }
  if (q == Complex(0.0, 0.0)) {
    throw ParameterError("affine map requires q != 0");
  }
}

}  // namespace fermat
