#include "presym/expr/parse.hpp"

#include <cctype>
#include <string>

#include "presym/error.hpp"

namespace presym {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarTable& vars) : text_(text), vars_(vars) {}

  RationalExpr run() {
    skip_space();
    if (at_end()) fail("empty expression");
    RationalExpr e = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    advance();
    return true;
  }

  RationalExpr expr() {
    RationalExpr acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RationalExpr term() {
    RationalExpr acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        auto line = line_;
        auto column = column_;
        RationalExpr divisor = factor();
        if (divisor.is_zero()) throw ParseError("division by zero", line, column);
        acc = acc / divisor;
      } else {
        return acc;
      }
    }
  }

  RationalExpr factor() {
    skip_space();
    if (accept('-')) return -factor();
    RationalExpr b = base();
    if (accept('^')) {
      auto line = line_;
      auto column = column_;
      int e = exponent();
      if (e < 0 && b.is_zero()) throw ParseError("division by zero", line, column);
      b = b.pow(e);
    }
    return b;
  }

  int exponent() {
    skip_space();
    auto line = line_;
    auto column = column_;
    RationalExpr value;
    if (peek() == '(') {
      advance();
      value = expr();
      if (!accept(')')) fail("expected ')'");
    } else if (peek() == '-') {
      advance();
      skip_space();
      value = -integer();
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = integer();
    } else {
      fail("expected integer exponent");
    }
    if (!value.is_constant()) throw ParseError("non-constant exponent", line, column);
    Rational c = value.constant_value();
    if (c.get_den() != 1) throw ParseError("non-integer exponent", line, column);
    if (abs(c) > 1000) throw ParseError("exponent out of range", line, column);
    return static_cast<int>(c.get_num().get_si());
  }

  RationalExpr integer() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.empty()) fail("expected integer");
    return RationalExpr(Rational(mpz_class(digits)));
  }

  RationalExpr base() {
    skip_space();
    char c = peek();
    if (c == '(') {
      advance();
      RationalExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return integer();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto line = line_;
      auto column = column_;
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek()))) {
        name += peek();
        advance();
      }
      auto var = vars_.lookup(name);
      if (!var) throw ParseError("unknown identifier '" + name + "'", line, column);
      return RationalExpr::variable(*var);
    }
    if (at_end()) fail("unexpected end of expression");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

RationalExpr parse(std::string_view text, const VarTable& vars) { return Parser(text, vars).run(); }

}  // namespace presym
