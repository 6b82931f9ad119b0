#include "cubereg/expression.hpp"

#include "cubereg/error.hpp"

#include <cctype>

namespace cubereg {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParamTable& params, bool allow_t)
      : text_(text), params_(params), allow_t_(allow_t) {}

  RationalFunction parse() {
    RationalFunction value = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(size_t at, const std::string& msg) const {
    int line = 1, col = 1;
    for (size_t k = 0; k < at && k < text_.size(); ++k) {
      unsigned char c = static_cast<unsigned char>(text_[k]);
      if (c == '\n') {
        ++line;
        col = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, msg, line, col);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Returns the operator character at the cursor, mapping U+2212 to '-'; 0 if none.
  char peek_op() {
    skip_space();
    if (pos_ >= text_.size()) return 0;
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") return '-';
    return text_[pos_];
  }

  void consume_op() {
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
    } else {
      ++pos_;
    }
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (char c = peek_op(); c == '+' || c == '-'; c = peek_op()) {
      consume_op();
      RationalFunction rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (char c = peek_op(); c == '*' || c == '/'; c = peek_op()) {
      size_t at = pos_;
      consume_op();
      RationalFunction rhs = unary();
      if (c == '*') {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) fail_at(at, "division by zero");
        acc = acc / rhs;
      }
    }
    return acc;
  }

  RationalFunction unary() {
    char c = peek_op();
    if (c == '-' || c == '+') {
      consume_op();
      RationalFunction v = unary();
      return c == '-' ? -v : v;
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (peek_op() != '^') return base;
    size_t at = pos_;
    consume_op();
    int sign = 1;
    bool paren = false;
    if (peek_op() == '(') {
      consume_op();
      paren = true;
    }
    char c = peek_op();
    if (c == '-' || c == '+') {
      consume_op();
      sign = c == '-' ? -1 : 1;
    }
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 4) fail_at(start, "exponent too large");
    int e = sign * std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren) {
      if (peek_op() != ')') fail("expected ')'");
      consume_op();
    }
    if (e < 0 && base.is_zero()) fail_at(at, "negative power of zero");
    return base.pow(e);
  }

  RationalFunction primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction v = expr();
      if (peek_op() != ')') fail("expected ')'");
      consume_op();
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RationalFunction(GaussRational(Rational(Integer(std::string(text_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "i") return RationalFunction(GaussRational::imag_unit());
      if (name == "t") {
        if (!allow_t_) fail_at(start, "variable t not allowed in a constant");
        return RationalFunction::variable();
      }
      auto it = params_.find(name);
      if (it == params_.end()) fail_at(start, "unbound parameter '" + name + "'");
      return RationalFunction(it->second);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const ParamTable& params_;
  bool allow_t_;
  size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_expression(std::string_view text, const ParamTable& params, bool allow_t) {
  return Parser(text, params, allow_t).parse();
}

GaussRational parse_constant(std::string_view text, const ParamTable& params) {
  RationalFunction f = parse_expression(text, params, false);
  return *f.constant_value();
}

Rational parse_rational(std::string_view text) {
  GaussRational v = parse_constant(text);
  if (!v.is_real()) throw Error(ErrorCode::ParseError, "expected a real rational, got " + v.to_string(), 1, 1);
  return v.re();
}

}  // namespace cubereg
