#pragma once

#include <cctype>
#include <string>

#include "twistforge/ratfunc.hpp"

namespace twistforge {

// Recursive-descent parser for the polynomial / rational-function grammar:
// integer or rational coefficients, variables u v w t x, operators + - * / ^
// and parentheses. "^" binds tightest, then "*" and "/", then sums.
namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : s_(text) {}

  RF parse() {
    RF e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  RF expr() {
    RF acc = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RF term() {
    RF acc = unary();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc *= unary();
      } else if (peek() == '/') {
        ++pos_;
        RF d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RF unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return factor();
  }

  RF factor() {
    RF b = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool negexp = false;
      if (peek() == '-') {
        negexp = true;
        ++pos_;
      }
      if (!std::isdigit(peek())) fail("exponent expected");
      long e = 0;
      while (std::isdigit(peek())) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 4096) fail("exponent too large");
        ++pos_;
      }
      return b.pow(negexp ? -e : e);
    }
    return b;
  }

  RF base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      RF e = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(c)) {
      Int n = 0;
      while (std::isdigit(peek())) {
        n = n * 10 + (s_[pos_] - '0');
        ++pos_;
      }
      return RF(Rat(n));
    }
    int v = var_index(c);
    if (v >= 0) {
      ++pos_;
      return RF::variable(v);
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
    return RF();
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error("parse error at position " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline RF parse_ratfunc(const std::string& text) {
  return detail::PolyParser(text).parse();
}

inline PolyQ parse_poly(const std::string& text) {
  RF f = detail::PolyParser(text).parse();
  if (!f.is_polynomial())
    throw parse_error("expected a polynomial, got a proper rational function: " + text);
  Rat d = f.den().constant_value();
  PolyQ p = f.num();
  if (d != 1) p.scale_rational(Rat(1) / d);
  return p;
}

}  // namespace twistforge
