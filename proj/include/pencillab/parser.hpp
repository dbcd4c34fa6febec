#pragma once

#include "pencillab/errors.hpp"
#include "pencillab/ratfunc.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace pencillab {

namespace detail {

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' natural)?
//   primary := natural | variable | '(' expr ')'
// Every node evaluates straight to a reduced fraction, so division anywhere
// (including rational literals like 1/2) comes for free. There is no
// implicit multiplication and exponents are literal nonnegative integers.
class ExprParser {
 public:
  ExprParser(const std::string& text, const std::vector<std::string>& names)
      : text_(text), names_(names), nvars_(static_cast<int>(names.size())) {}

  RFuncQ run() {
    skip();
    if (at_end()) throw SyntaxError("empty expression", 0);
    RFuncQ v = expr();
    skip();
    if (!at_end()) throw SyntaxError("unexpected character", pos_);
    return v;
  }

 private:
  const std::string& text_;
  const std::vector<std::string>& names_;
  int nvars_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (at_end() || peek() != c) return false;
    ++pos_;
    return true;
  }

  RFuncQ expr() {
    RFuncQ v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  RFuncQ term() {
    RFuncQ v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = v / unary();
      else
        return v;
    }
  }

  RFuncQ unary() {
    if (eat('-')) return -unary();
    return power();
  }

  RFuncQ power() {
    RFuncQ v = primary();
    skip();
    if (at_end() || peek() != '^') return v;
    ++pos_;
    return v.pow(static_cast<int>(natural(4096)));
  }

  long natural(long cap) {
    skip();
    const std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError("expected a nonnegative integer", pos_);
    long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > cap) throw SyntaxError("integer literal too large", start);
      ++pos_;
    }
    return v;
  }

  RFuncQ primary() {
    skip();
    if (at_end()) throw SyntaxError("unexpected end of input", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RFuncQ v = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      BigInt v = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        v = v * 10 + (peek() - '0');
        ++pos_;
        if (pos_ - start > 1000) throw SyntaxError("integer literal too large", start);
      }
      return RFuncQ::constant(nvars_, BigRational(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      for (int j = 0; j < nvars_; ++j)
        if (names_[static_cast<std::size_t>(j)] == name) return RFuncQ::variable(nvars_, j);
      throw UnknownVariable(name, start);
    }
    throw SyntaxError("unexpected character", pos_);
  }
};

}  // namespace detail

// Parses text over the given variables into a reduced fraction.
inline RFuncQ parse(const std::string& text, const std::vector<std::string>& names) {
  return detail::ExprParser(text, names).run();
}

// Canonical text form, parseable back to an equal fraction.
inline std::string rf_to_string(const RFuncQ& f, const std::vector<std::string>& names) {
  if (f.den().is_constant()) return mp_to_string(f.num(), names);
  return "(" + mp_to_string(f.num(), names) + ")/(" + mp_to_string(f.den(), names) + ")";
}

}  // namespace pencillab
