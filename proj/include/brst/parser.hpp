#pragma once

// Expressions for CLI inputs, e.g. "h11*h12 - 3/2*h22^2 + i*z1*zb1".
//
//   expr   = term { ("+" | "-") term }
//   term   = unary { "*" unary }
//   unary  = [ "-" ] power
//   power  = atom [ "^" digits ]
//   atom   = rational | "i" | "w" | "h" digit digit | "zb" digits | "z" digits | "(" expr ")"
//
// h<j><k> is z_j zb_k w = z_j zb_k / |z|^2.

#include <cctype>
#include <string>

#include "ring.hpp"

namespace brst {

class ExpressionParser {
public:
  ExpressionParser(std::string text, int m) : text_(std::move(text)), m_(m) {}

  RingElement parse() {
    RingElement e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw Error(ErrorCode::Parse, what + " at position " + std::to_string(pos_) + " in \"" + text_ + "\"");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  int index(const std::string &d) {
    if (d.empty()) fail("missing index");
    int k = std::stoi(d);
    if (k < 1 || k > m_) fail("index " + d + " out of range 1.." + std::to_string(m_));
    return k - 1;
  }

  RingElement expr() {
    RingElement e = term();
    for (;;) {
      if (eat('+'))
        e += term();
      else if (eat('-'))
        e -= term();
      else
        return e;
    }
  }
  RingElement term() {
    RingElement e = unary();
    while (eat('*')) e = e * unary();
    return e;
  }
  RingElement unary() {
    if (eat('-')) return -power();
    return power();
  }
  RingElement power() {
    RingElement base = atom();
    if (eat('^')) {
      skip();
      std::string d = digits();
      if (d.empty()) fail("missing exponent");
      if (d.size() > 3) fail("exponent too large");
      base = base.pow(std::stoi(d));
    }
    return base;
  }
  RingElement atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RingElement e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) fail("missing denominator");
        lit += "/" + den;
      }
      try {
        return RingElement(m_, Scalar::parse(lit));
      } catch (const Error &) {
        fail("bad rational '" + lit + "'");
      }
    }
    if (c == 'i') {
      ++pos_;
      return RingElement(m_, Scalar::i());
    }
    if (c == 'w') {
      ++pos_;
      return RingElement::w(m_);
    }
    if (c == 'h') {
      ++pos_;
      if (pos_ + 2 > text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
        fail("h needs two digit indices");
      int j = index(text_.substr(pos_, 1));
      int k = index(text_.substr(pos_ + 1, 1));
      pos_ += 2;
      return RingElement::z(m_, j) * RingElement::zb(m_, k) * RingElement::w(m_);
    }
    if (c == 'z') {
      ++pos_;
      bool bar = pos_ < text_.size() && text_[pos_] == 'b';
      if (bar) ++pos_;
      int k = index(digits());
      return bar ? RingElement::zb(m_, k) : RingElement::z(m_, k);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  int m_;
  std::size_t pos_ = 0;
};

inline RingElement parse_expression(const std::string &text, int m) { return ExpressionParser(text, m).parse(); }

} // namespace brst
