#pragma once

// Exact Gaussian rationals Q(i).

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "error.hpp"

namespace brst {

class Scalar {
public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}
  Scalar(long v) : re_(v) {}
  Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar norm() const { return Scalar(mpq_class(re_ * re_ + im_ * im_)); }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::NotDivisible, "division by zero scalar");
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(mpq_class(re_ / n), mpq_class(-im_ / n));
  }

  Scalar &operator+=(const Scalar &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar &operator-=(const Scalar &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar &operator*=(const Scalar &o) {
    if (o.im_ == 0) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar &operator/=(const Scalar &o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  Scalar operator-() const { return Scalar(mpq_class(-re_), mpq_class(-im_)); }

  friend bool operator==(const Scalar &a, const Scalar &b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

  /// Serialized as "a/b" or "a/b+c/di" (denominators of 1 are omitted).
  std::string to_string() const {
    if (im_ == 0) return re_.get_str();
    std::string out;
    if (re_ != 0) out = re_.get_str();
    if (re_ != 0 && sgn(im_) > 0) out += "+";
    out += im_.get_str();
    out += "i";
    return out;
  }

  static Scalar parse(const std::string &text);

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.to_string(); }

namespace detail {
inline mpq_class parse_rational(const std::string &t) {
  if (t.empty()) throw Error(ErrorCode::Parse, "empty rational");
  std::string s = t;
  if (s[0] == '+') s = s.substr(1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::Parse, "bad rational '" + t + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + t + "'");
  q.canonicalize();
  return q;
}
} // namespace detail

inline Scalar Scalar::parse(const std::string &text) {
  if (text.empty()) throw Error(ErrorCode::Parse, "empty scalar");
  if (text.back() != 'i') return Scalar(detail::parse_rational(text));
  std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+") return Scalar(mpq_class(0), mpq_class(1));
    if (body == "-") return Scalar(mpq_class(0), mpq_class(-1));
    return Scalar(mpq_class(0), detail::parse_rational(body));
  }
  std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  mpq_class imq = (im == "+") ? mpq_class(1) : (im == "-") ? mpq_class(-1) : detail::parse_rational(im);
  return Scalar(detail::parse_rational(re), imq);
}

} // namespace brst
