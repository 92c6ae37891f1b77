#pragma once

// The coordinate algebra of C^{m} \ {0}:
//
//   A = Q(i)[z, zb, w, s, (1+s)^{-1}] / (s^2 = r, w r = 1),  r = sum_k z_k zb_k.
//
// An element is (even + odd * s) / (1+s)^j with even, odd in Q(i)[z, zb][1/r].
// Each of even and odd is stored as p * w^k with k minimal, and j is minimal,
// which makes the representation canonical.

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace brst {

/// p * w^k = p / r^k, k >= 0 minimal.
class WPoly {
public:
  WPoly() = default;
  explicit WPoly(int m) : p_(2 * m), m_(m) {}
  WPoly(Poly p, int k) : p_(std::move(p)), k_(k), m_(p_.nvars() / 2) { normalize(); }

  int dim() const { return m_; }
  const Poly &numerator() const { return p_; }
  int w_power() const { return k_; }
  bool is_zero() const { return p_.is_zero(); }

  friend WPoly operator+(const WPoly &a, const WPoly &b) {
    int K = std::max(a.k_, b.k_);
    Poly r = Poly::radius_squared(a.p_.nvars());
    Poly pa = a.k_ == K ? a.p_ : a.p_ * r.pow(K - a.k_);
    Poly pb = b.k_ == K ? b.p_ : b.p_ * r.pow(K - b.k_);
    return WPoly(pa + pb, K);
  }
  WPoly operator-() const { return WPoly(-p_, k_); }
  friend WPoly operator-(const WPoly &a, const WPoly &b) { return a + (-b); }
  friend WPoly operator*(const WPoly &a, const WPoly &b) { return WPoly(a.p_ * b.p_, a.k_ + b.k_); }
  friend WPoly operator*(const WPoly &a, const Scalar &c) { return WPoly(a.p_ * c, a.k_); }

  WPoly times_r() const {
    if (k_ > 0) {
      WPoly out = *this;
      out.k_ -= 1;
      return out;
    }
    return WPoly(p_ * Poly::radius_squared(p_.nvars()), 0);
  }

  WPoly derivative(int v) const {
    if (k_ == 0) return WPoly(p_.derivative(v), 0);
    Poly r = Poly::radius_squared(p_.nvars());
    Poly dr = r.derivative(v);
    return WPoly(p_.derivative(v) * r - p_ * dr * Scalar(k_), k_ + 1);
  }

  WPoly conj() const { return WPoly(p_.conj(), k_); }

  /// Exact division by a polynomial g coprime to r.
  std::optional<WPoly> divide_exact(const Poly &g) const {
    auto q = p_.divide_exact(g);
    if (!q) return std::nullopt;
    return WPoly(std::move(*q), k_);
  }

  friend bool operator==(const WPoly &a, const WPoly &b) { return a.k_ == b.k_ && a.p_ == b.p_; }
  friend bool operator!=(const WPoly &a, const WPoly &b) { return !(a == b); }
  friend bool operator<(const WPoly &a, const WPoly &b) {
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.p_ < b.p_;
  }

private:
  void normalize() {
    if (p_.is_zero()) {
      k_ = 0;
      return;
    }
    if (k_ == 0) return;
    Poly r = Poly::radius_squared(p_.nvars());
    while (k_ > 0) {
      auto q = p_.divide_exact(r);
      if (!q) break;
      p_ = std::move(*q);
      --k_;
    }
  }

  Poly p_;
  int k_ = 0;
  int m_ = 0;
};

class RingElement {
public:
  RingElement() = default;
  /// Zero element of the algebra on C^m.
  explicit RingElement(int m) : even_(m), odd_(m), m_(m) {}
  RingElement(int m, const Scalar &c) : even_(Poly(2 * m, c), 0), odd_(m), m_(m) {}
  RingElement(const Poly &p) : even_(p, 0), odd_(p.nvars() / 2), m_(p.nvars() / 2) {}
  RingElement(WPoly even, WPoly odd, int denominator_power = 0)
      : even_(std::move(even)), odd_(std::move(odd)), j_(denominator_power), m_(even_.dim()) {
    normalize();
  }

  static RingElement z(int m, int k) { return RingElement(Poly::var(2 * m, 2 * k)); }
  static RingElement zb(int m, int k) { return RingElement(Poly::var(2 * m, 2 * k + 1)); }
  /// s = |z|
  static RingElement s(int m) { return RingElement(WPoly(m), WPoly(Poly(2 * m, Scalar(1)), 0)); }
  /// w = |z|^{-2}
  static RingElement w(int m) { return RingElement(WPoly(Poly(2 * m, Scalar(1)), 1), WPoly(m)); }
  /// (1+s)^{-1}
  static RingElement inverse_one_plus_s(int m) {
    return RingElement(WPoly(Poly(2 * m, Scalar(1)), 0), WPoly(m), 1);
  }
  static RingElement radius_squared(int m) { return RingElement(Poly::radius_squared(2 * m)); }

  int dim() const { return m_; }
  int nvars() const { return 2 * m_; }
  const WPoly &even_part() const { return even_; }
  const WPoly &odd_part() const { return odd_; }
  int denominator_power() const { return j_; }

  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }
  /// True when the element is a plain polynomial in z, zb.
  bool is_polynomial() const { return odd_.is_zero() && j_ == 0 && even_.w_power() == 0; }
  const Poly &as_polynomial() const {
    if (!is_polynomial()) throw Error(ErrorCode::Internal, "element is not a polynomial");
    return even_.numerator();
  }

  friend RingElement operator+(const RingElement &a, const RingElement &b) {
    check(a, b);
    if (a.j_ == b.j_) return RingElement(a.even_ + b.even_, a.odd_ + b.odd_, a.j_);
    int J = std::max(a.j_, b.j_);
    auto [ea, oa] = a.raise_denominator(J - a.j_);
    auto [eb, ob] = b.raise_denominator(J - b.j_);
    return RingElement(ea + eb, oa + ob, J);
  }
  RingElement operator-() const { return RingElement(-even_, -odd_, j_); }
  friend RingElement operator-(const RingElement &a, const RingElement &b) { return a + (-b); }
  friend RingElement operator*(const RingElement &a, const RingElement &b) {
    check(a, b);
    WPoly e = a.even_ * b.even_ + (a.odd_ * b.odd_).times_r();
    WPoly o = a.even_ * b.odd_ + a.odd_ * b.even_;
    return RingElement(std::move(e), std::move(o), a.j_ + b.j_);
  }
  friend RingElement operator*(const RingElement &a, const Scalar &c) {
    return RingElement(a.even_ * c, a.odd_ * c, a.j_);
  }
  friend RingElement operator*(const Scalar &c, const RingElement &a) { return a * c; }
  RingElement &operator+=(const RingElement &o) { return *this = *this + o; }
  RingElement &operator-=(const RingElement &o) { return *this = *this - o; }
  RingElement &operator*=(const RingElement &o) { return *this = *this * o; }
  RingElement &operator*=(const Scalar &c) { return *this = *this * c; }

  RingElement pow(int e) const {
    RingElement r(m_, Scalar(1));
    for (int k = 0; k < e; ++k) r *= *this;
    return r;
  }

  /// Derivation d/d(variable v), extended by ds/dz_k = zb_k s w / 2,
  /// dw/dz_k = -zb_k w^2 (and conjugate rules).
  RingElement derivative(int v) const {
    Poly x = Poly::var(2 * m_, v % 2 == 0 ? v + 1 : v - 1);
    RingElement ds(WPoly(m_), WPoly(x * Scalar::rational(1, 2), 1));
    RingElement num(even_.derivative(v), odd_.derivative(v), 0);
    RingElement odd_only(odd_, WPoly(m_), 0);
    num += odd_only * ds;
    if (j_ == 0) return num;
    RingElement self_num(even_, odd_, 0);
    RingElement one_plus_s = RingElement(m_, Scalar(1)) + s(m_);
    RingElement top = num * one_plus_s - self_num * ds * Scalar(j_);
    return RingElement(top.even_, top.odd_, top.j_ + j_ + 1);
  }

  /// Complex conjugation: z_k <-> zb_k, fixes s and w.
  RingElement conj() const { return RingElement(even_.conj(), odd_.conj(), j_); }

  /// Restriction to the sphere r = 1: s, w -> 1, then the canonical remainder mod (r - 1).
  Poly restrict_to_sphere() const {
    Poly p = even_.numerator() + odd_.numerator();
    if (j_ > 0) p *= Scalar(mpq_class(1, 1u << j_));
    return p.divide(sphere_equation(m_)).second;
  }

  /// r - 1
  static Poly sphere_equation(int m) { return Poly::radius_squared(2 * m) - Poly(2 * m, Scalar(1)); }

  /// True if all monomials have U(1) charge zero.
  bool is_invariant() const {
    return even_.numerator().is_charge_homogeneous(0) && odd_.numerator().is_charge_homogeneous(0);
  }

  /// Value at a point z (given as z_1, zb_1, ...) where s takes the value s_value, s_value^2 = r(z).
  Scalar evaluate(const std::vector<Scalar> &point, const Scalar &s_value) const {
    Scalar r = Poly::radius_squared(2 * m_).evaluate(point);
    if (r.is_zero()) throw Error(ErrorCode::NotDivisible, "evaluation at the origin");
    auto val = [&](const WPoly &wp) {
      Scalar v = wp.numerator().evaluate(point);
      for (int k = 0; k < wp.w_power(); ++k) v /= r;
      return v;
    };
    Scalar num = val(even_) + val(odd_) * s_value;
    Scalar den(1);
    for (int k = 0; k < j_; ++k) den *= (Scalar(1) + s_value);
    return num / den;
  }

  friend bool operator==(const RingElement &a, const RingElement &b) {
    return a.m_ == b.m_ && a.j_ == b.j_ && a.even_ == b.even_ && a.odd_ == b.odd_;
  }
  friend bool operator!=(const RingElement &a, const RingElement &b) { return !(a == b); }
  friend bool operator<(const RingElement &a, const RingElement &b) {
    return std::tie(a.m_, a.j_, a.even_, a.odd_) < std::tie(b.m_, b.j_, b.even_, b.odd_);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    auto part = [](const WPoly &wp) {
      std::string t = "(" + wp.numerator().to_string() + ")";
      if (wp.w_power() > 0) t += "*w" + (wp.w_power() > 1 ? "^" + std::to_string(wp.w_power()) : "");
      return t;
    };
    std::string out;
    if (!even_.is_zero()) out = part(even_);
    if (!odd_.is_zero()) out += (out.empty() ? "" : " + ") + part(odd_) + "*s";
    if (j_ > 0) out = "[" + out + "]/(1+s)" + (j_ > 1 ? "^" + std::to_string(j_) : "");
    return out;
  }

private:
  static void check(const RingElement &a, const RingElement &b) {
    if (a.m_ != b.m_) throw Error(ErrorCode::DimensionMismatch, "ring elements over different dimensions");
  }

  /// Numerator multiplied by (1+s)^e.
  std::pair<WPoly, WPoly> raise_denominator(int e) const {
    WPoly E = even_, O = odd_;
    for (int k = 0; k < e; ++k) {
      WPoly nE = E + O.times_r();
      WPoly nO = E + O;
      E = std::move(nE);
      O = std::move(nO);
    }
    return {E, O};
  }

  void normalize() {
    if (is_zero()) {
      j_ = 0;
      return;
    }
    // (1+s) | a  iff  a (1-s) is divisible by (1-r).
    Poly one_minus_r = -sphere_equation(m_);
    while (j_ > 0) {
      WPoly a = even_ - odd_.times_r();
      WPoly b = odd_ - even_;
      auto qa = a.divide_exact(one_minus_r);
      if (!qa) break;
      auto qb = b.divide_exact(one_minus_r);
      if (!qb) break;
      even_ = std::move(*qa);
      odd_ = std::move(*qb);
      --j_;
    }
  }

  WPoly even_;
  WPoly odd_;
  int j_ = 0;
  int m_ = 0;
};

/// Exact quotient f / g by a pure polynomial g, or nullopt when g does not divide f in A.
///
/// The even and odd parts are divided separately (after clearing w-powers).
/// For g proportional to r - 1 = (s - 1)(s + 1) the factor (1 + s) is moved
/// into the denominator first.
inline std::optional<RingElement> divide_exact(const RingElement &f, const Poly &g) {
  if (g.is_zero()) throw Error(ErrorCode::NotDivisible, "division by zero");
  if (f.is_zero()) return RingElement(f.dim());
  const int m = f.dim();
  const WPoly &E = f.even_part();
  const WPoly &O = f.odd_part();
  auto try_parts = [&](const WPoly &e, const WPoly &o, int j) -> std::optional<RingElement> {
    Poly r = Poly::radius_squared(2 * m);
    int bound = std::max(0, g.degree());
    for (int t = 0; t <= bound; ++t) {
      Poly rt = r.pow(t);
      auto qe = (e.numerator() * rt).divide_exact(g);
      auto qo = (o.numerator() * rt).divide_exact(g);
      if (qe && qo) return RingElement(WPoly(*qe, e.w_power() + t), WPoly(*qo, o.w_power() + t), j);
    }
    return std::nullopt;
  };
  if (auto q = try_parts(E, O, f.denominator_power())) return q;

  Poly sphere = RingElement::sphere_equation(m);
  if (g.degree() == 2 && g.size() == sphere.size()) {
    Scalar c = g.leading_coefficient();
    if (g == sphere * c) {
      // f / (r-1) = [a (1+s) / (r-1)] / (1+s)^{j+1}
      WPoly e2 = E + O.times_r();
      WPoly o2 = E + O;
      auto qe = e2.divide_exact(sphere);
      auto qo = o2.divide_exact(sphere);
      if (qe && qo) return RingElement(*qe * c.inverse(), *qo * c.inverse(), f.denominator_power() + 1);
    }
  }
  return std::nullopt;
}

} // namespace brst
