#pragma once

// Multivariate polynomials over Q(i) in z_1, zb_1, ..., z_m, zb_m.
//
// Variable 2k is z_{k+1}, variable 2k+1 is zb_{k+1}. Terms are kept in
// degree-lexicographic order with z_1 > zb_1 > ... > z_m > zb_m, largest
// term first.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace brst {

inline constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  /// U(1) charge: holomorphic minus antiholomorphic degree.
  int charge() const {
    int q = 0;
    for (int v = 0; v < kMaxVars; ++v) q += (v % 2 == 0) ? exp[v] : -int(exp[v]);
    return q;
  }
  int holomorphic_degree() const {
    int d = 0;
    for (int v = 0; v < kMaxVars; v += 2) d += exp[v];
    return d;
  }
  bool divides(const Monomial &o) const {
    for (int v = 0; v < kMaxVars; ++v)
      if (exp[v] > o.exp[v]) return false;
    return true;
  }
  Monomial operator*(const Monomial &o) const {
    Monomial r;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = exp[v] + o.exp[v];
      if (e > 255) throw Error(ErrorCode::DegreeBoundExceeded, "exponent overflow");
      r.exp[v] = static_cast<std::uint8_t>(e);
    }
    return r;
  }
  Monomial operator/(const Monomial &o) const {
    Monomial r;
    for (int v = 0; v < kMaxVars; ++v) r.exp[v] = static_cast<std::uint8_t>(exp[v] - o.exp[v]);
    return r;
  }
  Monomial conj() const {
    Monomial r;
    for (int v = 0; v + 1 < kMaxVars; v += 2) {
      r.exp[v] = exp[v + 1];
      r.exp[v + 1] = exp[v];
    }
    return r;
  }
  static Monomial var(int v, int power = 1) {
    Monomial m;
    m.exp[v] = static_cast<std::uint8_t>(power);
    return m;
  }

  friend bool operator==(const Monomial &a, const Monomial &b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial &a, const Monomial &b) { return a.exp != b.exp; }
};

/// Degree-lexicographic comparison; true when a is larger than b.
struct DegLexGreater {
  bool operator()(const Monomial &a, const Monomial &b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.exp > b.exp;
  }
};

inline std::string variable_name(int v) {
  return (v % 2 == 0 ? "z" : "zb") + std::to_string(v / 2 + 1);
}

class Poly {
public:
  using Terms = std::map<Monomial, Scalar, DegLexGreater>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw Error(ErrorCode::DimensionMismatch, "too many variables");
  }
  Poly(int nvars, const Scalar &c) : Poly(nvars) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  Poly(int nvars, const Monomial &m, const Scalar &c = Scalar(1)) : Poly(nvars) {
    if (!c.is_zero()) terms_.emplace(m, c);
  }

  static Poly var(int nvars, int v) { return Poly(nvars, Monomial::var(v)); }
  /// r = sum_k z_k zb_k
  static Poly radius_squared(int nvars) {
    Poly p(nvars);
    for (int v = 0; v + 1 < nvars; v += 2) {
      Monomial m;
      m.exp[v] = 1;
      m.exp[v + 1] = 1;
      p.terms_.emplace(m, Scalar(1));
    }
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }
  Scalar constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
  const Monomial &leading_monomial() const { return terms_.begin()->first; }
  const Scalar &leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Monomial &m, const Scalar &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly &operator+=(const Poly &o) {
    check(o);
    for (const auto &[m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly &operator-=(const Poly &o) {
    check(o);
    for (const auto &[m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly &operator*=(const Scalar &s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto &[m, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(Poly a, const Scalar &s) { return a *= s; }
  friend Poly operator*(const Scalar &s, Poly a) { return a *= s; }
  Poly operator-() const { return *this * Scalar(-1); }

  friend Poly operator*(const Poly &a, const Poly &b) {
    a.check(b);
    Poly r(a.nvars_);
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly &operator*=(const Poly &o) { return *this = *this * o; }

  Poly mul_monomial(const Monomial &m, const Scalar &c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto &[mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
  }

  Poly pow(int e) const {
    Poly r(nvars_, Scalar(1));
    for (int k = 0; k < e; ++k) r *= *this;
    return r;
  }

  friend bool operator==(const Poly &a, const Poly &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }
  friend bool operator<(const Poly &a, const Poly &b) {
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const auto &x, const auto &y) {
                                          if (x.first != y.first) return DegLexGreater{}(x.first, y.first);
                                          if (x.second.re() != y.second.re()) return x.second.re() < y.second.re();
                                          return x.second.im() < y.second.im();
                                        });
  }

  Poly derivative(int v) const {
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) {
      if (m.exp[v] == 0) continue;
      Monomial d = m;
      d.exp[v] -= 1;
      r.add_term(d, c * Scalar(int(m.exp[v])));
    }
    return r;
  }

  /// Coefficientwise conjugation combined with z_k <-> zb_k.
  Poly conj() const {
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) r.terms_.emplace(m.conj(), c.conj());
    return r;
  }

  /// Map z-degree d -> homogeneous part of degree d.
  std::map<int, Poly> homogeneous_parts() const {
    std::map<int, Poly> parts;
    for (const auto &[m, c] : terms_) {
      auto [it, ins] = parts.try_emplace(m.degree(), nvars_);
      it->second.terms_.emplace(m, c);
    }
    return parts;
  }

  bool is_charge_homogeneous(int q) const {
    for (const auto &[m, c] : terms_)
      if (m.charge() != q) return false;
    return true;
  }

  /// Single-divisor multivariate division: *this = quotient * g + remainder,
  /// no term of the remainder is divisible by the leading monomial of g.
  std::pair<Poly, Poly> divide(const Poly &g) const {
    check(g);
    if (g.is_zero()) throw Error(ErrorCode::NotDivisible, "division by zero polynomial");
    Poly q(nvars_), rem(nvars_), p = *this;
    const Monomial &lg = g.leading_monomial();
    Scalar inv = g.leading_coefficient().inverse();
    while (!p.is_zero()) {
      auto it = p.terms_.begin();
      Monomial lm = it->first;
      Scalar lc = it->second;
      if (lg.divides(lm)) {
        Monomial t = lm / lg;
        Scalar f = lc * inv;
        q.add_term(t, f);
        p -= g.mul_monomial(t, f);
      } else {
        rem.terms_.emplace(lm, lc);
        p.terms_.erase(it);
      }
    }
    return {std::move(q), std::move(rem)};
  }

  std::optional<Poly> divide_exact(const Poly &g) const {
    auto [q, r] = divide(g);
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

  Scalar evaluate(const std::vector<Scalar> &point) const {
    if (static_cast<int>(point.size()) != nvars_) throw Error(ErrorCode::DimensionMismatch, "point size");
    Scalar sum;
    for (const auto &[m, c] : terms_) {
      Scalar t = c;
      for (int v = 0; v < nvars_; ++v)
        for (int e = 0; e < m.exp[v]; ++e) t *= point[v];
      sum += t;
    }
    return sum;
  }

  /// Apply f to every monomial, accumulating c * f(m).
  Poly map_terms(const std::function<Poly(const Monomial &, const Scalar &)> &f) const {
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) r += f(m, c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      std::vector<std::string> factors;
      if (!c.is_one() || m.degree() == 0) factors.push_back(c.is_real() ? c.to_string() : "(" + c.to_string() + ")");
      for (int v = 0; v < nvars_; ++v) {
        if (m.exp[v] == 0) continue;
        std::string f = variable_name(v);
        if (m.exp[v] > 1) f += "^" + std::to_string(m.exp[v]);
        factors.push_back(f);
      }
      for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? "*" : "") + factors[k];
    }
    return out;
  }

private:
  void check(const Poly &o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorCode::DimensionMismatch, "polynomials over different variable sets");
  }

  int nvars_ = 0;
  Terms terms_;
};

/// All monomials in nvars variables with total degree <= max_degree, largest first.
inline std::vector<Monomial> monomials_up_to(int nvars, int max_degree) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.exp[v] = static_cast<std::uint8_t>(e);
      rec(v + 1, left - e);
    }
    cur.exp[v] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end(), DegLexGreater{});
  return out;
}

} // namespace brst
