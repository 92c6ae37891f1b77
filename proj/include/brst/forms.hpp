#pragma once

// Differential forms and vector fields on C^m with coefficients in the
// coordinate algebra. dx_v is dz_{k+1} for v = 2k and dzb_{k+1} for v = 2k+1.

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ring.hpp"

namespace brst {

using ExteriorMask = std::uint32_t;

inline int exterior_degree(ExteriorMask m) { return std::popcount(m); }

/// Sign of dx^a ^ dx^b relative to the sorted monomial dx^{a|b}; 0 if they overlap.
inline int wedge_sign(ExteriorMask a, ExteriorMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (ExteriorMask bb = b; bb; bb &= bb - 1) {
    int k = std::countr_zero(bb);
    swaps += std::popcount(a >> (k + 1));
  }
  return (swaps % 2) ? -1 : 1;
}

/// U(1) charge of an exterior monomial (dz counts +1, dzb counts -1).
inline int exterior_charge(ExteriorMask m) {
  int q = 0;
  for (; m; m &= m - 1) q += (std::countr_zero(m) % 2 == 0) ? 1 : -1;
  return q;
}

class PolyForm {
public:
  using Terms = std::map<ExteriorMask, RingElement>;

  PolyForm() = default;
  explicit PolyForm(int m) : m_(m) {}
  /// 0-form.
  PolyForm(const RingElement &f) : m_(f.dim()) { add_term(0, f); }
  PolyForm(int m, ExteriorMask mask, const RingElement &f) : m_(m) { add_term(mask, f); }

  static PolyForm differential(int m, int v) { return PolyForm(m, ExteriorMask(1) << v, RingElement(m, Scalar(1))); }

  int dim() const { return m_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Exterior degree, or -1 for the zero form; throws on mixed degree.
  int degree() const {
    int d = -1;
    for (const auto &[mask, f] : terms_) {
      int e = exterior_degree(mask);
      if (d >= 0 && d != e) throw Error(ErrorCode::Internal, "form of mixed degree");
      d = e;
    }
    return d;
  }

  RingElement coefficient(ExteriorMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? RingElement(m_) : it->second;
  }

  void add_term(ExteriorMask mask, const RingElement &f) {
    if (f.is_zero()) return;
    auto [it, ins] = terms_.emplace(mask, f);
    if (!ins) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PolyForm &operator+=(const PolyForm &o) {
    for (const auto &[mask, f] : o.terms_) add_term(mask, f);
    return *this;
  }
  PolyForm &operator-=(const PolyForm &o) {
    for (const auto &[mask, f] : o.terms_) add_term(mask, -f);
    return *this;
  }
  friend PolyForm operator+(PolyForm a, const PolyForm &b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm &b) { return a -= b; }
  PolyForm operator-() const { return *this * Scalar(-1); }
  friend PolyForm operator*(const PolyForm &a, const Scalar &c) {
    PolyForm r(a.m_);
    for (const auto &[mask, f] : a.terms_) r.add_term(mask, f * c);
    return r;
  }
  friend PolyForm operator*(const RingElement &g, const PolyForm &a) {
    PolyForm r(a.m_);
    for (const auto &[mask, f] : a.terms_) r.add_term(mask, g * f);
    return r;
  }

  friend PolyForm wedge(const PolyForm &a, const PolyForm &b) {
    PolyForm r(a.m_);
    for (const auto &[ma, fa] : a.terms_)
      for (const auto &[mb, fb] : b.terms_) {
        int sg = wedge_sign(ma, mb);
        if (sg == 0) continue;
        r.add_term(ma | mb, sg > 0 ? fa * fb : -(fa * fb));
      }
    return r;
  }

  /// Apply a map to every coefficient.
  template <typename F>
  PolyForm map_coefficients(F &&f) const {
    PolyForm r(m_);
    for (const auto &[mask, c] : terms_) r.add_term(mask, f(c));
    return r;
  }

  friend bool operator==(const PolyForm &a, const PolyForm &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PolyForm &a, const PolyForm &b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto &[mask, f] : terms_) {
      if (!out.empty()) out += " + ";
      out += f.to_string();
      for (int v = 0; v < 2 * m_; ++v)
        if (mask & (ExteriorMask(1) << v)) out += " d" + variable_name(v);
    }
    return out;
  }

private:
  int m_ = 0;
  Terms terms_;
};

class PolyVectorField {
public:
  PolyVectorField() = default;
  explicit PolyVectorField(int m) : m_(m), comp_(2 * m, RingElement(m)) {}
  PolyVectorField(int m, std::vector<RingElement> components) : m_(m), comp_(std::move(components)) {
    if (static_cast<int>(comp_.size()) != 2 * m) throw Error(ErrorCode::DimensionMismatch, "vector field size");
  }

  int dim() const { return m_; }
  const RingElement &component(int v) const { return comp_[v]; }
  RingElement &component(int v) { return comp_[v]; }
  const std::vector<RingElement> &components() const { return comp_; }

  bool is_zero() const {
    for (const auto &c : comp_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// X(f) = sum_v X^v d_v f
  RingElement apply(const RingElement &f) const {
    RingElement r(m_);
    for (int v = 0; v < 2 * m_; ++v)
      if (!comp_[v].is_zero()) r += comp_[v] * f.derivative(v);
    return r;
  }

  friend PolyVectorField bracket(const PolyVectorField &x, const PolyVectorField &y) {
    PolyVectorField r(x.m_);
    for (int v = 0; v < 2 * x.m_; ++v) r.comp_[v] = x.apply(y.comp_[v]) - y.apply(x.comp_[v]);
    return r;
  }

  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField &b) {
    for (int v = 0; v < 2 * a.m_; ++v) a.comp_[v] += b.comp_[v];
    return a;
  }
  friend PolyVectorField operator*(const Scalar &c, PolyVectorField a) {
    for (auto &x : a.comp_) x *= c;
    return a;
  }
  friend bool operator==(const PolyVectorField &a, const PolyVectorField &b) { return a.comp_ == b.comp_; }

private:
  int m_ = 0;
  std::vector<RingElement> comp_;
};

inline PolyForm exterior_derivative(const PolyForm &a) {
  const int m = a.dim();
  PolyForm r(m);
  for (const auto &[mask, f] : a.terms()) {
    for (int v = 0; v < 2 * m; ++v) {
      ExteriorMask dv = ExteriorMask(1) << v;
      int sg = wedge_sign(dv, mask);
      if (sg == 0) continue;
      RingElement df = f.derivative(v);
      if (df.is_zero()) continue;
      r.add_term(mask | dv, sg > 0 ? df : -df);
    }
  }
  return r;
}

/// Interior product, a graded antiderivation of degree -1. Zero on 0-forms.
inline PolyForm insert(const PolyVectorField &x, const PolyForm &a) {
  const int m = a.dim();
  PolyForm r(m);
  for (const auto &[mask, f] : a.terms()) {
    int pos = 0;
    for (ExteriorMask mm = mask; mm; mm &= mm - 1, ++pos) {
      int v = std::countr_zero(mm);
      const RingElement &xv = x.component(v);
      if (xv.is_zero()) continue;
      RingElement t = xv * f;
      r.add_term(mask & ~(ExteriorMask(1) << v), pos % 2 ? -t : t);
    }
  }
  return r;
}

/// Cartan formula L_X = d ins_X + ins_X d.
inline PolyForm lie_derivative(const PolyVectorField &x, const PolyForm &a) {
  return exterior_derivative(insert(x, a)) + insert(x, exterior_derivative(a));
}

} // namespace brst
