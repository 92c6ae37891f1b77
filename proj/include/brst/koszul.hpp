#pragma once

// Koszul complex C(M) (x) Lambda g with delta = ins(J), the prolongation off
// the sphere, restriction and the homotopy h0.

#include <map>
#include <string>
#include <vector>

#include "star_product.hpp"
#include "submanifold.hpp"

namespace brst {

/// Lambda g valued function series; masks index exterior monomials e_{a1} ^ ... ^ e_{ak}.
class KoszulChain {
public:
  using Terms = std::map<ExteriorMask, NuFunction>;

  KoszulChain() = default;
  KoszulChain(int m, int rank, int truncation = kDefaultNuOrder) : m_(m), rank_(rank), truncation_(truncation) {}

  static KoszulChain scalar(const NuFunction &f, int rank) {
    KoszulChain x(f.coefficients().empty() ? 0 : f.coefficients().begin()->second.dim(), rank, f.truncation());
    x.add_term(0, f);
    return x;
  }
  /// f (x) e_{a}
  static KoszulChain generator(const RingElement &f, int rank, int a, int truncation = kDefaultNuOrder) {
    KoszulChain x(f.dim(), rank, truncation);
    x.add_term(ExteriorMask(1) << a, constant_series(f, truncation));
    return x;
  }

  int dim() const { return m_; }
  int rank() const { return rank_; }
  int truncation() const { return truncation_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(ExteriorMask mask, const NuFunction &f) {
    if (mask >> rank_) throw Error(ErrorCode::DimensionMismatch, "exterior index beyond the Lie algebra rank");
    if (f.is_zero()) return;
    auto [it, ins] = terms_.emplace(mask, f.truncation() == truncation_ ? f : f.truncated_to(truncation_));
    if (!ins) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NuFunction component(ExteriorMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? NuFunction(truncation_) : it->second;
  }

  /// Lambda-degree, -1 for zero; throws on mixed degree.
  int degree() const {
    int d = -1;
    for (const auto &[mask, f] : terms_) {
      int e = exterior_degree(mask);
      if (d >= 0 && d != e) throw Error(ErrorCode::Internal, "chain of mixed degree");
      d = e;
    }
    return d;
  }

  template <class F> KoszulChain map_coefficients(F &&f) const {
    KoszulChain out(m_, rank_, truncation_);
    for (const auto &[mask, c] : terms_) out.add_term(mask, f(c));
    return out;
  }

  KoszulChain &operator+=(const KoszulChain &o) {
    for (const auto &[mask, c] : o.terms_) add_term(mask, c);
    return *this;
  }
  KoszulChain &operator-=(const KoszulChain &o) {
    for (const auto &[mask, c] : o.terms_) add_term(mask, -c);
    return *this;
  }
  friend KoszulChain operator+(KoszulChain a, const KoszulChain &b) { return a += b; }
  friend KoszulChain operator-(KoszulChain a, const KoszulChain &b) { return a -= b; }

  friend bool operator==(const KoszulChain &a, const KoszulChain &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const KoszulChain &a, const KoszulChain &b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto &[mask, f] : terms_) {
      for (const auto &[k, c] : f.coefficients()) {
        if (!out.empty()) out += " + ";
        out += "nu^" + std::to_string(k) + " (" + c.to_string() + ")";
        for (int a = 0; a < rank_; ++a)
          if (mask >> a & 1) out += " e" + std::to_string(a + 1);
      }
    }
    return out;
  }

private:
  int m_ = 0;
  int rank_ = 0;
  int truncation_ = kDefaultNuOrder;
  Terms terms_;
};

/// Contraction with the dual basis vector e^a, an antiderivation on Lambda g.
inline KoszulChain ins_dual(const KoszulChain &x, int a) {
  KoszulChain out(x.dim(), x.rank(), x.truncation());
  for (const auto &[mask, f] : x.terms()) {
    if (!(mask >> a & 1)) continue;
    int pos = std::popcount(mask & ((ExteriorMask(1) << a) - 1));
    out.add_term(mask & ~(ExteriorMask(1) << a), pos % 2 ? -f : f);
  }
  return out;
}

/// e_c ^ x
inline KoszulChain wedge_generator(int c, const KoszulChain &x) {
  KoszulChain out(x.dim(), x.rank(), x.truncation());
  ExteriorMask bit = ExteriorMask(1) << c;
  for (const auto &[mask, f] : x.terms()) {
    int sign = wedge_sign(bit, mask);
    if (sign == 0) continue;
    out.add_term(mask | bit, sign < 0 ? -f : f);
  }
  return out;
}

/// delta = ins(J) = sum_a J_a ins(e^a)
inline KoszulChain delta(const KoszulChain &x, const std::vector<RingElement> &j) {
  KoszulChain out(x.dim(), x.rank(), x.truncation());
  for (int a = 0; a < x.rank(); ++a) {
    KoszulChain c = ins_dual(x, a);
    out += c.map_coefficients([&](const NuFunction &f) { return f.map([&](const RingElement &g) { return g * j[a]; }); });
  }
  return out;
}

/// Evaluate a function on C at z/|z|: the degree-d piece picks up s^{-d}.
inline RingElement prolong(const Poly &phi) {
  const int m = phi.nvars() / 2;
  RingElement out(m);
  for (const auto &[d, piece] : phi.homogeneous_parts()) {
    RingElement p(piece);
    if (d % 2 == 0)
      p *= RingElement::w(m).pow(d / 2);
    else
      p *= RingElement::s(m) * RingElement::w(m).pow((d + 1) / 2);
    out += p;
  }
  return out;
}

inline NuFunction prolong(const NuSeries<Poly> &phi) {
  return phi.map([](const Poly &p) { return prolong(p); });
}

/// Coefficient of h0 f = e (x) (f - prol iota^* f) / J for the rank-one momentum map J.
inline RingElement h0_coefficient(const RingElement &f, const RingElement &j) {
  RingElement rest = f - prolong(iota_star(f));
  if (rest.is_zero()) return RingElement(f.dim());
  if (!j.is_polynomial()) throw Error(ErrorCode::Internal, "momentum map must be polynomial");
  auto q = divide_exact(rest, j.as_polynomial());
  if (!q) throw Error(ErrorCode::Internal, "h0: f - prol iota^* f is not divisible by J");
  return *q;
}

inline KoszulChain h0(const NuFunction &f, const RingElement &j) {
  KoszulChain out(j.dim(), 1, f.truncation());
  out.add_term(1, f.map([&](const RingElement &g) { return h0_coefficient(g, j); }));
  return out;
}

inline KoszulChain h0(const RingElement &f, const RingElement &j, int truncation = kDefaultNuOrder) {
  return h0(constant_series(f, truncation), j);
}

} // namespace brst
