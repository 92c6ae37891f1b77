#pragma once

// Quantized Koszul operator, deformed restriction I^*, and the reduced star
// product on invariant functions on C.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "koszul.hpp"
#include "lie_algebra.hpp"

namespace brst {

using NuScalar = NuSeries<Scalar>;

struct QuantizedKoszulConfig {
  NuScalar kappa;
  QuantumMomentumMap qmm;
  StarProduct star;
  LieAlgebraData lie;
  /// classical momentum map, used by delta and h0
  std::vector<RingElement> momentum_map;
  int truncation = kDefaultNuOrder;

  int dim() const { return star.m; }
  int rank() const { return lie.dimension(); }
};

/// d x = ins(e^a) x * J_a + nu/2 C_ab^c e_c ^ ins(e^a) ins(e^b) x + nu kappa ins(Delta) x
inline KoszulChain quantized_koszul(const KoszulChain &x, const QuantizedKoszulConfig &cfg) {
  const int r = cfg.rank();
  KoszulChain out(x.dim(), x.rank(), x.truncation());
  for (int a = 0; a < r; ++a) {
    KoszulChain ia = ins_dual(x, a);
    out += ia.map_coefficients([&](const NuFunction &f) { return cfg.star.star(f, cfg.qmm.values[a]); });
  }
  const Scalar half = Scalar::rational(1, 2);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      KoszulChain iab;
      bool have = false;
      for (int c = 0; c < r; ++c) {
        const Scalar &k = cfg.lie.structure_constant(a, b, c);
        if (k.is_zero()) continue;
        if (!have) {
          iab = ins_dual(ins_dual(x, b), a);
          have = true;
        }
        Scalar w = half * k;
        out += wedge_generator(c, iab).map_coefficients(
            [&](const NuFunction &f) { return f.map([&](const RingElement &g) { return g * w; }).shifted(1); });
      }
    }
  std::vector<Scalar> delta_form = cfg.lie.modular_form();
  for (int a = 0; a < r; ++a) {
    if (delta_form[a].is_zero() || cfg.kappa.is_zero()) continue;
    KoszulChain ia = ins_dual(x, a);
    out += ia.map_coefficients([&](const NuFunction &f) {
      NuFunction t = cfg.kappa.convolve(f, [&](const Scalar &k, const RingElement &g) { return g * (k * delta_form[a]); });
      return t.shifted(1);
    });
  }
  return out;
}

/// Restrict a series coefficient-wise to C.
inline NuSeries<Poly> iota_star(const NuFunction &f) {
  return f.map([](const RingElement &g) { return iota_star(g); });
}

/// I^* = iota^* sum_m (-(d_1 - delta_1) h0)^m; rank one.
inline NuSeries<Poly> I_star(const NuFunction &f, const QuantizedKoszulConfig &cfg) {
  if (cfg.rank() != 1) throw Error(ErrorCode::Internal, "I_star is implemented for rank one");
  const RingElement &j = cfg.momentum_map[0];
  NuFunction total = f;
  NuFunction term = f;
  bool cut = true;
  for (int step = 0; step <= f.truncation() + 1; ++step) {
    KoszulChain h = h0(term, j);
    KoszulChain a = quantized_koszul(h, cfg) - delta(h, cfg.momentum_map);
    term = -a.component(0);
    if (term.is_zero()) {
      cut = false;
      break;
    }
    total += term;
  }
  NuSeries<Poly> out = iota_star(total);
  if (cut || total.truncated()) out.mark_truncated();
  return out;
}

inline NuSeries<Poly> I_star(const RingElement &f, const QuantizedKoszulConfig &cfg) {
  return I_star(constant_series(f, cfg.truncation), cfg);
}

/// Membership in the left ideal generated by the quantum momentum map.
inline bool in_ideal(const NuFunction &f, const QuantizedKoszulConfig &cfg) { return I_star(f, cfg).is_zero(); }

/// [f, g * J] stays in the ideal for all monomials g of degree <= bound.
inline bool in_normalizer(const NuFunction &f, const QuantizedKoszulConfig &cfg, int bound,
                          std::string *witness = nullptr) {
  for (const auto &[k, c] : f.coefficients()) {
    if (!c.is_polynomial()) continue;
    if (c.as_polynomial().degree() > bound)
      throw Error(ErrorCode::DegreeBoundExceeded, "normalizer test input exceeds the degree bound");
  }
  const int m = cfg.dim();
  for (const auto &mono : monomials_up_to(2 * m, bound)) {
    NuFunction g = constant_series(RingElement(Poly(2 * m, mono)), cfg.truncation);
    for (int a = 0; a < cfg.rank(); ++a) {
      NuFunction gj = cfg.star.star(g, cfg.qmm.values[a]);
      if (!in_ideal(cfg.star.commutator(f, gj), cfg)) {
        if (witness) *witness = RingElement(Poly(2 * m, mono)).to_string();
        return false;
      }
    }
  }
  return true;
}

/// Standard charge-zero monomials: a basis of invariant functions on C (mod r - 1).
inline bool is_standard_invariant(const Monomial &mono) {
  return mono.charge() == 0 && !(mono.exp[0] > 0 && mono.exp[1] > 0);
}

inline std::vector<Monomial> reduced_basis(int m, int bound) {
  std::vector<Monomial> out;
  for (const auto &mono : monomials_up_to(2 * m, bound))
    if (is_standard_invariant(mono)) out.push_back(mono);
  std::reverse(out.begin(), out.end());  // ascending degree
  return out;
}

/// A function on M_red, stored by its canonical normal form on C.
class ReducedFunction {
public:
  ReducedFunction() = default;
  explicit ReducedFunction(Poly normal_form) : nf_(std::move(normal_form)) {}

  /// From an invariant representative in the coordinate algebra.
  static ReducedFunction from_representative(const RingElement &f) {
    if (!f.is_invariant()) throw Error(ErrorCode::NotInvariant, "reduced functions need U(1)-invariant input");
    return ReducedFunction(iota_star(f));
  }
  /// h_jk = z_j zb_k w, with 1-based indices.
  static ReducedFunction h(int m, int j, int k) {
    return from_representative(RingElement::z(m, j - 1) * RingElement::zb(m, k - 1) * RingElement::w(m));
  }

  const Poly &normal_form() const { return nf_; }
  bool is_zero() const { return nf_.is_zero(); }
  /// prol(pi^* u): balanced-degree representative sum c z^a zb^b w^{|a|}.
  RingElement representative() const { return prolong(nf_); }

  friend ReducedFunction operator+(const ReducedFunction &a, const ReducedFunction &b) { return ReducedFunction(a.nf_ + b.nf_); }
  friend ReducedFunction operator-(const ReducedFunction &a, const ReducedFunction &b) { return ReducedFunction(a.nf_ - b.nf_); }
  friend ReducedFunction operator*(const ReducedFunction &a, const Scalar &c) { return ReducedFunction(a.nf_ * c); }
  friend bool operator==(const ReducedFunction &a, const ReducedFunction &b) { return a.nf_ == b.nf_; }
  friend bool operator!=(const ReducedFunction &a, const ReducedFunction &b) { return !(a == b); }
  std::string to_string() const { return nf_.to_string(); }

private:
  Poly nf_{2};
};

using NuReduced = NuSeries<Poly>;

struct MonomialPairLess {
  bool operator()(const std::pair<Monomial, Monomial> &a, const std::pair<Monomial, Monomial> &b) const {
    if (a.first != b.first) return a.first.exp < b.first.exp;
    return a.second.exp < b.second.exp;
  }
};

/// u *_red v = I^*(prol u * prol v), memoized on pairs of basis monomials.
class ReducedSpace {
public:
  explicit ReducedSpace(QuantizedKoszulConfig cfg) : cfg_(std::move(cfg)) {}

  const QuantizedKoszulConfig &config() const { return cfg_; }
  int dim() const { return cfg_.dim(); }
  int truncation() const { return cfg_.truncation; }

  /// Product of two standard invariant monomials through the configured order.
  const NuReduced &monomial_product(const Monomial &a, const Monomial &b) const {
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const int nv = 2 * dim();
    RingElement pa = prolong(Poly(nv, a)), pb = prolong(Poly(nv, b));
    NuFunction prod = cfg_.star.star(pa, pb, cfg_.truncation);
    NuReduced res = I_star(prod, cfg_);
    if (prod.truncated()) res.mark_truncated();
    return memo_.emplace(key, std::move(res)).first->second;
  }

  NuReduced product(const Poly &u, const Poly &v) const {
    NuReduced out(cfg_.truncation);
    bool cut = false;
    for (const auto &[ma, ca] : u.terms())
      for (const auto &[mb, cb] : v.terms()) {
        const NuReduced &p = monomial_product(ma, mb);
        cut = cut || p.truncated();
        Scalar c = ca * cb;
        for (const auto &[k, poly] : p.coefficients()) out.add(k, poly * c);
      }
    if (cut) out.mark_truncated();
    return out;
  }

  NuReduced product(const NuReduced &u, const NuReduced &v) const {
    NuReduced out(std::min({u.truncation(), v.truncation(), cfg_.truncation}));
    bool cut = u.truncated() || v.truncated();
    for (const auto &[i, a] : u.coefficients())
      for (const auto &[j, b] : v.coefficients()) {
        if (i + j > out.truncation()) continue;
        NuReduced p = product(a, b);
        cut = cut || p.truncated();
        for (const auto &[k, poly] : p.coefficients()) out.add(i + j + k, poly);
      }
    if (cut) out.mark_truncated();
    return out;
  }

  NuReduced product(const ReducedFunction &u, const ReducedFunction &v) const {
    return product(u.normal_form(), v.normal_form());
  }

  std::size_t memo_size() const { return memo_.size(); }

private:
  QuantizedKoszulConfig cfg_;
  mutable std::map<std::pair<Monomial, Monomial>, NuReduced, MonomialPairLess> memo_;
};

} // namespace brst
