#pragma once

// Wick star product on C^m and quantum momentum maps.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "lie_algebra.hpp"
#include "nu_series.hpp"
#include "symplectic.hpp"

namespace brst {

using NuFunction = NuSeries<RingElement>;

namespace detail {

using MultiIndex = std::vector<int>;

/// All partial derivatives d^alpha f in the variables 2k + offset, |alpha| <= order.
inline std::map<MultiIndex, RingElement> derivative_table(const RingElement &f, int order, int offset) {
  const int m = f.dim();
  std::map<MultiIndex, RingElement> table;
  table.emplace(MultiIndex(m, 0), f);
  std::vector<MultiIndex> layer{MultiIndex(m, 0)};
  for (int r = 1; r <= order; ++r) {
    std::vector<MultiIndex> next;
    for (const auto &alpha : layer) {
      const RingElement &base = table.at(alpha);
      // extend only in variables >= the last nonzero one, so each index is built once
      int start = 0;
      for (int k = 0; k < m; ++k)
        if (alpha[k] > 0) start = k;
      for (int k = start; k < m; ++k) {
        MultiIndex beta = alpha;
        ++beta[k];
        RingElement d = base.is_zero() ? base : base.derivative(2 * k + offset);
        table.emplace(beta, d);
        next.push_back(beta);
      }
    }
    layer = std::move(next);
  }
  return table;
}

inline Scalar inverse_factorial(const MultiIndex &alpha) {
  mpz_class f = 1;
  for (int a : alpha)
    for (int k = 2; k <= a; ++k) f *= k;
  return Scalar(mpq_class(mpz_class(1), f));
}

} // namespace detail

struct StarProduct {
  int m = 1;
  /// weight of nu per contraction: C_r = lambda^r sum_{|alpha|=r} d_z^alpha f d_zb^alpha g / alpha!
  Scalar lambda = Scalar(mpq_class(0), mpq_class(-1));
  /// true: holomorphic derivatives act on the first argument (Wick); false: anti-Wick.
  bool holomorphic_first = true;

  /// Wick product with lambda fixed by C_1(z1,zb1) - C_1(zb1,z1) = {z1, zb1}.
  static StarProduct wick(const PolyForm &omega) {
    const int m = omega.dim();
    StarProduct p;
    p.m = m;
    RingElement pb = poisson_bracket(omega, RingElement::z(m, 0), RingElement::zb(m, 0));
    if (!pb.is_polynomial() || !pb.as_polynomial().is_constant() || pb.is_zero())
      throw Error(ErrorCode::Internal, "Poisson bracket of coordinates is not a nonzero constant");
    p.lambda = pb.as_polynomial().constant_term();
    return p;
  }

  std::string kind() const { return holomorphic_first ? "Wick" : "anti-Wick"; }

  /// C_r(f, g)
  RingElement cochain(int r, const RingElement &f, const RingElement &g) const {
    auto df = detail::derivative_table(f, r, holomorphic_first ? 0 : 1);
    auto dg = detail::derivative_table(g, r, holomorphic_first ? 1 : 0);
    return contract(r, df, dg);
  }

  /// f * g through order N; marks the series truncated when order N+1 would not vanish.
  NuFunction star(const RingElement &f, const RingElement &g, int order) const {
    NuFunction out(order);
    if (f.is_zero() || g.is_zero()) return out;
    auto df = detail::derivative_table(f, order + 1, holomorphic_first ? 0 : 1);
    auto dg = detail::derivative_table(g, order + 1, holomorphic_first ? 1 : 0);
    for (int r = 0; r <= order; ++r) out.set(r, contract(r, df, dg));
    if (!vanishes_at(order + 1, df) && !vanishes_at(order + 1, dg)) out.mark_truncated();
    return out;
  }

  NuFunction star(const NuFunction &f, const NuFunction &g) const {
    const int order = std::min(f.truncation(), g.truncation());
    NuFunction out(order);
    for (const auto &[i, a] : f.coefficients())
      for (const auto &[j, b] : g.coefficients()) {
        if (i + j > order) continue;
        NuFunction t = star(a, b, order - i - j).shifted(i + j);
        out += t;
      }
    if (f.truncated() || g.truncated()) out.mark_truncated();
    return out;
  }

  NuFunction commutator(const NuFunction &f, const NuFunction &g) const { return star(f, g) - star(g, f); }
  NuFunction commutator(const RingElement &f, const RingElement &g, int order) const {
    return star(f, g, order) - star(g, f, order);
  }

private:
  RingElement contract(int r, const std::map<detail::MultiIndex, RingElement> &df,
                       const std::map<detail::MultiIndex, RingElement> &dg) const {
    RingElement sum(m);
    for (const auto &[alpha, a] : df) {
      if (static_cast<int>(std::accumulate(alpha.begin(), alpha.end(), 0)) != r || a.is_zero()) continue;
      const RingElement &b = dg.at(alpha);
      if (b.is_zero()) continue;
      sum += a * b * detail::inverse_factorial(alpha);
    }
    Scalar weight(1);
    for (int k = 0; k < r; ++k) weight *= lambda;
    return sum * weight;
  }

  static bool vanishes_at(int r, const std::map<detail::MultiIndex, RingElement> &d) {
    for (const auto &[alpha, a] : d)
      if (std::accumulate(alpha.begin(), alpha.end(), 0) == r && !a.is_zero()) return false;
    return true;
  }
};

/// Lift a function to a series concentrated at order 0.
inline NuFunction constant_series(const RingElement &f, int order) { return NuFunction(f, order); }

struct QuantumMomentumMap {
  std::vector<NuFunction> values;

  int rank() const { return static_cast<int>(values.size()); }

  /// J_hat = J (no corrections).
  static QuantumMomentumMap classical(const std::vector<RingElement> &j, int order) {
    QuantumMomentumMap q;
    for (const auto &ja : j) q.values.push_back(constant_series(ja, order));
    return q;
  }
};

struct QmmReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::string witness;

  void fail(const std::string &what, const std::string &w) {
    if (pass) witness = w;
    pass = false;
    failures.push_back(what);
  }
};

/// Check L_{X_a} f = -(1/nu)[J_a, f] on monomials of degree <= bound, and [J_a, J_b] = nu C_ab^c J_c.
inline QmmReport verify_qmm(const QuantumMomentumMap &q, const StarProduct &star, const LieAlgebraData &g,
                            const std::vector<PolyVectorField> &fields, int bound, int order) {
  QmmReport rep;
  const int m = star.m;
  for (int a = 0; a < q.rank(); ++a) {
    NuFunction ja = q.values[a];
    for (const auto &mono : monomials_up_to(2 * m, bound)) {
      RingElement f(Poly(2 * m, mono));
      NuFunction lhs = star.commutator(ja, constant_series(f, order));
      NuFunction expect(order);
      expect.set(1, -fields[a].apply(f));
      if (!lhs.equal_up_to(expect, order)) {
        rep.fail("inner derivation for direction " + std::to_string(a + 1), f.to_string());
        break;
      }
    }
    for (int b = 0; b < q.rank(); ++b) {
      NuFunction lhs = star.commutator(ja, q.values[b]);
      NuFunction rhs(lhs.truncation());
      for (int c = 0; c < q.rank(); ++c) {
        const Scalar &k = g.structure_constant(a, b, c);
        if (!k.is_zero()) rhs += q.values[c].map([&](const RingElement &x) { return x * k; }).shifted(1);
      }
      if (!lhs.equal_up_to(rhs, lhs.truncation()))
        rep.fail("bracket relation for directions " + std::to_string(a + 1) + "," + std::to_string(b + 1),
                 lhs.at(lhs.min_order(), RingElement(m)).to_string());
    }
  }
  return rep;
}

} // namespace brst
