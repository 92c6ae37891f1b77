#pragma once

// Restriction of forms to the sphere C = {r = 1} as a quotient by the
// differential ideal generated by r - 1 and dr.

#include <map>
#include <vector>

#include "forms.hpp"

namespace brst {

inline constexpr int kDefaultFormDegreeBound = 8;

struct SubmanifoldIdeal {
  int m = 1;
  int degree_bound = kDefaultFormDegreeBound;

  SubmanifoldIdeal() = default;
  explicit SubmanifoldIdeal(int dim, int bound = kDefaultFormDegreeBound) : m(dim), degree_bound(bound) {}

  /// 2J = r - 1
  Poly generator() const { return RingElement::sphere_equation(m); }
  PolyForm differential() const { return exterior_derivative(PolyForm(RingElement(generator()))); }

  /// dJ at z = (1, 0, ..., 0); nonzero means 0 is a regular value along the orbit.
  bool regular_at_canonical_point() const {
    std::vector<Scalar> point(2 * m);
    point[0] = point[1] = Scalar(1);
    PolyForm dj = differential();
    for (const auto &[mask, f] : dj.terms())
      if (!f.as_polynomial().evaluate(point).is_zero()) return true;
    return false;
  }
};

/// Canonical representative of f on C.
inline Poly iota_star(const RingElement &f) { return f.restrict_to_sphere(); }

namespace detail {

using PolyTerms = std::map<ExteriorMask, Poly>;

inline void add_poly_term(PolyTerms &out, ExteriorMask mask, const Poly &p) {
  if (p.is_zero()) return;
  auto [it, ins] = out.emplace(mask, p);
  if (!ins) {
    it->second += p;
    if (it->second.is_zero()) out.erase(it);
  }
}

} // namespace detail

/// Canonical representative of alpha mod (r - 1, dr). The tangential projection
/// alpha - (1/2) dr ^ ins_R alpha with R the radial field sum z d/dz + zb d/dzb
/// kills dr ^ (anything) exactly on C, so after reducing coefficients mod (r - 1)
/// two forms agree on C iff their reductions coincide.
inline PolyForm ideal_reduce(const PolyForm &alpha, const SubmanifoldIdeal &ideal) {
  const int m = alpha.dim();
  if (m != ideal.m) throw Error(ErrorCode::DimensionMismatch, "form and ideal over different dimensions");
  const int nv = 2 * m;
  const Poly sphere = ideal.generator();
  detail::PolyTerms beta;
  for (const auto &[mask, f] : alpha.terms()) {
    Poly p = iota_star(f);
    if (p.degree() > ideal.degree_bound)
      throw Error(ErrorCode::DegreeBoundExceeded, "coefficient degree " + std::to_string(p.degree()) +
                                                      " exceeds bound " + std::to_string(ideal.degree_bound));
    detail::add_poly_term(beta, mask, p);
  }
  // ins_R beta
  detail::PolyTerms radial;
  for (const auto &[mask, p] : beta) {
    int pos = 0;
    for (ExteriorMask mm = mask; mm; mm &= mm - 1, ++pos) {
      int v = std::countr_zero(mm);
      Poly t = p * Poly::var(nv, v);
      if (pos % 2) t = -t;
      detail::add_poly_term(radial, mask & ~(ExteriorMask(1) << v), t);
    }
  }
  detail::PolyTerms out = beta;
  const Scalar minus_half = Scalar::rational(-1, 2);
  for (const auto &[mask, p] : radial) {
    for (int u = 0; u < nv; ++u) {
      ExteriorMask bit = ExteriorMask(1) << u;
      int sign = wedge_sign(bit, mask);
      if (sign == 0) continue;
      Poly t = p * Poly::var(nv, u ^ 1) * (minus_half * Scalar(sign));
      detail::add_poly_term(out, mask | bit, t);
    }
  }
  PolyForm result(m);
  for (const auto &[mask, p] : out) result.add_term(mask, RingElement(p.divide(sphere).second));
  return result;
}

inline bool vanishes_on_sphere(const PolyForm &alpha, const SubmanifoldIdeal &ideal) {
  return ideal_reduce(alpha, ideal).is_zero();
}

/// ins_{X_a} alpha and L_{X_a} alpha vanish on C for every direction a.
inline bool is_basic(const PolyForm &alpha, const SubmanifoldIdeal &ideal, const std::vector<PolyVectorField> &fields) {
  for (const auto &x : fields) {
    if (!vanishes_on_sphere(insert(x, alpha), ideal)) return false;
    if (!vanishes_on_sphere(lie_derivative(x, alpha), ideal)) return false;
  }
  return true;
}

} // namespace brst
