#pragma once

// Cartan model: invariant Sym(g*)-valued forms with d_g = d + e^a ins_{X_a},
// the connection contraction h, stabilization and the Kirwan map.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "lie_algebra.hpp"
#include "nu_series.hpp"
#include "submanifold.hpp"

namespace brst {

/// Exponents of a monomial in the dual basis e^a of g*.
using SymMonomial = std::vector<int>;

inline int sym_degree(const SymMonomial &s) { return std::accumulate(s.begin(), s.end(), 0); }

inline std::string sym_monomial_to_string(const SymMonomial &s) {
  std::string out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] == 0) continue;
    if (!out.empty()) out += "*";
    out += s.size() == 1 ? std::string("e*") : "e^" + std::to_string(a + 1);
    if (s[a] > 1) out += "^" + std::to_string(s[a]);
  }
  return out.empty() ? "1" : out;
}

class EquivariantForm {
public:
  using Terms = std::map<SymMonomial, PolyForm>;

  EquivariantForm() = default;
  EquivariantForm(int m, int rank) : m_(m), rank_(rank) {}
  /// 1 (x) alpha
  EquivariantForm(const PolyForm &alpha, int rank) : m_(alpha.dim()), rank_(rank) { add_term(unit(), alpha); }

  static EquivariantForm generator(int m, int rank, int a, int power = 1) {
    EquivariantForm out(m, rank);
    SymMonomial s(rank, 0);
    s[a] = power;
    out.add_term(s, PolyForm(RingElement(m, Scalar(1))));
    return out;
  }

  int dim() const { return m_; }
  int rank() const { return rank_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  SymMonomial unit() const { return SymMonomial(rank_, 0); }

  void add_term(const SymMonomial &s, const PolyForm &alpha) {
    if (static_cast<int>(s.size()) != rank_) throw Error(ErrorCode::DimensionMismatch, "sym monomial of wrong rank");
    if (alpha.is_zero()) return;
    auto [it, ins] = terms_.emplace(s, alpha);
    if (!ins) {
      it->second += alpha;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PolyForm component(const SymMonomial &s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? PolyForm(m_) : it->second;
  }

  /// Largest symmetric degree present, -1 for zero.
  int max_sym_degree() const {
    int d = -1;
    for (const auto &[s, f] : terms_) d = std::max(d, sym_degree(s));
    return d;
  }

  /// 2 (sym degree) + exterior degree, or -1 for zero; throws on mixed degree.
  int total_degree() const {
    int k = -1;
    for (const auto &[s, f] : terms_) {
      int t = 2 * sym_degree(s) + f.degree();
      if (k >= 0 && t != k) throw Error(ErrorCode::Internal, "equivariant form of mixed total degree");
      k = t;
    }
    return k;
  }

  template <class F> EquivariantForm map_forms(F &&f) const {
    EquivariantForm out(m_, rank_);
    for (const auto &[s, a] : terms_) out.add_term(s, f(a));
    return out;
  }

  EquivariantForm &operator+=(const EquivariantForm &o) {
    adopt(o);
    for (const auto &[s, a] : o.terms_) add_term(s, a);
    return *this;
  }
  EquivariantForm &operator-=(const EquivariantForm &o) {
    adopt(o);
    for (const auto &[s, a] : o.terms_) add_term(s, -a);
    return *this;
  }
  friend EquivariantForm operator+(EquivariantForm a, const EquivariantForm &b) { return a += b; }
  friend EquivariantForm operator-(EquivariantForm a, const EquivariantForm &b) { return a -= b; }
  EquivariantForm operator-() const { return *this * Scalar(-1); }
  friend EquivariantForm operator*(const EquivariantForm &a, const Scalar &c) {
    return a.map_forms([&](const PolyForm &f) { return f * c; });
  }
  friend EquivariantForm operator*(const Scalar &c, const EquivariantForm &a) { return a * c; }

  /// Product in Sym(g*) (x) Omega; sym generators are even so only the forms carry signs.
  friend EquivariantForm operator*(const EquivariantForm &a, const EquivariantForm &b) {
    EquivariantForm out(a.m_, a.rank_);
    out.adopt(b);
    for (const auto &[sa, fa] : a.terms_)
      for (const auto &[sb, fb] : b.terms_) {
        SymMonomial s(out.rank_, 0);
        for (int k = 0; k < out.rank_; ++k) s[k] = sa[k] + sb[k];
        out.add_term(s, wedge(fa, fb));
      }
    return out;
  }

  friend bool operator==(const EquivariantForm &a, const EquivariantForm &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const EquivariantForm &a, const EquivariantForm &b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto &[s, f] : terms_) {
      if (!out.empty()) out += " + ";
      out += sym_monomial_to_string(s) + " (x) [" + f.to_string() + "]";
    }
    return out;
  }

private:
  void adopt(const EquivariantForm &o) {
    if (terms_.empty() && m_ == 0) {
      m_ = o.m_;
      rank_ = o.rank_;
    }
  }

  int m_ = 0;
  int rank_ = 0;
  Terms terms_;
};

/// rho_a acting on Sym(g*) as the derivation with rho_a(e^c) = sum_b C_ab^c e^b.
inline EquivariantForm coadjoint_action(const EquivariantForm &alpha, const LieAlgebraData &g, int a) {
  EquivariantForm out(alpha.dim(), alpha.rank());
  for (const auto &[s, f] : alpha.terms())
    for (int c = 0; c < g.dimension(); ++c) {
      if (s[c] == 0) continue;
      for (int b = 0; b < g.dimension(); ++b) {
        const Scalar &k = g.structure_constant(a, b, c);
        if (k.is_zero()) continue;
        SymMonomial t = s;
        --t[c];
        ++t[b];
        out.add_term(t, f * (k * Scalar(s[c])));
      }
    }
  return out;
}

/// Infinitesimal invariance defect along e_a: L_{X_a} on forms plus the coadjoint correction.
inline EquivariantForm invariance_defect(const EquivariantForm &alpha, const LieAlgebraData &g,
                                         const std::vector<PolyVectorField> &fields, int a) {
  EquivariantForm out = alpha.map_forms([&](const PolyForm &f) { return lie_derivative(fields[a], f); });
  return out + coadjoint_action(alpha, g, a);
}

inline bool is_invariant(const EquivariantForm &alpha, const LieAlgebraData &g,
                         const std::vector<PolyVectorField> &fields, const SubmanifoldIdeal *ideal = nullptr) {
  for (int a = 0; a < g.dimension(); ++a) {
    EquivariantForm d = invariance_defect(alpha, g, fields, a);
    for (const auto &[s, f] : d.terms())
      if (ideal ? !vanishes_on_sphere(f, *ideal) : !f.is_zero()) return false;
  }
  return true;
}

/// ins_bullet(sym (x) alpha) = sum_a e^a sym (x) ins_{X_a} alpha
inline EquivariantForm ins_bullet(const EquivariantForm &alpha, const std::vector<PolyVectorField> &fields) {
  EquivariantForm out(alpha.dim(), alpha.rank());
  for (const auto &[s, f] : alpha.terms())
    for (int a = 0; a < alpha.rank(); ++a) {
      SymMonomial t = s;
      ++t[a];
      out.add_term(t, insert(fields[a], f));
    }
  return out;
}

/// d_g = d + ins_bullet, without the invariance precondition check.
inline EquivariantForm d_equivariant_unchecked(const EquivariantForm &alpha, const std::vector<PolyVectorField> &fields) {
  return alpha.map_forms([](const PolyForm &f) { return exterior_derivative(f); }) + ins_bullet(alpha, fields);
}

inline EquivariantForm d_equivariant(const EquivariantForm &alpha, const LieAlgebraData &g,
                                     const std::vector<PolyVectorField> &fields) {
  if (!is_invariant(alpha, g, fields)) throw Error(ErrorCode::NotInvariant, "d_g applied to a non-invariant form");
  return d_equivariant_unchecked(alpha, fields);
}

/// Component-wise restriction to C.
inline EquivariantForm restrict_to_sphere(const EquivariantForm &alpha, const SubmanifoldIdeal &ideal) {
  return alpha.map_forms([&](const PolyForm &f) { return ideal_reduce(f, ideal); });
}

inline bool vanishes_on_sphere(const EquivariantForm &alpha, const SubmanifoldIdeal &ideal) {
  for (const auto &[s, f] : alpha.terms())
    if (!vanishes_on_sphere(f, ideal)) return false;
  return true;
}

struct PrincipalConnection {
  std::vector<PolyForm> theta;

  int rank() const { return static_cast<int>(theta.size()); }

  /// theta^a(X_b) = delta^a_b on C
  bool reproduces_generators(const std::vector<PolyVectorField> &fields, const SubmanifoldIdeal &ideal) const {
    for (int a = 0; a < rank(); ++a)
      for (int b = 0; b < rank(); ++b) {
        RingElement v = insert(fields[b], theta[a]).coefficient(0);
        Poly expect(2 * ideal.m, Scalar(a == b ? 1 : 0));
        if (iota_star(v) != expect) return false;
      }
    return true;
  }

  /// Abelian equivariance L_{X_b} theta^a = 0 on C.
  bool is_invariant(const std::vector<PolyVectorField> &fields, const SubmanifoldIdeal &ideal) const {
    for (const auto &t : theta)
      for (const auto &x : fields)
        if (!vanishes_on_sphere(lie_derivative(x, t), ideal)) return false;
    return true;
  }
};

/// theta = c0 w sum_k (zb_k dz_k - z_k dzb_k) with c0 solved from theta(X) = 1.
inline PrincipalConnection hopf_connection(const PolyVectorField &x) {
  const int m = x.dim();
  PolyForm base(m);
  for (int k = 0; k < m; ++k) {
    base += RingElement::zb(m, k) * PolyForm::differential(m, 2 * k);
    base -= RingElement::z(m, k) * PolyForm::differential(m, 2 * k + 1);
  }
  base = RingElement::w(m) * base;
  RingElement pairing = insert(x, base).coefficient(0);
  if (!pairing.is_polynomial() || !pairing.as_polynomial().is_constant() || pairing.is_zero())
    throw Error(ErrorCode::Internal, "connection normalization is not a nonzero constant");
  Scalar c0 = pairing.as_polynomial().constant_term().inverse();
  return PrincipalConnection{{base * c0}};
}

/// The contraction for rank one: (e*)^k (x) alpha -> (e*)^{k-1} (x) theta ^ alpha.
/// This is the j-sum formula divided by k; only the normalized map satisfies
/// ins_bullet h + h ins_bullet = id in every symmetric degree.
inline EquivariantForm h_omega(const EquivariantForm &alpha, const PrincipalConnection &conn) {
  if (conn.rank() != 1) throw Error(ErrorCode::Internal, "h_omega is implemented for rank one only");
  EquivariantForm out(alpha.dim(), alpha.rank());
  for (const auto &[s, f] : alpha.terms()) {
    if (s[0] == 0) continue;
    out.add_term({s[0] - 1}, wedge(conn.theta[0], f));
  }
  return out;
}

/// The literal j-sum: each of the k linear factors is fed to the connection in turn.
inline EquivariantForm h_omega_sum(const EquivariantForm &alpha, const PrincipalConnection &conn) {
  EquivariantForm out(alpha.dim(), alpha.rank());
  for (const auto &[s, f] : alpha.terms())
    for (int a = 0; a < alpha.rank(); ++a) {
      if (s[a] == 0) continue;
      SymMonomial t = s;
      --t[a];
      out.add_term(t, wedge(conn.theta[a], f) * Scalar(s[a]));
    }
  return out;
}

struct CartanContext {
  const LieAlgebraData *lie = nullptr;
  const std::vector<PolyVectorField> *fields = nullptr;
  const PrincipalConnection *connection = nullptr;
  const SubmanifoldIdeal *ideal = nullptr;
};

inline bool is_closed_on_sphere(const EquivariantForm &alpha, const CartanContext &ctx) {
  return vanishes_on_sphere(d_equivariant_unchecked(alpha, *ctx.fields), *ctx.ideal);
}

/// alpha - d_g h alpha, restricted to C.
inline EquivariantForm phi(const EquivariantForm &alpha, const CartanContext &ctx) {
  if (!is_closed_on_sphere(alpha, ctx)) throw Error(ErrorCode::NotClosed, "phi needs a d_g-closed form");
  EquivariantForm h = h_omega(alpha, *ctx.connection);
  return restrict_to_sphere(alpha - d_equivariant_unchecked(h, *ctx.fields), *ctx.ideal);
}

/// Iterate phi down to symmetric degree 0; the result is a basic form on C.
inline PolyForm stabilize(const EquivariantForm &alpha, const CartanContext &ctx) {
  if (!is_closed_on_sphere(alpha, ctx)) throw Error(ErrorCode::NotClosed, "stabilize needs a d_g-closed form");
  EquivariantForm cur = restrict_to_sphere(alpha, *ctx.ideal);
  int guard = cur.max_sym_degree();
  while (cur.max_sym_degree() > 0) {
    if (guard-- < 0) throw Error(ErrorCode::Internal, "phi did not lower the symmetric degree");
    cur = phi(cur, ctx);
  }
  PolyForm out = cur.component(cur.unit());
  if (out.is_zero()) out = PolyForm(alpha.dim());
  if (!is_basic(out, *ctx.ideal, *ctx.fields)) throw Error(ErrorCode::Internal, "stabilized form is not basic");
  return out;
}

/// K = (pi^*)^{-1} Phi iota^*; basic forms on C stand for forms on the quotient.
inline PolyForm kirwan(const EquivariantForm &alpha, const CartanContext &ctx) {
  if (!d_equivariant(alpha, *ctx.lie, *ctx.fields).is_zero())
    throw Error(ErrorCode::NotClosed, "Kirwan map needs a d_g-closed form on M");
  return stabilize(alpha, ctx);
}

inline NuSeries<PolyForm> kirwan(const NuSeries<EquivariantForm> &alpha, const CartanContext &ctx) {
  NuSeries<PolyForm> out(alpha.truncation());
  for (const auto &[k, a] : alpha.coefficients()) out.set(k, kirwan(a, ctx));
  return out;
}

struct ClassComparison {
  bool equal = false;
  int degree_bound = 0;
  std::optional<PolyForm> primitive;

  std::string verdict() const {
    return equal ? "EQUAL" : "NOT_EQUAL_UP_TO_DEGREE(" + std::to_string(degree_bound) + ")";
  }
};

/// Decide alpha - beta = d gamma for a basic 1-form gamma with coefficient degree <= bound.
inline ClassComparison classes_equal(const PolyForm &alpha, const PolyForm &beta, const CartanContext &ctx, int bound) {
  const SubmanifoldIdeal &ideal = *ctx.ideal;
  const int m = ideal.m;
  const int nv = 2 * m;
  if (!is_basic(alpha, ideal, *ctx.fields) || !is_basic(beta, ideal, *ctx.fields))
    throw Error(ErrorCode::NotInvariant, "classes_equal needs basic forms");
  SubmanifoldIdeal wide(m, std::max(ideal.degree_bound, bound + 1));
  PolyForm target = ideal_reduce(alpha - beta, wide);
  for (const auto &[mask, f] : target.terms())
    if (f.as_polynomial().degree() > bound + 1)
      throw Error(ErrorCode::DegreeBoundExceeded, "class representative exceeds the degree bound");

  // unknowns: standard monomials times dx_v with total charge 0
  std::vector<PolyForm> basis;
  for (int v = 0; v < nv; ++v) {
    int need = -exterior_charge(ExteriorMask(1) << v);
    for (const auto &mono : monomials_up_to(nv, bound)) {
      if (mono.charge() != need) continue;
      if (mono.exp[0] > 0 && mono.exp[1] > 0) continue;
      basis.push_back(PolyForm(m, ExteriorMask(1) << v, RingElement(Poly(nv, mono))));
    }
  }
  using Key = std::pair<ExteriorMask, Monomial>;
  struct KeyLess {
    bool operator()(const Key &a, const Key &b) const {
      if (a.first != b.first) return a.first < b.first;
      return DegLexGreater{}(a.second, b.second);
    }
  };
  std::map<Key, int, KeyLess> keys;
  std::vector<SparseVector> rows;
  auto row_of = [&](ExteriorMask mask, const Monomial &mono) -> SparseVector & {
    auto [it, ins] = keys.emplace(Key{mask, mono}, static_cast<int>(rows.size()));
    if (ins) rows.emplace_back();
    return rows[it->second];
  };
  const ExteriorMask vertical = ExteriorMask(1) << 31;  // tag for the ins_X gamma = 0 equations
  for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
    PolyForm dg = ideal_reduce(exterior_derivative(basis[j]), wide);
    for (const auto &[mask, f] : dg.terms())
      for (const auto &[mono, c] : f.as_polynomial().terms()) row_of(mask, mono)[j] += c;
    for (const auto &x : *ctx.fields) {
      Poly v = iota_star(insert(x, basis[j]).coefficient(0));
      for (const auto &[mono, c] : v.terms()) row_of(vertical, mono)[j] += c;
    }
  }
  std::vector<Scalar> rhs(rows.size());
  for (const auto &[mask, f] : target.terms())
    for (const auto &[mono, c] : f.as_polynomial().terms()) {
      row_of(mask, mono);
      rhs.resize(rows.size());
      rhs[keys.at(Key{mask, mono})] = c;
    }
  rhs.resize(rows.size());
  LinearSystem sys(static_cast<int>(basis.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseVector row;
    for (const auto &[k, c] : rows[r])
      if (!c.is_zero()) row.emplace(k, c);
    sys.add_equation(std::move(row), rhs[r]);
    if (!sys.consistent()) break;
  }
  ClassComparison out;
  out.degree_bound = bound;
  auto sol = sys.solve();
  if (!sol) return out;
  out.equal = true;
  PolyForm gamma(m);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!(*sol)[j].is_zero()) gamma += basis[j] * (*sol)[j];
  out.primitive = gamma;
  return out;
}

} // namespace brst
