#pragma once

// Order-by-order search for equivalences T = id + nu T_1 + ... between two
// products on a degree-filtered function space, and transfer of ambient
// equivariant equivalences to the reduced space.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "qreduction.hpp"

namespace brst {

/// A product on a finite basis with structure constants per nu-order, known
/// for all basis pairs whose degrees add up to at most degree_bound.
struct FilteredAlgebra {
  int nvars = 2;
  std::vector<Monomial> basis;
  std::vector<int> degree;
  std::vector<int> charge;
  /// per-coordinate phase weights a_k - b_k of each basis monomial
  std::vector<std::vector<int>> weights;
  int degree_bound = 0;
  int order = 0;
  /// table[{a, b}][k] = coordinates of C_k(e_a, e_b)
  std::map<std::pair<int, int>, std::vector<SparseVector>> table;

  int dimension() const { return static_cast<int>(basis.size()); }

  SparseVector product(int k, const SparseVector &x, const SparseVector &y) const {
    SparseVector out;
    for (const auto &[a, xa] : x)
      for (const auto &[b, yb] : y) {
        auto it = table.find({a, b});
        if (it == table.end())
          throw Error(ErrorCode::DegreeBoundExceeded, "product outside the filtered table");
        if (k < static_cast<int>(it->second.size())) axpy(out, xa * yb, it->second[k]);
      }
    return out;
  }

  bool pair_in_range(int a, int b) const { return degree[a] + degree[b] <= degree_bound; }
  std::string label(int a) const { return Poly(nvars, basis[a]).to_string(); }
};

inline SparseVector unit_vector(int a) { return SparseVector{{a, Scalar(1)}}; }

namespace detail {

inline SparseVector coordinates(const Poly &p, const std::map<Monomial, int, DegLexGreater> &index) {
  SparseVector v;
  for (const auto &[mono, c] : p.terms()) {
    auto it = index.find(mono);
    if (it == index.end()) throw Error(ErrorCode::DegreeBoundExceeded, "result leaves the filtered space");
    v.emplace(it->second, c);
  }
  return v;
}

template <class Product>
FilteredAlgebra tabulate(int nvars, std::vector<Monomial> basis, int bound, int order, Product &&product) {
  FilteredAlgebra alg;
  alg.nvars = nvars;
  alg.basis = std::move(basis);
  alg.degree_bound = bound;
  alg.order = order;
  std::map<Monomial, int, DegLexGreater> index;
  for (int a = 0; a < alg.dimension(); ++a) {
    index.emplace(alg.basis[a], a);
    alg.degree.push_back(alg.basis[a].degree());
    alg.charge.push_back(alg.basis[a].charge());
    std::vector<int> wt(nvars / 2);
    for (int k = 0; k < nvars / 2; ++k) wt[k] = int(alg.basis[a].exp[2 * k]) - int(alg.basis[a].exp[2 * k + 1]);
    alg.weights.push_back(wt);
  }
  for (int a = 0; a < alg.dimension(); ++a)
    for (int b = 0; b < alg.dimension(); ++b) {
      if (!alg.pair_in_range(a, b)) continue;
      NuSeries<Poly> p = product(alg.basis[a], alg.basis[b]);
      std::vector<SparseVector> row(order + 1);
      for (int k = 0; k <= order; ++k) row[k] = coordinates(p.at(k, Poly(nvars)), index);
      alg.table.emplace(std::make_pair(a, b), std::move(row));
    }
  return alg;
}

} // namespace detail

/// The reduced product on invariant functions of degree <= bound.
inline FilteredAlgebra reduced_algebra(const ReducedSpace &space, int bound, int order) {
  if (order > space.truncation()) throw Error(ErrorCode::Internal, "reduced space truncation below the requested order");
  const int nv = 2 * space.dim();
  return detail::tabulate(nv, reduced_basis(space.dim(), bound), bound, order, [&](const Monomial &a, const Monomial &b) {
    return space.product(Poly(nv, a), Poly(nv, b));
  });
}

/// The ambient star product on all polynomials of degree <= bound.
inline FilteredAlgebra ambient_algebra(const StarProduct &star, int bound, int order) {
  const int nv = 2 * star.m;
  auto monos = monomials_up_to(nv, bound);
  std::reverse(monos.begin(), monos.end());
  return detail::tabulate(nv, monos, bound, order, [&](const Monomial &a, const Monomial &b) {
    NuFunction p = star.star(RingElement(Poly(nv, a)), RingElement(Poly(nv, b)), order);
    return p.map([](const RingElement &f) { return f.as_polynomial(); });
  });
}

/// T = id + sum_k nu^k T_k with T_k stored column-wise on the basis.
struct EquivalenceOp {
  int dimension = 0;
  std::vector<std::vector<SparseVector>> stages;  // stages[k - 1][a] = T_k(e_a)

  int order() const { return static_cast<int>(stages.size()); }

  SparseVector apply(int k, const SparseVector &x) const {
    if (k == 0) return x;
    SparseVector out;
    if (k > order()) return out;
    for (const auto &[a, c] : x) axpy(out, c, stages[k - 1][a]);
    return out;
  }

  bool is_identity() const {
    for (const auto &st : stages)
      for (const auto &col : st)
        if (!col.empty()) return false;
    return true;
  }

  static EquivalenceOp identity(int dimension, int order) {
    EquivalenceOp t;
    t.dimension = dimension;
    t.stages.assign(order, std::vector<SparseVector>(dimension));
    return t;
  }
};

/// First pair (u, v) and nu-order where T(u *1 v) != T u *2 T v, if any.
inline std::optional<std::string> intertwining_defect(const FilteredAlgebra &a1, const FilteredAlgebra &a2,
                                                      const EquivalenceOp &t, int order) {
  for (const auto &[key, row] : a1.table) {
    auto [u, v] = key;
    for (int k = 0; k <= order; ++k) {
      SparseVector lhs, rhs;
      for (int i = 0; i <= k; ++i) axpy(lhs, Scalar(1), t.apply(i, a1.product(k - i, unit_vector(u), unit_vector(v))));
      for (int i = 0; i <= k; ++i)
        for (int j = 0; i + j <= k; ++j)
          axpy(rhs, Scalar(1), a2.product(k - i - j, t.apply(i, unit_vector(u)), t.apply(j, unit_vector(v))));
      if (lhs != rhs)
        return "order " + std::to_string(k) + " on (" + a1.label(u) + ", " + a1.label(v) + ")";
    }
  }
  return std::nullopt;
}

struct EquivalenceResult {
  bool found = false;
  int class_order = 0;    // N: order of the characteristic class compared
  int product_order = 0;  // products compared through nu^{N+1}
  int degree_bound = 0;
  int obstruction_order = -1;  // product order of the first inconsistent system
  std::string witness;
  int dimension = 0;
  EquivalenceOp op;

  std::string verdict() const {
    return found ? "FOUND" : "NONE_UP_TO(" + std::to_string(class_order) + ", " + std::to_string(degree_bound) + ")";
  }
};

namespace detail {

struct Unknowns {
  // (row b, column a) entries of a filtration preserving, charge preserving map
  std::vector<std::pair<int, int>> entries;
  std::map<std::pair<int, int>, int> index;

  Unknowns(const FilteredAlgebra &alg, bool torus) {
    for (int a = 0; a < alg.dimension(); ++a)
      for (int b = 0; b < alg.dimension(); ++b)
        if (alg.degree[b] <= alg.degree[a] && alg.charge[b] == alg.charge[a] &&
            (!torus || alg.weights[b] == alg.weights[a])) {
          index.emplace(std::make_pair(b, a), static_cast<int>(entries.size()));
          entries.emplace_back(b, a);
        }
  }
  int size() const { return static_cast<int>(entries.size()); }
};

/// Linear combination of unknown map entries: out[b] += coef * X(e_a)[b] for each b.
inline void add_map_column(std::map<int, SparseVector> &rows, const Unknowns &x, int offset, int a, const Scalar &coef) {
  for (const auto &[key, id] : x.index)
    if (key.second == a) rows[key.first][offset + id] += coef;
}

/// out[out_index] += sum over unknown X: C(X e_a, y) style terms, with y fixed.
template <class Prod>
void add_product_terms(std::map<int, SparseVector> &rows, const Unknowns &x, int offset, int a, const Scalar &coef,
                       Prod &&prod) {
  for (const auto &[key, id] : x.index) {
    if (key.second != a) continue;
    SparseVector r = prod(key.first);
    for (const auto &[o, c] : r) rows[o][offset + id] += coef * c;
  }
}

inline void clean(SparseVector &v) {
  for (auto it = v.begin(); it != v.end();)
    it = it->second.is_zero() ? v.erase(it) : std::next(it);
}

} // namespace detail

struct EquivalenceOptions {
  /// Search only maps preserving the torus weights. When both products are
  /// torus-equivariant this decides the same question: the weight projection
  /// of any solution of an order-k equation is again a solution.
  bool torus_equivariant = true;
};

/// Solve T(u *1 v) = T u *2 T v through nu^{N+1} on the filtered space.
/// N counts the order of the class difference nu c; the first order at which
/// products may differ is N + 1. At each order the previous stage may be
/// corrected by a derivation of the undeformed product.
inline EquivalenceResult find_equivalence(const FilteredAlgebra &a1, const FilteredAlgebra &a2, int class_order, int bound,
                                          EquivalenceOptions opts = {}) {
  EquivalenceResult res;
  res.class_order = class_order;
  res.product_order = class_order + 1;
  res.degree_bound = bound;
  res.dimension = a1.dimension();
  const int p = res.product_order;
  if (a1.basis != a2.basis) throw Error(ErrorCode::DimensionMismatch, "products on different spaces");
  if (bound > a1.degree_bound || bound > a2.degree_bound)
    throw Error(ErrorCode::DegreeBoundExceeded, "degree bound beyond the tabulated products");
  if (p > a1.order || p > a2.order) throw Error(ErrorCode::Internal, "products not tabulated to the requested order");
  const int n = a1.dimension();
  detail::Unknowns unk(a1, opts.torus_equivariant);
  EquivalenceOp t = EquivalenceOp::identity(n, p);
  std::vector<std::pair<int, int>> pairs;
  for (const auto &[key, row] : a1.table)
    if (a1.degree[key.first] + a1.degree[key.second] <= bound) pairs.push_back(key);

  for (int k = 1; k <= p; ++k) {
    const bool lookback = k >= 2;
    const int ny = lookback ? unk.size() : 0;
    LinearSystem sys(unk.size() + ny);
    std::vector<std::string> labels;
    auto label = [&](int u, int v) { return "(" + a1.label(u) + ", " + a1.label(v) + ")"; };
    // constraints first, so an inconsistency is reported on a product equation
    if (lookback) {
      // the correction Y must be a derivation of the undeformed product
      const int off = unk.size();
      for (const auto &[u, v] : pairs) {
        SparseVector eu = unit_vector(u), ev = unit_vector(v);
        std::map<int, SparseVector> rows;
        for (const auto &[a, c] : a1.product(0, eu, ev)) detail::add_map_column(rows, unk, off, a, c);
        detail::add_product_terms(rows, unk, off, u, Scalar(-1), [&](int b) { return a1.product(0, unit_vector(b), ev); });
        detail::add_product_terms(rows, unk, off, v, Scalar(-1), [&](int b) { return a1.product(0, eu, unit_vector(b)); });
        for (auto &[o, row] : rows) {
          detail::clean(row);
          if (row.empty()) continue;
          sys.add_equation(row, Scalar(0));
          labels.push_back("derivation constraint on " + label(u, v));
        }
      }
    }
    for (const auto &[u, v] : pairs) {
      SparseVector eu = unit_vector(u), ev = unit_vector(v);
      // known part with T_k = 0
      SparseVector known;
      for (int i = 0; i < k; ++i) axpy(known, Scalar(1), t.apply(i, a1.product(k - i, eu, ev)));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k && i + j <= k; ++j)
          axpy(known, Scalar(-1), a2.product(k - i - j, t.apply(i, eu), t.apply(j, ev)));
      std::map<int, SparseVector> rows;
      // delta T_k (u, v)
      for (const auto &[a, c] : a1.product(0, eu, ev)) detail::add_map_column(rows, unk, 0, a, c);
      detail::add_product_terms(rows, unk, 0, u, Scalar(-1), [&](int b) { return a2.product(0, unit_vector(b), ev); });
      detail::add_product_terms(rows, unk, 0, v, Scalar(-1), [&](int b) { return a2.product(0, eu, unit_vector(b)); });
      if (lookback) {
        const int off = unk.size();
        SparseVector t1u = t.apply(1, eu), t1v = t.apply(1, ev);
        for (const auto &[a, c] : a1.product(1, eu, ev)) detail::add_map_column(rows, unk, off, a, c);
        detail::add_product_terms(rows, unk, off, u, Scalar(-1), [&](int b) {
          SparseVector r = a2.product(1, unit_vector(b), ev);
          axpy(r, Scalar(1), a2.product(0, unit_vector(b), t1v));
          return r;
        });
        detail::add_product_terms(rows, unk, off, v, Scalar(-1), [&](int b) {
          SparseVector r = a2.product(1, eu, unit_vector(b));
          axpy(r, Scalar(1), a2.product(0, t1u, unit_vector(b)));
          return r;
        });
      }
      std::set<int> outs;
      for (const auto &[o, c] : known) outs.insert(o);
      for (const auto &[o, r] : rows) outs.insert(o);
      for (int o : outs) {
        SparseVector row = rows.count(o) ? rows[o] : SparseVector{};
        detail::clean(row);
        auto kn = known.find(o);
        Scalar rhs = kn == known.end() ? Scalar(0) : -kn->second;
        sys.add_equation(std::move(row), rhs);
        labels.push_back("order " + std::to_string(k) + " on " + label(u, v) + ", coefficient of " + a1.label(o));
      }
    }
    auto sol = sys.solve();
    if (!sol) {
      res.obstruction_order = k;
      auto bad = sys.first_inconsistent();
      res.witness = bad ? labels[*bad] : "";
      return res;
    }
    std::vector<SparseVector> tk(n), y(n);
    for (int id = 0; id < unk.size(); ++id) {
      auto [b, a] = unk.entries[id];
      if (!(*sol)[id].is_zero()) tk[a][b] = (*sol)[id];
      if (lookback && !(*sol)[unk.size() + id].is_zero()) y[a][b] = (*sol)[unk.size() + id];
    }
    if (lookback) {
      bool nonzero = false;
      for (const auto &col : y) nonzero = nonzero || !col.empty();
      if (nonzero) {
        EquivalenceOp yop = EquivalenceOp::identity(n, 1);
        yop.stages[0] = y;
        for (int a = 0; a < n; ++a) {
          axpy(t.stages[k - 2][a], Scalar(1), y[a]);
          if (k == 2) axpy(tk[a], Scalar::rational(1, 2), yop.apply(1, y[a]));  // absorbs Y u Y v
        }
      }
    }
    t.stages[k - 1] = tk;
  }
  if (auto bad = intertwining_defect(a1, a2, t, p)) throw Error(ErrorCode::Internal, "equivalence solver produced a non-intertwiner: " + *bad);
  res.found = true;
  res.op = t;
  return res;
}

/// u *' v = S^{-1}(S u * S v) for S = id + nu S_1 + ...
inline FilteredAlgebra conjugate(const FilteredAlgebra &alg, const EquivalenceOp &s) {
  const int n = alg.dimension();
  const int order = alg.order;
  // R = S^{-1}: R_0 = id, R_k = -sum_{i=1..k} S_i R_{k-i}
  std::vector<std::vector<SparseVector>> r(order + 1, std::vector<SparseVector>(n));
  for (int a = 0; a < n; ++a) r[0][a] = unit_vector(a);
  for (int k = 1; k <= order; ++k)
    for (int a = 0; a < n; ++a)
      for (int i = 1; i <= k; ++i) axpy(r[k][a], Scalar(-1), s.apply(i, r[k - i][a]));
  auto apply_r = [&](int k, const SparseVector &x) {
    SparseVector out;
    for (const auto &[a, c] : x) axpy(out, c, r[k][a]);
    return out;
  };
  FilteredAlgebra out = alg;
  for (auto &[key, row] : out.table) {
    auto [u, v] = key;
    for (int l = 0; l <= order; ++l) {
      SparseVector acc;
      for (int i = 0; i <= l; ++i)
        for (int j = 0; i + j <= l; ++j)
          for (int c = 0; i + j + c <= l; ++c)
            axpy(acc, Scalar(1), apply_r(l - i - j - c, alg.product(c, s.apply(i, unit_vector(u)), s.apply(j, unit_vector(v)))));
      row[l] = acc;
    }
  }
  return out;
}

/// An ambient equivalence acting on function series.
struct AmbientEquivalence {
  std::string name;
  std::function<NuFunction(const NuFunction &)> apply;
};

/// exp(ad_star g): an inner automorphism; equivariant iff g is invariant.
inline AmbientEquivalence inner_automorphism(const StarProduct &star, const RingElement &g, int order) {
  AmbientEquivalence t;
  t.name = "exp(ad " + g.to_string() + ")";
  NuFunction gs = constant_series(g, order);
  t.apply = [star, gs, order](const NuFunction &f) {
    NuFunction total = f, term = f;
    Scalar fact(1);
    for (int k = 1; k <= order + 1; ++k) {
      term = star.commutator(gs, term);
      if (term.is_zero()) break;
      fact *= Scalar(k);
      total += term.map([&](const RingElement &x) { return x * fact.inverse(); });
    }
    return total;
  };
  return t;
}

inline AmbientEquivalence identity_equivalence() {
  return AmbientEquivalence{"id", [](const NuFunction &f) { return f; }};
}

/// T_red = I^* T prol on the reduced basis of degree <= bound.
/// Precondition: T maps the quantum momentum map of `source` to that of `cfg`
/// and commutes with the fundamental vector field.
inline EquivalenceOp reduce_equivalence(const AmbientEquivalence &t, const ReducedSpace &space,
                                        const QuantumMomentumMap &source, const PolyVectorField &x, int bound) {
  const auto &cfg = space.config();
  const int order = cfg.truncation;
  const int m = space.dim();
  for (int a = 0; a < cfg.rank(); ++a) {
    NuFunction image = t.apply(source.values[a]);
    if (!image.equal_up_to(cfg.qmm.values[a], order))
      throw Error(ErrorCode::NotEquivariant, t.name + " does not map the quantum momentum map");
  }
  for (const auto &mono : monomials_up_to(2 * m, std::min(bound, 3))) {
    NuFunction f = constant_series(RingElement(Poly(2 * m, mono)), order);
    NuFunction lhs = t.apply(f.map([&](const RingElement &g) { return x.apply(g); }));
    NuFunction rhs = t.apply(f).map([&](const RingElement &g) { return x.apply(g); });
    if (!lhs.equal_up_to(rhs, order))
      throw Error(ErrorCode::NotEquivariant, t.name + " does not commute with the group action");
  }
  auto basis = reduced_basis(m, bound);
  std::map<Monomial, int, DegLexGreater> index;
  for (int a = 0; a < static_cast<int>(basis.size()); ++a) index.emplace(basis[a], a);
  EquivalenceOp out = EquivalenceOp::identity(static_cast<int>(basis.size()), order);
  for (int a = 0; a < static_cast<int>(basis.size()); ++a) {
    NuFunction image = t.apply(constant_series(prolong(Poly(2 * m, basis[a])), order));
    NuReduced red = I_star(image, cfg);
    for (const auto &[k, p] : red.coefficients()) {
      SparseVector v = detail::coordinates(p, index);
      if (k == 0) {
        if (v != unit_vector(a)) throw Error(ErrorCode::NotEquivariant, "reduced map is not the identity at order 0");
        continue;
      }
      out.stages[k - 1][a] = v;
    }
  }
  return out;
}

} // namespace brst
