#pragma once

// Constant symplectic structure on C^m, Hamiltonian vector fields and
// momentum map data.

#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "forms.hpp"
#include "lie_algebra.hpp"
#include "linalg.hpp"

namespace brst {

/// omega = i sum_k dz_k ^ dzb_k
inline PolyForm standard_symplectic_form(int m) {
  PolyForm omega(m);
  for (int k = 0; k < m; ++k) {
    ExteriorMask mask = (ExteriorMask(1) << (2 * k)) | (ExteriorMask(1) << (2 * k + 1));
    omega.add_term(mask, RingElement(m, Scalar::i()));
  }
  return omega;
}

/// Antisymmetric constant coefficient matrix Omega with omega = sum_{u<v} Omega_uv dx_u ^ dx_v.
inline std::optional<std::vector<std::vector<Scalar>>> constant_matrix(const PolyForm &omega) {
  const int n = 2 * omega.dim();
  std::vector<std::vector<Scalar>> mat(n, std::vector<Scalar>(n));
  for (const auto &[mask, f] : omega.terms()) {
    if (exterior_degree(mask) != 2 || !f.is_polynomial() || !f.as_polynomial().is_constant()) return std::nullopt;
    int u = std::countr_zero(mask);
    int v = 31 - std::countl_zero(mask);
    Scalar c = f.as_polynomial().constant_term();
    mat[u][v] = c;
    mat[v][u] = -c;
  }
  return mat;
}

/// Solve ins_X omega = dF for X; omega must have constant, nondegenerate coefficients.
inline PolyVectorField hamiltonian_vector_field(const PolyForm &omega, const RingElement &f) {
  const int m = omega.dim();
  const int n = 2 * m;
  auto mat = constant_matrix(omega);
  if (!mat) throw Error(ErrorCode::Internal, "symplectic form must have constant coefficients");
  // sum_u X^u Omega_uv = d_v F  for every v; solve with unit right-hand sides first
  std::vector<std::vector<Scalar>> transposed(n, std::vector<Scalar>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) transposed[v][u] = (*mat)[u][v];
  std::vector<RingElement> comp(n, RingElement(m));
  for (int v = 0; v < n; ++v) {
    std::vector<Scalar> e(n);
    e[v] = Scalar(1);
    auto col = solve_dense(transposed, e);
    if (!col) throw Error(ErrorCode::Internal, "symplectic form is degenerate");
    RingElement dv = f.derivative(v);
    if (dv.is_zero()) continue;
    for (int u = 0; u < n; ++u)
      if (!(*col)[u].is_zero()) comp[u] += dv * (*col)[u];
  }
  return PolyVectorField(m, std::move(comp));
}

/// {f, g} = omega(X_f, X_g) = X_g(f).
inline RingElement poisson_bracket(const PolyForm &omega, const RingElement &f, const RingElement &g) {
  return hamiltonian_vector_field(omega, g).apply(f);
}

struct SymplecticData {
  PolyForm omega;
  std::vector<RingElement> momentum_map;
  std::vector<PolyVectorField> fundamental_fields;

  SymplecticData() = default;
  SymplecticData(PolyForm w, std::vector<RingElement> j) : omega(std::move(w)), momentum_map(std::move(j)) {
    for (const auto &ja : momentum_map) fundamental_fields.push_back(hamiltonian_vector_field(omega, ja));
  }

  int dim() const { return omega.dim(); }

  bool is_closed() const { return exterior_derivative(omega).is_zero(); }
  bool is_nondegenerate() const {
    auto mat = constant_matrix(omega);
    if (!mat) return false;
    std::vector<Scalar> zero(mat->size());
    return solve_dense(*mat, zero).has_value();
  }
  bool is_hamiltonian() const {
    for (std::size_t a = 0; a < momentum_map.size(); ++a)
      if (insert(fundamental_fields[a], omega) != exterior_derivative(PolyForm(momentum_map[a]))) return false;
    return true;
  }
  /// L_{X_a} J_b = -C_{ab}^c J_c
  bool is_equivariant(const LieAlgebraData &g) const {
    const int r = static_cast<int>(momentum_map.size());
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        RingElement lhs = fundamental_fields[a].apply(momentum_map[b]);
        RingElement rhs(dim());
        for (int c = 0; c < r; ++c) rhs -= momentum_map[c] * g.structure_constant(a, b, c);
        if (lhs != rhs) return false;
      }
    return true;
  }
};

} // namespace brst
