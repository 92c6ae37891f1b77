#pragma once

// Built-in Hopf scenarios: C^{n+1} \ {0} over the unit sphere, reduced space CP^n.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cartan.hpp"
#include "qreduction.hpp"
#include "symplectic.hpp"

namespace brst {

inline constexpr int kDefaultDegreeBound = 8;
inline constexpr int kMaxScenarioN = 2;

struct ScenarioBounds {
  int degree = kDefaultDegreeBound;
  int nu_order = kDefaultNuOrder;
};

/// Resolved signs and normalizations, reported with every run.
using ConventionReport = std::vector<std::pair<std::string, std::string>>;

class Scenario {
public:
  int n = 0;
  SymplecticData symplectic;
  LieAlgebraData lie = LieAlgebraData::abelian(1);
  PrincipalConnection connection;
  SubmanifoldIdeal ideal;
  ScenarioBounds bounds;
  StarProduct star;

  Scenario(const Scenario &) = delete;
  Scenario &operator=(const Scenario &) = delete;

  int dim() const { return n + 1; }
  const RingElement &J() const { return symplectic.momentum_map[0]; }
  const PolyVectorField &X() const { return symplectic.fundamental_fields[0]; }
  CartanContext cartan() const { return CartanContext{&lie, &symplectic.fundamental_fields, &connection, &ideal}; }

  /// omega - J e* in the Cartan model
  EquivariantForm omega_minus_J() const {
    EquivariantForm out(symplectic.omega, 1);
    out.add_term({1}, PolyForm(-J()));
    return out;
  }

  /// Quantum momentum map J + nu c.
  QuantumMomentumMap quantum_momentum_map(const Scalar &c, int order) const {
    auto q = QuantumMomentumMap::classical(symplectic.momentum_map, order);
    if (!c.is_zero()) q.values[0].set(1, RingElement(dim(), c));
    return q;
  }

  QuantizedKoszulConfig koszul_config(const Scalar &c, int order, NuScalar kappa) const {
    QuantizedKoszulConfig cfg;
    cfg.star = star;
    cfg.lie = lie;
    cfg.momentum_map = symplectic.momentum_map;
    cfg.qmm = quantum_momentum_map(c, order);
    cfg.kappa = std::move(kappa);
    cfg.truncation = order;
    return cfg;
  }
  QuantizedKoszulConfig koszul_config(const Scalar &c, int order) const { return koszul_config(c, order, NuScalar(order)); }

  ConventionReport conventions() const {
    return {
        {"omega", "i sum dz_k ^ dzb_k"},
        {"momentum_map", "J = (|z|^2 - 1)/2"},
        {"hamiltonian", "ins_X omega = dJ"},
        {"fundamental_field", "X = -(i/2) sum (z_k d/dz_k - zb_k d/dzb_k)"},
        {"poisson_bracket", "{f, g} = X_g(f), {z_1, zb_1} = -i"},
        {"star_product", "Wick, C_r(f,g) = (-i)^r sum_{|a|=r} d_z^a f d_zb^a g / a!"},
        {"connection", "theta = " + connection_constant().to_string() + " w sum (zb_k dz_k - z_k dzb_k), w = 1/|z|^2"},
        {"curvature", "d theta = -2 iota^* omega"},
        {"constraint", "C = {J = 0} = S^" + std::to_string(2 * n + 1)},
        {"degree_bound", std::to_string(bounds.degree)},
        {"nu_order", std::to_string(bounds.nu_order)},
    };
  }

private:
  Scenario() = default;
  friend std::shared_ptr<const Scenario> build_scenario(int n);

  /// c0 in theta = c0 w sum (zb dz - z dzb): the dz_1 coefficient at z = (1, 0, ..)
  Scalar connection_constant() const {
    std::vector<Scalar> point(2 * dim());
    point[0] = point[1] = Scalar(1);
    for (const auto &[mask, f] : connection.theta[0].terms())
      if (mask == ExteriorMask(1)) return f.evaluate(point, Scalar(1));
    return Scalar(0);
  }
};

namespace detail {

inline void require(bool ok, const std::string &what) {
  if (!ok) throw Error(ErrorCode::Internal, "scenario axiom failed: " + what);
}

/// The circle acts freely on C: X does not vanish at the canonical point.
inline bool acts_freely(const PolyVectorField &x) {
  std::vector<Scalar> point(2 * x.dim());
  point[0] = point[1] = Scalar(1);
  for (const auto &c : x.components())
    if (!c.evaluate(point, Scalar(1)).is_zero()) return true;
  return false;
}

} // namespace detail

inline std::shared_ptr<const Scenario> build_scenario(int n) {
  if (n < 0 || n > kMaxScenarioN)
    throw Error(ErrorCode::UnsupportedN, "n = " + std::to_string(n) + " (supported: 0, 1, 2)");
  const int m = n + 1;
  std::shared_ptr<Scenario> s(new Scenario());
  s->n = n;
  RingElement J = (RingElement::radius_squared(m) - RingElement(m, Scalar(1))) * Scalar::rational(1, 2);
  s->symplectic = SymplecticData(standard_symplectic_form(m), {J});
  s->ideal = SubmanifoldIdeal(m, s->bounds.degree);
  s->connection = hopf_connection(s->X());
  s->star = StarProduct::wick(s->symplectic.omega);

  detail::require(s->symplectic.is_closed(), "omega closed");
  detail::require(s->symplectic.is_nondegenerate(), "omega nondegenerate");
  detail::require(s->symplectic.is_hamiltonian(), "ins_X omega = dJ");
  detail::require(s->symplectic.is_equivariant(s->lie), "J equivariant");
  detail::require(s->ideal.regular_at_canonical_point(), "0 regular value of J");
  detail::require(detail::acts_freely(s->X()), "free action on C");
  detail::require(s->connection.reproduces_generators(s->symplectic.fundamental_fields, s->ideal), "theta(X) = 1");
  detail::require(s->connection.is_invariant(s->symplectic.fundamental_fields, s->ideal), "L_X theta = 0");
  detail::require(is_basic(ideal_reduce(s->symplectic.omega, s->ideal), s->ideal, s->symplectic.fundamental_fields),
                  "iota^* omega basic");
  return s;
}

/// f in the tubular chart: f = sum_d f_d(c) (1 + 2 mu)^{d/2} with mu = J.
struct ChartPushforward {
  Poly restriction;
  /// homogeneous (z, zb)-degree d -> f_d restricted to C
  std::map<int, Poly> profile;

  /// Profile as a polynomial in mu, when every f_d is constant and d even.
  std::optional<std::vector<Scalar>> mu_polynomial() const {
    std::vector<Scalar> out;
    for (const auto &[d, p] : profile) {
      if (d % 2 != 0 || !p.is_constant()) return std::nullopt;
      // (1 + 2 mu)^{d/2}
      std::vector<Scalar> b{Scalar(1)};
      for (int e = 0; e < d / 2; ++e) {
        std::vector<Scalar> nb(b.size() + 1);
        for (std::size_t i = 0; i < b.size(); ++i) {
          nb[i] += b[i];
          nb[i + 1] += b[i] * Scalar(2);
        }
        b = std::move(nb);
      }
      if (out.size() < b.size()) out.resize(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i] * p.constant_term();
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
  }
};

inline ChartPushforward tubular_chart_pushforward(const RingElement &f) {
  if (!f.is_polynomial()) throw Error(ErrorCode::Internal, "chart pushforward needs a polynomial");
  ChartPushforward out{iota_star(f), {}};
  for (const auto &[d, part] : f.as_polynomial().homogeneous_parts()) {
    Poly r = iota_star(RingElement(part));
    if (!r.is_zero()) out.profile.emplace(d, r);
  }
  return out;
}

} // namespace brst
