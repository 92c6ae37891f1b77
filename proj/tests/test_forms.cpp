#include <gtest/gtest.h>

#include <random>

#include "brst/symplectic.hpp"

using namespace brst;

namespace {

RingElement random_element(std::mt19937 &rng, int m, int max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> var(0, 2 * m - 1);
  std::uniform_int_distribution<int> len(0, 3);
  RingElement out(m);
  for (int t = 0; t < 3; ++t) {
    RingElement term(m, Scalar(coef(rng)));
    int d = std::uniform_int_distribution<int>(0, max_deg)(rng);
    for (int k = 0; k < d; ++k) term *= (var(rng) % 2 ? RingElement::zb(m, var(rng) / 2) : RingElement::z(m, var(rng) / 2));
    int extra = len(rng);
    if (extra == 1) term *= RingElement::s(m);
    if (extra == 2) term *= RingElement::w(m);
    out += term;
  }
  return out;
}

PolyForm random_form(std::mt19937 &rng, int m, int degree) {
  PolyForm out(m);
  std::uniform_int_distribution<int> bit(0, 2 * m - 1);
  for (int t = 0; t < 3; ++t) {
    ExteriorMask mask = 0;
    while (exterior_degree(mask) < degree) mask |= ExteriorMask(1) << bit(rng);
    out += PolyForm(m, mask, random_element(rng, m, 2));
  }
  return out;
}

PolyVectorField random_field(std::mt19937 &rng, int m) {
  std::vector<RingElement> comp;
  for (int v = 0; v < 2 * m; ++v) comp.push_back(random_element(rng, m, 2));
  return PolyVectorField(m, comp);
}

} // namespace

TEST(Forms, Differentials) {
  const int m = 2;
  EXPECT_EQ(exterior_derivative(PolyForm(RingElement::z(m, 0))), PolyForm::differential(m, 0));
  PolyForm dr(m);
  for (int k = 0; k < m; ++k) {
    dr += RingElement::zb(m, k) * PolyForm::differential(m, 2 * k);
    dr += RingElement::z(m, k) * PolyForm::differential(m, 2 * k + 1);
  }
  EXPECT_EQ(exterior_derivative(PolyForm(RingElement::radius_squared(m))), dr);
  EXPECT_TRUE(exterior_derivative(standard_symplectic_form(m)).is_zero());
  PolyVectorField dz1(m);
  dz1.component(0) = RingElement(m, Scalar(1));
  EXPECT_EQ(insert(dz1, PolyForm::differential(m, 0)), PolyForm(RingElement(m, Scalar(1))));
  EXPECT_TRUE(insert(dz1, PolyForm(RingElement::z(m, 0))).is_zero());
}

TEST(Forms, RandomizedIdentities) {
  std::mt19937 rng(20261014);
  for (int m = 1; m <= 3; ++m) {
    for (int trial = 0; trial < 6; ++trial) {
      PolyForm a = random_form(rng, m, 1);
      PolyForm b = random_form(rng, m, 2);
      PolyVectorField x = random_field(rng, m);
      PolyVectorField y = random_field(rng, m);
      EXPECT_TRUE(exterior_derivative(exterior_derivative(a)).is_zero());
      EXPECT_TRUE(exterior_derivative(exterior_derivative(PolyForm(random_element(rng, m, 3)))).is_zero());
      // d(a^b) = da^b - a^db
      EXPECT_EQ(exterior_derivative(wedge(a, b)),
                wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b)));
      EXPECT_EQ(insert(x, wedge(a, b)), wedge(insert(x, a), b) - wedge(a, insert(x, b)));
      EXPECT_TRUE(insert(x, insert(x, b)).is_zero());
      EXPECT_EQ(lie_derivative(x, insert(y, b)) - insert(y, lie_derivative(x, b)), insert(bracket(x, y), b));
      EXPECT_EQ(exterior_derivative(lie_derivative(x, a)), lie_derivative(x, exterior_derivative(a)));
    }
  }
}

TEST(Symplectic, HopfData) {
  for (int m = 1; m <= 3; ++m) {
    PolyForm omega = standard_symplectic_form(m);
    RingElement j = (RingElement::radius_squared(m) - RingElement(m, Scalar(1))) * Scalar::rational(1, 2);
    SymplecticData data(omega, {j});
    EXPECT_TRUE(data.is_closed());
    EXPECT_TRUE(data.is_nondegenerate());
    EXPECT_TRUE(data.is_hamiltonian());
    EXPECT_TRUE(data.is_equivariant(LieAlgebraData::abelian(1)));
    const auto &x = data.fundamental_fields[0];
    for (int k = 0; k < m; ++k) {
      EXPECT_EQ(x.component(2 * k), RingElement::z(m, k) * Scalar(mpq_class(0), mpq_class(-1, 2)));
      EXPECT_EQ(x.component(2 * k + 1), RingElement::zb(m, k) * Scalar(mpq_class(0), mpq_class(1, 2)));
    }
    EXPECT_TRUE(lie_derivative(x, omega).is_zero());
    EXPECT_EQ(poisson_bracket(omega, RingElement::z(m, 0), RingElement::zb(m, 0)), RingElement(m, -Scalar::i()));
  }
}

TEST(Symplectic, Su2MomentMap) {
  const int m = 2;
  auto z = [&](int k) { return RingElement::z(m, k); };
  auto zb = [&](int k) { return RingElement::zb(m, k); };
  Scalar half = Scalar::rational(1, 2);
  Scalar ihalf(mpq_class(0), mpq_class(1, 2));
  // J_a = zb (sigma_a / 2) z
  std::vector<RingElement> j = {(zb(0) * z(1) + zb(1) * z(0)) * half,
                                (zb(0) * z(1) - zb(1) * z(0)) * (-ihalf),
                                (zb(0) * z(0) - zb(1) * z(1)) * half};
  SymplecticData data(standard_symplectic_form(m), j);
  EXPECT_TRUE(data.is_hamiltonian());
  LieAlgebraData su2 = LieAlgebraData::su2();
  EXPECT_TRUE(su2.is_antisymmetric());
  EXPECT_TRUE(su2.satisfies_jacobi());
  for (const auto &d : su2.modular_form()) EXPECT_TRUE(d.is_zero());
  // {J_a, J_b} = C_ab^c J_c up to a global sign fixed by the bracket convention
  RingElement pb = poisson_bracket(data.omega, j[0], j[1]);
  EXPECT_TRUE(pb == j[2] || pb == -j[2]);
  LieAlgebraData aff = LieAlgebraData::affine_line();
  EXPECT_TRUE(aff.satisfies_jacobi());
  EXPECT_EQ(aff.modular_form()[0], Scalar(1));
}
