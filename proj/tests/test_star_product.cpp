#include <gtest/gtest.h>

#include "brst/star_product.hpp"

using namespace brst;

namespace {

RingElement hopf_J(int m) { return (RingElement::radius_squared(m) - RingElement(m, Scalar(1))) * Scalar::rational(1, 2); }

std::vector<RingElement> monomial_functions(int m, int max_deg) {
  std::vector<RingElement> out;
  for (const auto &mono : monomials_up_to(2 * m, max_deg)) out.emplace_back(Poly(2 * m, mono));
  return out;
}

} // namespace

TEST(StarProduct, Conventions) {
  const int m = 2;
  PolyForm omega = standard_symplectic_form(m);
  StarProduct star = StarProduct::wick(omega);
  EXPECT_EQ(star.lambda, -Scalar::i());
  RingElement z1 = RingElement::z(m, 0), zb1 = RingElement::zb(m, 0);
  NuFunction unit = star.star(RingElement(m, Scalar(1)), z1 * zb1, 4);
  EXPECT_EQ(unit, constant_series(z1 * zb1, 4));
  NuFunction comm = star.commutator(z1, zb1, 4);
  NuFunction expect(4);
  expect.set(1, poisson_bracket(omega, z1, zb1));
  EXPECT_EQ(comm, expect);
  EXPECT_FALSE(comm.truncated());
  // C1 antisymmetrization is the Poisson bracket on all monomial pairs
  auto fs = monomial_functions(m, 2);
  for (const auto &f : fs)
    for (const auto &g : fs)
      EXPECT_EQ(star.cochain(1, f, g) - star.cochain(1, g, f), poisson_bracket(omega, f, g));
  EXPECT_EQ(star.cochain(0, z1, zb1), z1 * zb1);
}

TEST(StarProduct, Associativity) {
  const int m = 2;
  StarProduct star = StarProduct::wick(standard_symplectic_form(m));
  auto fs = monomial_functions(m, 2);
  for (const auto &f : fs)
    for (const auto &g : fs)
      for (const auto &h : fs) {
        NuFunction F = constant_series(f, 6), G = constant_series(g, 6), H = constant_series(h, 6);
        ASSERT_EQ(star.star(star.star(F, G), H), star.star(F, star.star(G, H)));
      }
}

TEST(StarProduct, MomentumMapGeneratesAction) {
  for (int m = 1; m <= 3; ++m) {
    PolyForm omega = standard_symplectic_form(m);
    StarProduct star = StarProduct::wick(omega);
    SymplecticData data(omega, {hopf_J(m)});
    const auto &x = data.fundamental_fields[0];
    for (const auto &f : monomial_functions(m, 3)) {
      NuFunction c = star.commutator(hopf_J(m), f, 4);
      NuFunction expect(4);
      expect.set(1, -x.apply(f));
      EXPECT_EQ(c, expect);
    }
    // L_X is a derivation of the star product
    auto fs = monomial_functions(m, 2);
    for (const auto &f : fs)
      for (const auto &g : fs) {
        NuFunction lhs = star.star(f, g, 4).map([&](const RingElement &u) { return x.apply(u); });
        NuFunction rhs = star.star(x.apply(f), g, 4) + star.star(f, x.apply(g), 4);
        EXPECT_EQ(lhs, rhs);
      }
  }
}

TEST(StarProduct, Truncation) {
  const int m = 2;
  StarProduct star = StarProduct::wick(standard_symplectic_form(m));
  RingElement h = RingElement::z(m, 0) * RingElement::zb(m, 1) * RingElement::w(m);
  NuFunction p = star.star(RingElement::w(m), RingElement::w(m), 3);
  EXPECT_TRUE(p.truncated());
  EXPECT_FALSE(star.star(RingElement::z(m, 0), h, 3).truncated());
  EXPECT_FALSE(star.star(h, RingElement::zb(m, 0), 3).truncated());
  EXPECT_TRUE(star.star(h, h, 3).truncated());
}

TEST(StarProduct, VerifyQmm) {
  const int m = 2;
  PolyForm omega = standard_symplectic_form(m);
  StarProduct star = StarProduct::wick(omega);
  SymplecticData data(omega, {hopf_J(m)});
  LieAlgebraData u1 = LieAlgebraData::abelian(1);
  auto q = QuantumMomentumMap::classical({hopf_J(m)}, 4);
  EXPECT_TRUE(verify_qmm(q, star, u1, data.fundamental_fields, 3, 4).pass);
  auto qc = q;
  qc.values[0].set(1, RingElement(m, Scalar::rational(5, 3)));
  EXPECT_TRUE(verify_qmm(qc, star, u1, data.fundamental_fields, 3, 4).pass);
  auto qz = q;
  qz.values[0].set(1, RingElement::z(m, 0));
  QmmReport bad = verify_qmm(qz, star, u1, data.fundamental_fields, 3, 4);
  EXPECT_FALSE(bad.pass);
  EXPECT_FALSE(bad.witness.empty());

  // su(2): J_a = zb (sigma_a / 2) z satisfies the bracket relation exactly
  auto z = [&](int k) { return RingElement::z(m, k); };
  auto zb = [&](int k) { return RingElement::zb(m, k); };
  Scalar half = Scalar::rational(1, 2);
  Scalar ihalf(mpq_class(0), mpq_class(1, 2));
  std::vector<RingElement> j = {(zb(0) * z(1) + zb(1) * z(0)) * half, (zb(0) * z(1) - zb(1) * z(0)) * (-ihalf),
                                (zb(0) * z(0) - zb(1) * z(1)) * half};
  SymplecticData su2data(omega, j);
  LieAlgebraData su2 = LieAlgebraData::su2();
  EXPECT_TRUE(su2data.is_equivariant(su2));
  QmmReport rep = verify_qmm(QuantumMomentumMap::classical(j, 4), star, su2, su2data.fundamental_fields, 2, 4);
  EXPECT_TRUE(rep.pass) << (rep.failures.empty() ? "" : rep.failures.front());
}
