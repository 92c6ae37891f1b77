#include <gtest/gtest.h>

#include "brst/koszul.hpp"

using namespace brst;

namespace {

RingElement hopf_J(int m) { return (RingElement::radius_squared(m) - RingElement(m, Scalar(1))) * Scalar::rational(1, 2); }

std::vector<RingElement> monomial_functions(int m, int max_deg) {
  std::vector<RingElement> out;
  for (const auto &mono : monomials_up_to(2 * m, max_deg)) out.emplace_back(Poly(2 * m, mono));
  return out;
}

} // namespace

TEST(Koszul, DeltaExamples) {
  const int m = 2;
  RingElement j = hopf_J(m);
  RingElement f = RingElement::z(m, 0) * RingElement::zb(m, 1);
  KoszulChain x = KoszulChain::generator(f, 1, 0);
  EXPECT_EQ(delta(x, {j}), KoszulChain::scalar(constant_series(f * j, 4), 1));
  EXPECT_EQ(delta(KoszulChain::generator(RingElement(m, Scalar(1)), 1, 0), {j}), KoszulChain::scalar(constant_series(j, 4), 1));
  EXPECT_TRUE(delta(delta(x, {j}), {j}).is_zero());
  // rank three: delta^2 = 0 on e1 ^ e2 ^ e3
  KoszulChain y(m, 3);
  y.add_term(7, constant_series(f, 4));
  std::vector<RingElement> js = {RingElement::z(m, 0), RingElement::zb(m, 1), j};
  EXPECT_FALSE(delta(y, js).is_zero());
  EXPECT_TRUE(delta(delta(y, js), js).is_zero());
  EXPECT_TRUE(delta(KoszulChain::scalar(constant_series(f, 4), 1), {j}).is_zero());
}

TEST(Koszul, ProlongAndRestrict) {
  const int m = 2;
  auto z1 = Poly::var(4, 0), zb2 = Poly::var(4, 3);
  EXPECT_EQ(prolong(Poly(4, Scalar(1))), RingElement(m, Scalar(1)));
  EXPECT_EQ(prolong(z1), RingElement::z(m, 0) * RingElement::s(m) * RingElement::w(m));
  EXPECT_EQ(prolong(z1 * zb2), RingElement(z1 * zb2) * RingElement::w(m));
  EXPECT_EQ(iota_star(RingElement::radius_squared(m)), Poly(4, Scalar(1)));
  EXPECT_TRUE(iota_star(hopf_J(m)).is_zero());
  for (const auto &f : monomial_functions(m, 4)) {
    Poly phi = iota_star(f);
    EXPECT_EQ(iota_star(prolong(phi)), phi);
  }
}

TEST(Koszul, HomotopyExamples) {
  for (int m = 1; m <= 3; ++m) {
    RingElement j = hopf_J(m);
    EXPECT_EQ(h0_coefficient(RingElement::radius_squared(m), j), RingElement(m, Scalar(2)));
    RingElement g = RingElement::z(m, 0) * RingElement::zb(m, m - 1) * RingElement::zb(m, 0);
    EXPECT_EQ(h0_coefficient(j * g, j), g);
    EXPECT_TRUE(h0_coefficient(prolong(iota_star(g)), j).is_zero());
  }
}

TEST(Koszul, HomotopyIdentityAndOracle) {
  for (int m = 1; m <= 2; ++m) {
    RingElement j = hopf_J(m);
    PolyVectorField x(m);
    for (int k = 0; k < m; ++k) {
      x.component(2 * k) = RingElement::z(m, k) * Scalar(mpq_class(0), mpq_class(-1, 2));
      x.component(2 * k + 1) = RingElement::zb(m, k) * Scalar(mpq_class(0), mpq_class(1, 2));
    }
    // point with r = 36/25 so that s = 6/5 is rational
    std::vector<Scalar> point(2 * m);
    point[0] = point[1] = Scalar::rational(6, 5);
    Scalar s_val = Scalar::rational(6, 5);
    for (const auto &f : monomial_functions(m, m == 1 ? 6 : 5)) {
      RingElement h = h0_coefficient(f, j);
      ASSERT_EQ(prolong(iota_star(f)) + h * j, f) << f.to_string();
      EXPECT_EQ(h0_coefficient(x.apply(f), j), x.apply(h));
      // profile oracle: f(c s) = s^d f(c), so h0 f = 2 f(c)(s^d - 1)/(s^2 - 1)
      int d = f.as_polynomial().degree();
      Scalar fc = f.evaluate(point, s_val);
      for (int k = 0; k < d; ++k) fc /= s_val;
      Scalar sd(1);
      for (int k = 0; k < d; ++k) sd *= s_val;
      Scalar expect = Scalar(2) * fc * (sd - Scalar(1)) / (s_val * s_val - Scalar(1));
      EXPECT_EQ(h.evaluate(point, s_val), expect) << f.to_string();
    }
  }
}
