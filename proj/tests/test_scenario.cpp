#include <gtest/gtest.h>

#include "brst/scenario.hpp"

using namespace brst;

TEST(Scenario, BuildsAndValidates) {
  for (int n = 0; n <= 2; ++n) {
    auto s = build_scenario(n);
    EXPECT_EQ(s->dim(), n + 1);
    EXPECT_EQ(s->bounds.degree, 8);
    EXPECT_EQ(s->bounds.nu_order, 4);
    EXPECT_TRUE(s->connection.reproduces_generators(s->symplectic.fundamental_fields, s->ideal));
  }
  try {
    build_scenario(3);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedN);
  }
  EXPECT_THROW(build_scenario(-1), Error);
}

TEST(Scenario, ConventionReport) {
  auto s = build_scenario(1);
  auto report = s->conventions();
  std::map<std::string, std::string> m(report.begin(), report.end());
  EXPECT_EQ(m.at("constraint"), "C = {J = 0} = S^3");
  EXPECT_NE(m.at("connection").find("theta = 1i w"), std::string::npos);
}

TEST(Scenario, ChartExamples) {
  auto s = build_scenario(1);
  auto one = tubular_chart_pushforward(RingElement(2, Scalar(1)));
  EXPECT_EQ(one.restriction, Poly(4, Scalar(1)));
  EXPECT_EQ(*one.mu_polynomial(), std::vector<Scalar>{Scalar(1)});

  auto z = tubular_chart_pushforward(RingElement::z(2, 0));
  ASSERT_EQ(z.profile.size(), 1u);
  EXPECT_EQ(z.profile.begin()->first, 1);
  EXPECT_FALSE(z.mu_polynomial().has_value());

  auto j = tubular_chart_pushforward(s->J());
  EXPECT_TRUE(j.restriction.is_zero());
  EXPECT_EQ(*j.mu_polynomial(), (std::vector<Scalar>{Scalar(0), Scalar(1)}));
}

TEST(Scenario, ChartNumericOracle) {
  // z = t c with c = (3/5, 4i/5) on S^3: f(z) = sum_d f_d(c) t^d
  const int m = 2;
  RingElement f = RingElement::z(m, 0).pow(2) * RingElement::zb(m, 1) + RingElement::z(m, 0) * RingElement::zb(m, 0) * Scalar(3) -
                  RingElement(m, Scalar(2)) + RingElement::z(m, 1) * Scalar::i();
  std::vector<Scalar> c{Scalar::rational(3, 5), Scalar::rational(3, 5), Scalar::rational(4, 5) * Scalar::i(),
                        -Scalar::rational(4, 5) * Scalar::i()};
  Scalar t(2);
  std::vector<Scalar> zt;
  for (const auto &x : c) zt.push_back(x * t);
  Scalar direct = f.as_polynomial().evaluate(zt);
  auto push = tubular_chart_pushforward(f);
  Scalar chart(0), tp(1);
  for (int d = 0; d <= 3; ++d, tp *= t)
    if (push.profile.count(d)) chart += push.profile.at(d).evaluate(c) * tp;
  EXPECT_EQ(direct, chart);
  EXPECT_EQ(push.restriction.evaluate(c), f.as_polynomial().evaluate(c));
}

TEST(Scenario, OmegaBasicAndConfig) {
  auto s = build_scenario(1);
  EXPECT_TRUE(is_basic(ideal_reduce(s->symplectic.omega, s->ideal), s->ideal, s->symplectic.fundamental_fields));
  auto cfg = s->koszul_config(Scalar(1), 3);
  EXPECT_EQ(cfg.qmm.values[0].at(1, RingElement(2)), RingElement(2, Scalar(1)));
  EXPECT_EQ(cfg.rank(), 1);
}
