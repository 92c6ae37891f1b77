#include <gtest/gtest.h>

#include "brst/parser.hpp"
#include "brst/qreduction.hpp"

using namespace brst;

TEST(Parser, Atoms) {
  const int m = 2;
  EXPECT_EQ(parse_expression("z1", m), RingElement::z(m, 0));
  EXPECT_EQ(parse_expression("zb2", m), RingElement::zb(m, 1));
  EXPECT_EQ(parse_expression("3/4", m), RingElement(m, Scalar::rational(3, 4)));
  EXPECT_EQ(parse_expression("i", m), RingElement(m, Scalar::i()));
  EXPECT_EQ(parse_expression("h12", m), RingElement::z(m, 0) * RingElement::zb(m, 1) * RingElement::w(m));
}

TEST(Parser, Precedence) {
  const int m = 2;
  auto z1 = RingElement::z(m, 0), zb1 = RingElement::zb(m, 0);
  EXPECT_EQ(parse_expression("z1 + 2*zb1^2", m), z1 + zb1 * zb1 * Scalar(2));
  EXPECT_EQ(parse_expression("-z1^2", m), -(z1 * z1));
  EXPECT_EQ(parse_expression("(z1 + zb1)^2 - z1*z1", m), zb1 * zb1 + z1 * zb1 * Scalar(2));
  EXPECT_EQ(parse_expression("1 - 2 - 3", m), RingElement(m, Scalar(-4)));
  // h11 + h22 = 1 on the reduced space
  auto u = ReducedFunction::from_representative(parse_expression("h11 + h22", m));
  EXPECT_EQ(u.normal_form(), Poly(4, Scalar(1)));
}

TEST(Parser, Errors) {
  for (const char *bad : {"", "z", "z3", "h1", "h13", "2*", "(z1", "z1)", "x", "1/", "z1^", "z1^1000"}) {
    try {
      parse_expression(bad, 2);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
    }
  }
}
