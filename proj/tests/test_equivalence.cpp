#include <gtest/gtest.h>

#include <random>

#include "brst/equivalence.hpp"

using namespace brst;

namespace {

RingElement hopf_J(int m) { return (RingElement::radius_squared(m) - RingElement(m, Scalar(1))) * Scalar::rational(1, 2); }

QuantizedKoszulConfig hopf_config(int m, const Scalar &c, int order) {
  QuantizedKoszulConfig cfg;
  cfg.star = StarProduct::wick(standard_symplectic_form(m));
  cfg.lie = LieAlgebraData::abelian(1);
  cfg.momentum_map = {hopf_J(m)};
  cfg.qmm = QuantumMomentumMap::classical(cfg.momentum_map, order);
  if (!c.is_zero()) cfg.qmm.values[0].set(1, RingElement(m, c));
  cfg.kappa = NuScalar(order);
  cfg.truncation = order;
  return cfg;
}

const FilteredAlgebra &reduced_cp1(int c, int order) {
  static std::map<std::pair<int, int>, FilteredAlgebra> cache;
  auto key = std::make_pair(c, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ReducedSpace space(hopf_config(2, Scalar(c), order));
    it = cache.emplace(key, reduced_algebra(space, 6, order)).first;
  }
  return it->second;
}

} // namespace

TEST(Equivalence, IdentityOnSameProduct) {
  const auto &alg = reduced_cp1(0, 4);
  EXPECT_EQ(alg.dimension(), 16);
  auto res = find_equivalence(alg, alg, 3, 6);
  ASSERT_TRUE(res.found);
  EXPECT_TRUE(res.op.is_identity());
  EXPECT_EQ(res.verdict(), "FOUND");
}

TEST(Equivalence, RecoversConjugation) {
  const auto &alg = reduced_cp1(0, 3);
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-2, 2);
  EquivalenceOp s = EquivalenceOp::identity(alg.dimension(), 2);
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < alg.dimension(); ++a)
      for (int b = 0; b < alg.dimension(); ++b)
        if (alg.degree[b] <= alg.degree[a] && alg.weights[b] == alg.weights[a] && coef(rng) > 0) s.stages[k][a][b] = Scalar(coef(rng) + 3);
  FilteredAlgebra twisted = conjugate(alg, s);
  EXPECT_TRUE(intertwining_defect(twisted, alg, s, 2) == std::nullopt);
  auto res = find_equivalence(twisted, alg, 1, 6);
  ASSERT_TRUE(res.found) << res.witness;
  EXPECT_FALSE(intertwining_defect(twisted, alg, res.op, 2).has_value());
}

TEST(Equivalence, ClassShiftObstructs) {
  const auto &a1 = reduced_cp1(1, 2);
  const auto &a0 = reduced_cp1(0, 2);
  auto res = find_equivalence(a1, a0, 1, 6);
  EXPECT_FALSE(res.found);
  EXPECT_EQ(res.verdict(), "NONE_UP_TO(1, 6)");
  EXPECT_EQ(res.obstruction_order, 2);
  EXPECT_FALSE(res.witness.empty());
  // the products agree through first order: the shift is invisible there
  auto first = find_equivalence(a1, a0, 0, 6);
  EXPECT_TRUE(first.found);
}

TEST(Equivalence, AmbientIdentity) {
  StarProduct star = StarProduct::wick(standard_symplectic_form(1));
  FilteredAlgebra alg = ambient_algebra(star, 4, 3);
  auto res = find_equivalence(alg, alg, 2, 4);
  EXPECT_TRUE(res.found);
  EXPECT_TRUE(res.op.is_identity());
}

TEST(Equivalence, ReduceEquivalence) {
  const int m = 2;
  auto cfg = hopf_config(m, Scalar(0), 2);
  ReducedSpace space(cfg);
  SymplecticData data(standard_symplectic_form(m), {hopf_J(m)});
  const auto &x = data.fundamental_fields[0];
  EquivalenceOp id = reduce_equivalence(identity_equivalence(), space, cfg.qmm, x, 6);
  EXPECT_TRUE(id.is_identity());

  RingElement g = (RingElement::z(m, 0) * RingElement::zb(m, 1) + RingElement::z(m, 1) * RingElement::zb(m, 0)) * Scalar(3);
  auto t = inner_automorphism(cfg.star, g, 2);
  EquivalenceOp tred = reduce_equivalence(t, space, cfg.qmm, x, 6);
  EXPECT_FALSE(tred.is_identity());
  FilteredAlgebra alg = reduced_algebra(space, 6, 2);
  EXPECT_FALSE(intertwining_defect(alg, alg, tred, 2).has_value());

  auto bad = inner_automorphism(cfg.star, RingElement::z(m, 0), 2);
  try {
    reduce_equivalence(bad, space, cfg.qmm, x, 6);
    FAIL() << "expected NOT_EQUIVARIANT";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEquivariant);
  }
}
