#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlslab/rearrange.hpp"

using namespace nlslab;

namespace {

const GridSpec kGrid({6, 6, 24}, {3.0, 3.0, 6.0});

RealField random_field(std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RealField u(kGrid);
  for (int i1 = 0; i1 < kGrid.n(0); ++i1)
    for (int i2 = 0; i2 < kGrid.n(1); ++i2)
      for (int i3 = lo; i3 < hi; ++i3) u(i1, i2, i3) = unif(rng) < 0.3 ? 0.0 : unif(rng) - 0.5;
  return u;
}

}  // namespace

TEST(Placement, LargestAtCentreThenAlternating) {
  std::vector<double> vals{1.0, 5.0, 3.0, 2.0};
  std::vector<double> out(5, -1.0);
  place_symmetric_decreasing(vals, out);
  EXPECT_EQ(out, (std::vector<double>{1.0, 3.0, 5.0, 2.0, 0.0}));

  std::vector<double> even{4.0, 4.0, 1.0, 2.0};
  std::vector<double> out4(4);
  place_symmetric_decreasing(even, out4);
  EXPECT_EQ(out4, (std::vector<double>{1.0, 4.0, 4.0, 2.0}));
}

TEST(Steiner, PreservesNormsAndPotentialMoment) {
  const RealField u = random_field(7, 3, 20);
  const RealField s = steiner_x3(u);
  for (double p : {1.0, 2.0, 3.5}) EXPECT_NEAR(lp_norm_p(s, p), lp_norm_p(u, p), 1e-13 * lp_norm_p(u, p));
  EXPECT_NEAR(potential_moment(s), potential_moment(u), 1e-13 * potential_moment(u));
  EXPECT_LE(axis_gradient_energy(s, 2), axis_gradient_energy(u, 2));
  EXPECT_LE(kinetic_energy(s), kinetic_energy(u) * (1 + 1e-14));
}

TEST(Steiner, IdempotentAndTranslationInvariant) {
  const RealField u = random_field(3, 4, 14);
  const RealField s = steiner_x3(u);
  const RealField ss = steiner_x3(s);
  const RealField st = steiner_x3(translate_x3(u, 5));
  for (std::size_t i = 0; i < u.size(); ++i) {
    ASSERT_EQ(ss[i], s[i]);
    ASSERT_EQ(st[i], s[i]);
    ASSERT_GE(s[i], 0.0);
  }
}

TEST(Coupled, DisjointSupportsAddNorms) {
  const RealField u = random_field(11, 0, 10);
  const RealField v = random_field(12, 13, 24);
  const RealField w = coupled_x3(u, v);
  for (double p : {1.0, 2.0, 4.0}) {
    EXPECT_NEAR(lp_norm_p(w, p), lp_norm_p(u, p) + lp_norm_p(v, p), 1e-13 * lp_norm_p(w, p));
  }
  EXPECT_LE(kinetic_energy(w), kinetic_energy(u) + kinetic_energy(v));
}

TEST(Coupled, OverflowIsReported) {
  RealField u(kGrid), v(kGrid);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = v[i] = 1.0;
  try {
    coupled_x3(u, v);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "insufficient grid extent along x3");
  }
}

TEST(Report, AllChecksHoldOnRandomPairs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RealField u = random_field(seed, 0, 12);
    const RealField v = random_field(100 + seed, 12, 24);
    const RearrangementReport r = rearrangement_report(u, v);
    EXPECT_TRUE(r.all_hold()) << "seed " << seed;
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.holds()) << c.name << " margin " << c.margin();
  }
}

TEST(Report, MarginSigns) {
  InequalityCheck eq{"eq", InequalityCheck::Kind::Equal, 1.0, 1.5, 0.0};
  EXPECT_DOUBLE_EQ(eq.margin(), -0.5);
  EXPECT_FALSE(eq.holds());
  InequalityCheck le{"le", InequalityCheck::Kind::LessEqual, 1.0, 1.0, 0.0};
  EXPECT_TRUE(le.holds());
  InequalityCheck lt{"lt", InequalityCheck::Kind::Less, 1.0, 1.0, 0.0};
  EXPECT_FALSE(lt.holds());
}

TEST(Product, CoupledProductDominatesSeparatedPairs) {
  const RealField u1 = random_field(21, 0, 10), u2 = random_field(22, 0, 10);
  const RealField v1 = random_field(23, 14, 24), v2 = random_field(24, 14, 24);
  const ProductPair pp = coupled_product_check(u1, u2, v1, v2, 1.5, 1.5);
  EXPECT_GT(pp.lhs, 0.0);
  EXPECT_LE(pp.lhs, pp.rhs * (1 + 1e-13));
}

TEST(AbsPower, Pointwise) {
  RealField u(kGrid);
  u(1, 2, 3) = -4.0;
  const RealField a = abs_power(u, 1.5);
  EXPECT_DOUBLE_EQ(a(1, 2, 3), 8.0);
  EXPECT_EQ(a(0, 0, 0), 0.0);
}
