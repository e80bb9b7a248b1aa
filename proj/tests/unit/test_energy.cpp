#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "nlslab/energy.hpp"

using namespace nlslab;

namespace {

const GridSpec kGrid({8, 8, 12}, {4.0, 4.0, 6.0});

StatePair smooth_pair() {
  RealField u = RealField::sample(kGrid, [](double a, double b, double c) {
    return 0.8 * std::exp(-0.5 * (a * a + b * b) - 0.3 * (c - 0.5) * (c - 0.5));
  });
  RealField v = RealField::sample(kGrid, [](double a, double b, double c) {
    return 0.6 * std::exp(-0.4 * (a * a + b * b) - 0.2 * (c + 1.0) * (c + 1.0)) * (1.0 + 0.1 * a);
  });
  return {std::move(u), std::move(v)};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Params, ReferenceIsAdmissible) {
  EXPECT_TRUE(violations(ModelParams::reference()).empty());
  EXPECT_NO_THROW(validate(ModelParams::reference()));
}

TEST(Params, EveryViolationIsNamed) {
  ModelParams m;
  m.p1 = 10.0 / 3.0;  // bound is strict
  m.r1 = 1.0;
  m.r2 = 2.4;
  m.beta = 0.0;
  m.a2 = -1.0;
  const auto v = violations(m);
  EXPECT_TRUE(mentions(v, "p1 out of (2,10/3)"));
  EXPECT_TRUE(mentions(v, "r1 must be > 1"));
  EXPECT_TRUE(mentions(v, "r1+r2 must be < 10/3"));
  EXPECT_TRUE(mentions(v, "beta must be > 0"));
  EXPECT_TRUE(mentions(v, "a2 must be > 0"));
  EXPECT_EQ(v.size(), 5u);
  try {
    validate(m);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations(), v);
  }
}

TEST(Energy, BreakdownSumsToTotal) {
  const StatePair s = smooth_pair();
  const ModelParams m = ModelParams::reference();
  const EnergyBreakdown e = energy_pair(s, m);
  EXPECT_NEAR(e.total, 0.5 * (e.kinetic + e.potential) - e.self1 - e.self2 - e.cross, 1e-14);
  EXPECT_NEAR(e.kinetic, kinetic_energy(s.first) + kinetic_energy(s.second), 1e-13);
  EXPECT_NEAR(e.self1, lp_norm_p(s.first, 3.0) / 3.0, 1e-15);
  EXPECT_NEAR(e.cross, mixed_integral(s.first, s.second, 1.5, 1.5), 1e-15);
  EXPECT_NEAR(static_cast<double>(energy_total_precise(s, m)), e.total, 1e-14);
}

TEST(Energy, ComplexPhaseInvariance) {
  const StatePair s = smooth_pair();
  ComplexPair c{to_complex(s.first), to_complex(s.second)};
  for (std::size_t i = 0; i < c.first.size(); ++i) c.first[i] *= std::polar(1.0, 0.7);
  // Potential and nonlinear terms depend on |u| only.
  const auto er = energy_pair(s, ModelParams::reference());
  const auto ec = energy_pair(c, ModelParams::reference());
  EXPECT_NEAR(ec.potential, er.potential, 1e-13);
  EXPECT_NEAR(ec.cross, er.cross, 1e-13);
  EXPECT_NEAR(ec.total, er.total, 1e-13);
}

TEST(Energy, ZeroCouplingDecouples) {
  const StatePair s = smooth_pair();
  ModelParams m;
  m.beta = 0.0;
  m.p2 = 2.8;
  m.mu2 = 0.5;
  const double sum = energy_single(s.first, m.mu1, m.p1) + energy_single(s.second, m.mu2, m.p2);
  EXPECT_NEAR(energy_pair(s, m).total, sum, 1e-14);
  EXPECT_THROW(energy_single(s.first, 0.0, 3.0), ValidationError);
  EXPECT_NEAR(energy_single_unchecked(s.first, 0.0, 3.0), 0.5 * h_seminorm_sq(s.first), 1e-14);
}

TEST(Energy, GradientMatchesCentralDifferences) {
  const StatePair s = smooth_pair();
  ModelParams m;
  m.r1 = 1.3;
  m.r2 = 1.8;
  m.p1 = 2.5;
  // Relative directions keep u + eps v away from zero, where |u|^(r-2) is not smooth.
  StatePair dir = s;
  for (std::size_t i = 0; i < s.first.size(); ++i) {
    dir.first[i] *= std::sin(0.7 * i);
    dir.second[i] *= std::cos(0.3 * i);
  }
  const StatePair g = el_gradient(s, m);
  const double analytic = inner(g.first, dir.first) + inner(g.second, dir.second);

  auto J = [&](double eps) {
    StatePair t = s;
    t.first.axpy(eps, dir.first);
    t.second.axpy(eps, dir.second);
    return energy_total_precise(t, m);
  };
  double prev = 0.0;
  for (double eps : {1e-2, 5e-3}) {
    const double fd = static_cast<double>((J(eps) - J(-eps)) / (2.0L * eps));
    const double err = std::abs(fd - analytic);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.2);  // second order
    prev = err;
  }
  EXPECT_LT(prev, 1e-4 * std::abs(analytic));
}

TEST(Energy, SingleGradientMatchesCentralDifferences) {
  const RealField u = smooth_pair().first;
  const RealField d = smooth_pair().second;
  const double analytic = inner(single_gradient(u, 1.3, 3.0), d);
  const double eps = 1e-4;
  RealField up = u, dn = u;
  up.axpy(eps, d);
  dn.axpy(-eps, d);
  const long double fd = (energy_single_precise(up, 1.3, 3.0) - energy_single_precise(dn, 1.3, 3.0)) / (2.0L * eps);
  EXPECT_NEAR(static_cast<double>(fd), analytic, 1e-7);
}

TEST(Energy, MultipliersAreProjectedGradient) {
  const StatePair s = smooth_pair();
  const ModelParams m = ModelParams::reference();
  const Multipliers lam = multipliers(s, m);
  const StatePair g = el_gradient(s, m);
  EXPECT_NEAR(lam.lambda1, inner(g.first, s.first) / mass(s.first), 1e-13);
  EXPECT_NEAR(lam.lambda2, inner(g.second, s.second) / mass(s.second), 1e-13);
  EXPECT_THROW(multipliers(StatePair{s.first, RealField(kGrid)}, m), std::domain_error);
}

TEST(Energy, NonlinearPotentialsVanishWithComponent) {
  const StatePair s = smooth_pair();
  const auto [w1, w2] = nonlinear_potentials(StatePair{s.first, RealField(kGrid)}, ModelParams::reference());
  for (std::size_t i = 0; i < w1.size(); ++i) {
    ASSERT_NEAR(w1[i], std::abs(s.first[i]), 1e-15);  // mu1 |u1|^(3-2)
    ASSERT_EQ(w2[i], 0.0);
  }
}

TEST(Holder, BoundDominatesAndIsSharpForEqualFields) {
  const StatePair s = smooth_pair();
  for (auto [r1, r2] : {std::pair{1.5, 1.5}, {1.2, 2.0}, {2.0, 1.1}}) {
    EXPECT_LE(mixed_integral(s.first, s.second, r1, r2), holder_bound(s.first, s.second, r1, r2) * (1 + 1e-14));
    const auto h = holder_exponents(r1, r2);
    EXPECT_NEAR(1.0 / h.q + 1.0 / h.q_conj, 1.0, 1e-15);
    EXPECT_NEAR(r1 * h.q, r1 + r2, 1e-14);
  }
  EXPECT_NEAR(mixed_integral(s.first, s.first, 1.5, 1.5), holder_bound(s.first, s.first, 1.5, 1.5), 1e-14);
}

TEST(GagliardoNirenberg, RatioIsScaleFree) {
  const RealField u = smooth_pair().first;
  EXPECT_NEAR(GNExponent::of(3.0).alpha, 0.5, 1e-15);
  EXPECT_NEAR(GNExponent::of(3.0, 2).alpha, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(gn_ratio(3.7 * u, 3.0), gn_ratio(u, 3.0), 1e-12);
  EXPECT_THROW(gn_ratio(u, 7.0), std::domain_error);
  EXPECT_THROW(gn_ratio(RealField(kGrid), 3.0), std::domain_error);
}
