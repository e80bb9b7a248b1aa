#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "nlslab/spectral.hpp"

using namespace nlslab;

namespace {

double dense_lowest(const GridSpec& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a(n, n);
  RealField e(g);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    const RealField col = apply_hamiltonian(e);
    e[j] = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = col[i];
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST(Ground2d, MatchesDenseEigenvalue) {
  const GridSpec plane = GridSpec::plane({14, 14}, {6.0, 6.0});
  const GroundState gs = ground_2d(plane);
  EXPECT_NEAR(gs.energy, dense_lowest(plane), 1e-10);
  EXPECT_NEAR(mass(gs.field), 1.0, 1e-13);
  double neg = 0.0;
  for (double v : gs.field.values()) neg = std::min(neg, v);
  EXPECT_GT(neg, -1e-10);
}

TEST(Ground2d, ApproachesHarmonicOscillatorLevel) {
  // The continuum transverse ground energy is 2.
  const GroundState gs = ground_2d(GridSpec::plane({64, 64}, {8.0, 8.0}));
  EXPECT_NEAR(gs.energy, 2.0, 1e-2);
  EXPECT_LT(gs.energy, 2.0);  // the 5-point stencil underestimates
}

TEST(Ground2d, RejectsNarrowPlane) {
  EXPECT_THROW(ground_2d(GridSpec::plane({16, 16}, {5.0, 8.0})), std::domain_error);
}

TEST(Ground3d, MatchesDenseAndSeparableFormula) {
  const GridSpec box({10, 10, 12}, {6.0, 6.0, 3.0});
  const GroundState gs = ground_3d(box);
  EXPECT_NEAR(gs.energy, dense_lowest(box), 1e-9);
  const double l0 = ground_2d(box.transverse()).energy;
  EXPECT_NEAR(separable_box_energy(l0, box), gs.energy, 1e-9);
}

TEST(Spectrum, GapShrinksWithBoxLength) {
  const GridSpec plane = GridSpec::plane({24, 24}, {6.0, 6.0});
  const double l0 = ground_2d(plane).energy;
  double prev = 1e300;
  for (double L3 : {2.0, 4.0, 8.0, 16.0}) {
    const GridSpec box({24, 24, 64}, {6.0, 6.0, L3});
    const double L0 = separable_box_energy(l0, box);
    EXPECT_GT(L0, l0);
    EXPECT_LT(L0, prev);
    prev = L0;
  }
}

TEST(Spectrum, ReportsConsistentGap) {
  const Spectrum s = spectrum(GridSpec({12, 12, 16}, {6.0, 6.0, 4.0}));
  EXPECT_NEAR(s.gap, s.Lambda0 - s.lambda0, 1e-15);
  EXPECT_GT(s.gap, 0.0);
  EXPECT_GT(s.iterations_2d, 0);
  EXPECT_GT(s.iterations_3d, 0);
}
