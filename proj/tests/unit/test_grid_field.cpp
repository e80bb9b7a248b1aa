#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"

using namespace nlslab;

namespace {

// int exp(-a x^2) over R.
double gauss_integral(double a) { return std::sqrt(std::numbers::pi / a); }

}  // namespace

TEST(Grid, CellCentresAndIndexing) {
  const GridSpec g({4, 6, 8}, {2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(g.spacing(0), 1.0);
  EXPECT_DOUBLE_EQ(g.coord(0, 0), -1.5);
  EXPECT_DOUBLE_EQ(g.coord(2, 7), 3.5);
  EXPECT_EQ(g.index(1, 2, 3), (1u * 6 + 2) * 8 + 3);
  EXPECT_EQ(g.size(), 4u * 6 * 8);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 1.0 * 1.0 * 1.0);
  EXPECT_EQ(g.active_axes(), 3);
}

TEST(Grid, RejectsTooFewCellsOrBadExtent) {
  EXPECT_THROW(GridSpec({3, 8, 8}, {1.0, 1.0, 1.0}), std::domain_error);
  EXPECT_THROW(GridSpec({8, 8, 8}, {1.0, 0.0, 1.0}), std::domain_error);
}

TEST(Grid, PlanarRestriction) {
  const GridSpec g = GridSpec::standard();
  EXPECT_EQ(g.cells(), (std::array<int, 3>{32, 32, 128}));
  const GridSpec t = g.transverse();
  EXPECT_TRUE(t.planar());
  EXPECT_EQ(t.n(2), 1);
  EXPECT_EQ(t.active_axes(), 2);
  EXPECT_EQ(t, GridSpec::plane({32, 32}, {8.0, 8.0}));
  EXPECT_NE(t, g);
}

TEST(Quadrature, GaussianMassMatchesAnalytic) {
  const GridSpec g({64, 64, 128}, {8.0, 8.0, 16.0});
  const RealField u = RealField::sample(g, [](double x1, double x2, double x3) {
    return std::exp(-0.5 * (x1 * x1 + x2 * x2) - 0.25 * x3 * x3);
  });
  // Midpoint rule is spectrally accurate for Gaussians well inside the box.
  const double exact = gauss_integral(1.0) * gauss_integral(1.0) * gauss_integral(0.5);
  EXPECT_NEAR(mass(u), exact, 1e-10 * exact);
  EXPECT_NEAR(lp_norm_p(u, 4.0), gauss_integral(2.0) * gauss_integral(2.0) * gauss_integral(1.0), 1e-10);
}

TEST(Quadrature, PotentialMomentMatchesAnalytic) {
  const GridSpec g({64, 64, 64}, {8.0, 8.0, 8.0});
  const RealField u = RealField::sample(g, [](double x1, double x2, double x3) {
    return std::exp(-0.5 * (x1 * x1 + x2 * x2 + x3 * x3));
  });
  // int (x1^2 + x2^2) e^{-|x|^2} = 2 * (sqrt(pi)/2) * pi = pi^{3/2}.
  EXPECT_NEAR(potential_moment(u), std::pow(std::numbers::pi, 1.5), 1e-9);
}

TEST(Quadrature, MixedIntegralOfShiftedGaussians) {
  const GridSpec g({48, 48, 96}, {8.0, 8.0, 16.0});
  auto gauss = [](double c) {
    return [c](double x1, double x2, double x3) {
      return std::exp(-0.5 * (x1 * x1 + x2 * x2) - 0.5 * (x3 - c) * (x3 - c));
    };
  };
  const RealField u = RealField::sample(g, gauss(-1.0));
  const RealField v = RealField::sample(g, gauss(1.0));
  // r1 = r2 = 1: int e^{-|x'|^2} e^{-((x3+1)^2 + (x3-1)^2)/2} = pi * sqrt(pi) e^{-1}.
  const double exact = std::numbers::pi * std::sqrt(std::numbers::pi) * std::exp(-1.0);
  EXPECT_NEAR(mixed_integral(u, v, 1.0, 1.0), exact, 1e-8);
}

TEST(Quadrature, MixedIntegralZeroForDisjointSupports) {
  const GridSpec g({8, 8, 16}, {4.0, 4.0, 8.0});
  RealField u(g), v(g);
  u(3, 3, 2) = 1.0;
  v(3, 3, 9) = 1.0;
  EXPECT_EQ(mixed_integral(u, v, 1.5, 1.5), 0.0);
  v(3, 3, 2) = 0.5;
  EXPECT_GT(mixed_integral(u, v, 1.5, 1.5), 0.0);
}

TEST(Stencil, GradientEnergyOfSingleSpike) {
  // One unit cell value: each active axis contributes 2 / h^2 * h^3.
  const GridSpec g({4, 4, 4}, {2.0, 2.0, 4.0});
  RealField u(g);
  u(1, 2, 1) = 1.0;
  EXPECT_DOUBLE_EQ(axis_gradient_energy(u, 0), 2.0 * g.cell_volume() / 1.0);
  EXPECT_DOUBLE_EQ(axis_gradient_energy(u, 2), 2.0 * g.cell_volume() / 4.0);
}

TEST(Stencil, HamiltonianIsGradientOfQuadraticForm) {
  const GridSpec g({6, 6, 10}, {3.0, 3.0, 5.0});
  const RealField u = RealField::sample(g, [](double x1, double x2, double x3) {
    return std::exp(-0.3 * (x1 * x1 + x2 * x2 + x3 * x3)) * (1.0 + 0.2 * x1 - 0.1 * x3);
  });
  // <Hu, u> equals the quadrature of |grad u|^2 + V u^2 exactly.
  EXPECT_NEAR(inner(apply_hamiltonian(u), u), h_seminorm_sq(u), 1e-13 * h_seminorm_sq(u));
}

TEST(Translate, ShiftsAndZeroFills) {
  const GridSpec g({4, 4, 8}, {1.0, 1.0, 2.0});
  RealField u(g);
  u(1, 1, 2) = 3.0;
  const RealField t = translate_x3(u, 3);
  EXPECT_EQ(t(1, 1, 5), 3.0);
  EXPECT_EQ(t(1, 1, 2), 0.0);
  EXPECT_EQ(translate_x3(u, -3)(1, 1, 2), 0.0);  // moved off the grid
  EXPECT_THROW(translate_x3(u, 8), std::domain_error);
}

TEST(Strips, CoverPartitionsMass) {
  const GridSpec g({6, 6, 30}, {3.0, 3.0, 7.5});
  const RealField u = RealField::sample(g, [](double x1, double x2, double x3) {
    return std::cos(0.3 * x1) * std::exp(-0.1 * x2 * x2) * (2.0 + std::sin(x3));
  });
  for (int w : {1, 4, 7, 30}) {
    const auto strips = strip_masses(u, w);
    double sum = 0.0;
    for (double s : strips) sum += s;
    EXPECT_NEAR(sum, mass(u), 1e-14 * mass(u)) << "width " << w;
  }
  EXPECT_EQ(unit_strip_cells(g), 2);
}

TEST(Recenter, MovesHeaviestStripToCentre) {
  const GridSpec g({4, 4, 32}, {2.0, 2.0, 8.0});
  RealField u(g);
  u(1, 1, 5) = 1.0;
  const auto r = recenter_x3(u);
  const auto planes = plane_masses(r.field);
  EXPECT_EQ(planes[14] + planes[15] + planes[16] + planes[17], mass(u));
  EXPECT_EQ(translate_x3(u, r.shift)(1, 1, 5 + r.shift), 1.0);
  EXPECT_THROW(recenter_x3(RealField(g)), std::domain_error);
}

TEST(Boundary, CleanDetectsEdgeMass) {
  const GridSpec g({8, 8, 16}, {4.0, 4.0, 8.0});
  RealField u(g);
  u(4, 4, 8) = 1.0;
  EXPECT_TRUE(boundary_clean(u));
  u(4, 4, 0) = 1e-3;
  EXPECT_FALSE(boundary_clean(u));
  EXPECT_GT(boundary_layer_mass(u), 0.0);
}

TEST(Complex, ModulusAndPromotion) {
  const GridSpec g({4, 4, 4}, {1.0, 1.0, 1.0});
  RealField u(g);
  u(1, 2, 3) = -2.0;
  ComplexField c = to_complex(u);
  c *= 1.0;
  c(1, 2, 3) *= Complex(0.0, 1.0);
  EXPECT_DOUBLE_EQ(modulus_field(c)(1, 2, 3), 2.0);
  EXPECT_DOUBLE_EQ(mass(c), mass(u));
}
