#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlslab/sine_transform.hpp"

using namespace nlslab;

namespace {

// Dense -Delta_h, assembled column by column from the stencil.
Eigen::MatrixXd dense_laplacian(const GridSpec& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a(n, n);
  RealField e(g);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    const RealField col = apply_hamiltonian(e);
    e[j] = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = col[i];
    int i1 = static_cast<int>(j / (g.n(1) * g.n(2)));
    int i2 = static_cast<int>((j / g.n(2)) % g.n(1));
    a(j, j) -= transverse_potential(g, i1, i2);
  }
  return a;
}

}  // namespace

TEST(SineTransform, EigenvaluesMatchDenseSpectrum) {
  for (const GridSpec& g : {GridSpec({4, 5, 7}, {1.0, 1.5, 2.0}), GridSpec::plane({6, 9}, {2.0, 1.0})}) {
    const DirichletLaplacian lap(g);
    std::vector<double> ours = lap.eigenvalues();
    std::sort(ours.begin(), ours.end());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g));
    ASSERT_EQ(ours.size(), static_cast<std::size_t>(es.eigenvalues().size()));
    for (std::size_t k = 0; k < ours.size(); ++k) EXPECT_NEAR(ours[k], es.eigenvalues()(k), 1e-10 * ours.back());
  }
}

TEST(SineTransform, ModeEigenvalueFormula) {
  const double h = 0.25;
  EXPECT_NEAR(DirichletLaplacian::mode_eigenvalue(0, 7, h),
              4.0 / (h * h) * std::pow(std::sin(std::numbers::pi / 16.0), 2), 1e-12);
  // Tends to the continuum (pi / 2L)^2 as the grid is refined.
  EXPECT_NEAR(DirichletLaplacian::mode_eigenvalue(0, 4095, 2.0 / 4096), std::pow(std::numbers::pi / 2.0, 2), 1e-6);
}

TEST(SineTransform, MultiplierMatchesDenseFunctionalCalculus) {
  const GridSpec g({5, 4, 6}, {1.0, 1.0, 3.0});
  const DirichletLaplacian lap(g);
  std::vector<double> mult(lap.eigenvalues().size());
  for (std::size_t k = 0; k < mult.size(); ++k) mult[k] = std::exp(-0.05 * lap.eigenvalues()[k]);

  RealField u = RealField::sample(g, [](double a, double b, double c) { return std::cos(a + 2 * b) + c * c; });
  Eigen::VectorXd x(static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) x(static_cast<Eigen::Index>(i)) = u[i];

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g));
  const Eigen::VectorXd f = es.eigenvalues().unaryExpr([](double l) { return std::exp(-0.05 * l); });
  const Eigen::VectorXd y = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose() * x;

  lap.apply(u, mult);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i], y(static_cast<Eigen::Index>(i)), 1e-12);
}

TEST(SineTransform, ComplexMultiplierInvertsItsInverse) {
  const GridSpec g({8, 8, 33}, {4.0, 4.0, 8.0});
  const DirichletLaplacian lap(g);
  const auto& ev = lap.eigenvalues();
  std::vector<Complex> fwd(ev.size()), back(ev.size());
  for (std::size_t k = 0; k < ev.size(); ++k) {
    fwd[k] = (1.0 - Complex(0, 0.01) * ev[k]) / (1.0 + Complex(0, 0.01) * ev[k]);
    back[k] = 1.0 / fwd[k];
  }
  ComplexField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = Complex(std::sin(0.1 * i), std::cos(0.3 * i));
  const ComplexField u0 = u;
  lap.apply(u, fwd);
  EXPECT_NEAR(mass(u), mass(u0), 1e-12 * mass(u0));  // unitary
  lap.apply(u, back);
  for (std::size_t i = 0; i < u.size(); ++i) ASSERT_NEAR(std::abs(u[i] - u0[i]), 0.0, 1e-13);
}

TEST(SineTransform, IdentityMultiplierIsIdentity) {
  const GridSpec g({6, 7, 8}, {1.0, 1.0, 1.0});
  const DirichletLaplacian lap(g);
  RealField u = RealField::sample(g, [](double a, double b, double c) { return a * b - c; });
  const RealField u0 = u;
  lap.apply(u, std::vector<double>(lap.eigenvalues().size(), 1.0));
  for (std::size_t i = 0; i < u.size(); ++i) ASSERT_NEAR(u[i], u0[i], 1e-14);
}
