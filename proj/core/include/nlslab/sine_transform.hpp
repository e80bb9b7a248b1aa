#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Spectral decomposition of the stencil Laplacian -Delta_h with zero ghost
/// cells. That operator is diagonalised by the type-I discrete sine transform
/// on every active axis, with eigenvalue
///   sum_a (4 / h_a^2) sin^2(pi (m_a + 1) / (2 (n_a + 1)))
/// for mode (m_1, m_2, m_3). Backed by FFTW (RODFT00).
class DirichletLaplacian {
 public:
  explicit DirichletLaplacian(const GridSpec& grid);
  ~DirichletLaplacian();
  DirichletLaplacian(DirichletLaplacian&&) noexcept;
  DirichletLaplacian& operator=(DirichletLaplacian&&) noexcept;
  DirichletLaplacian(const DirichletLaplacian&) = delete;
  DirichletLaplacian& operator=(const DirichletLaplacian&) = delete;

  const GridSpec& grid() const;

  /// Eigenvalues in storage order of the transformed coefficients.
  const std::vector<double>& eigenvalues() const;

  /// Eigenvalue of the 1D Dirichlet stencil on n points with spacing h.
  static double mode_eigenvalue(int m, int n, double h);

  /// u <- f(-Delta_h) u for a real spectral multiplier f.
  void apply(RealField& u, const std::vector<double>& multiplier) const;
  /// u <- f(-Delta_h) u for a complex spectral multiplier f.
  void apply(ComplexField& u, const std::vector<Complex>& multiplier) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nlslab
