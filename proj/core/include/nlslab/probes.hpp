#pragma once

#include <span>
#include <vector>

#include "nlslab/descent.hpp"
#include "nlslab/energy.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

// Numerical probes of the scaling, subadditivity and continuity properties of
// the constrained minimum. All minima are solver estimates (upper bounds on
// the discrete infimum); comparisons always use one grid so bias cancels.

/// Long box for the scaling probe: 32 x 32 x 1024 cells on [-8,8]^2 x [-120,120].
/// Gaussians of width 1/lambda stay boundary-clean down to lambda = 0.05.
GridSpec scaling_grid();

struct ScalingCurve {
  double mu = 0.0;
  double p = 0.0;
  double a = 0.0;
  std::vector<double> lambdas;
  /// I_{mu,p}(u_lambda) per lambda.
  std::vector<double> energies;
  /// Transverse ground energy of the probe grid.
  double lambda0 = 0.0;
  /// lambda0 plus the lowest Dirichlet mode along x3 (exact for this box).
  double Lambda0 = 0.0;

  /// energies - a Lambda0 / 2: negative where the curve dips below the linear level.
  std::vector<double> excess() const;
  /// energies - a lambda0 / 2 = (x3 kinetic) / 2 - nonlinear term; this is the
  /// quantity with the two-power structure c1 lambda^2 - c2 lambda^(p/2-1).
  std::vector<double> structural() const;
};

/// I_{mu,p}(u_lambda) for u_lambda(x) = w(x') lambda^(1/2) phi(lambda x3), with w
/// the transverse ground state and phi = sqrt(a) pi^(-1/4) exp(-x^2/2)
/// (rescaled to discrete mass a). mu = 0 is allowed. Throws ValidationError on
/// lambda <= 0, mu < 0 or p outside (2, 10/3), and NumericalError if some
/// u_lambda is not boundary-clean.
ScalingCurve scaling_probe(double mu, double p, double a, std::span<const double> lambdas,
                           const GridSpec& grid = scaling_grid(),
                           const SolverOptions& ground = ground_state_options());

/// Least-squares fit y ~ c1 x^e1 - c2 x^e2 with e1 > e2: exponents by a grid
/// search refined by pattern search, coefficients by linear least squares.
struct TwoPowerFit {
  double c1 = 0.0;
  double e1 = 0.0;
  double c2 = 0.0;
  double e2 = 0.0;
  double rms = 0.0;
};
TwoPowerFit fit_two_powers(std::span<const double> x, std::span<const double> y);

/// m(a1, a2) estimate; a zero mass reduces to the single-component problem of
/// the other component, and (0, 0) gives 0. Throws NumericalError if the solver
/// does not converge.
double m_hat(const ModelParams& params, double a1, double a2, const GridSpec& grid,
             const SolverOptions& options);

/// m_{mu,p}(a) estimate (single component).
double m_single_hat(double mu, double p, double a, const GridSpec& grid, const SolverOptions& options);

struct Split {
  double b1 = 0.0;
  double b2 = 0.0;
};

struct SplitOutcome {
  Split split;
  double m_b = 0.0;
  double m_c = 0.0;  // m(a - b)
  double sum = 0.0;
  /// sum - m(a): the weak inequality says gap >= 0.
  double gap = 0.0;
};

struct SubaddReport {
  double m_full = 0.0;
  std::vector<SplitOutcome> splits;

  /// m(a) <= m(b) + m(a-b) + tol on every split.
  bool weak_holds(double tol) const;
};

/// Throws ValidationError if some split leaves [0, a] componentwise or equals
/// (0, 0) or (a1, a2).
SubaddReport subadd_probe(const ModelParams& params, std::span<const Split> splits, const GridSpec& grid,
                          const SolverOptions& options);

struct ThetaCheck {
  double theta = 0.0;
  double lhs = 0.0;  // m(theta a)
  double rhs = 0.0;  // theta m(a)
  double gap() const { return rhs - lhs; }
};

/// Throws ValidationError for theta <= 1.
ThetaCheck theta_scaling_check(double mu, double p, double a, double theta, const GridSpec& grid,
                               const SolverOptions& options);

/// The two one-sided bounds on m(a1, a2) that come from freezing one component
/// in the linear ground state.
struct SplitBoundReport {
  double m = 0.0;
  double Lambda0 = 0.0;
  double bound1 = 0.0;  // Lambda0 a1 / 2 + m_{mu2,p2}(a2)
  double bound2 = 0.0;  // m_{mu1,p1}(a1) + Lambda0 a2 / 2
  double gap1() const { return bound1 - m; }
  double gap2() const { return bound2 - m; }
};

/// Lambda0 is taken from the 3D ground-state solve on `grid` unless given.
/// beta = 0 is allowed.
SplitBoundReport split_bound_check(const ModelParams& params, const GridSpec& grid, const SolverOptions& options,
                                 double Lambda0 = -1.0);

struct ContinuityProbe {
  double base = 0.0;  // m(a1, a2)
  std::vector<double> eps;
  std::vector<double> values;  // m(a1 + eps, a2)
  /// max_k |values_k - base| / eps_k.
  double K = 0.0;
};

ContinuityProbe continuity_probe(const ModelParams& params, std::span<const double> eps, const GridSpec& grid,
                                 const SolverOptions& options);

}  // namespace nlslab
