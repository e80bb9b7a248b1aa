#pragma once

#include "nlslab/descent.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// Lowest eigenpair of -Delta_h + x1^2 + x2^2 on a grid.
struct GroundState {
  /// Rayleigh quotient of `field`.
  double energy = 0.0;
  /// Unit-mass, nonnegative up to round-off.
  RealField field;
  int iterations = 0;
};

/// Solver settings used by the ground-state routines unless overridden.
SolverOptions ground_state_options();

/// Transverse ground state (planar grid). Requires L1, L2 >= 6; throws
/// std::domain_error otherwise and NumericalError on non-convergence.
GroundState ground_2d(const GridSpec& plane, const SolverOptions& options = ground_state_options());

/// Ground state of the partially confined operator on a 3D box.
GroundState ground_3d(const GridSpec& box, const SolverOptions& options = ground_state_options());

/// Ground energies on a box and its transverse restriction.
struct Spectrum {
  double lambda0 = 0.0;  // transverse
  double Lambda0 = 0.0;  // full box
  double gap = 0.0;      // Lambda0 - lambda0
  int iterations_2d = 0;
  int iterations_3d = 0;
};

Spectrum spectrum(const GridSpec& box, const SolverOptions& options = ground_state_options());

/// Lambda0_h on `box` from the transverse ground energy plus the lowest 1D
/// Dirichlet mode along x3. Exact for this separable operator; used where a
/// full 3D eigensolve would be wasteful (very long boxes).
double separable_box_energy(double transverse_energy, const GridSpec& box);

}  // namespace nlslab
