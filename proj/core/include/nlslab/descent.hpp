#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Step-size and stopping controls for mass-constrained descent.
struct SolverOptions {
  enum class Method {
    /// Projected gradient: fixed step rule, tau <- armijo * tau on rejection
    /// and tau <- 1.5 tau after 5 consecutive accepted steps.
    Gradient,
    /// Projected Polak-Ribiere+ conjugate gradient with Armijo backtracking
    /// and a quadratic step refinement; restarts from the gradient direction
    /// whenever the search direction is not a descent direction.
    ConjugateGradient,
  };

  double tau0 = 0.5;
  double armijo = 0.5;
  double tol_energy = 1e-12;
  double tol_residual = 5e-7;
  int max_iter = 20000;
  /// Number of seeded starting perturbations (best energy wins).
  int starts = 3;
  std::uint64_t seed = 0;
  Method method = Method::ConjugateGradient;
  /// Precondition the projected gradient with (alpha - Delta_h)^(-1).
  bool precondition = true;
  /// Iterations over which the relative energy change is measured.
  int window = 50;

  /// Throws ValidationError on nonpositive steps or tolerances, or
  /// armijo outside (0, 1).
  void validate() const;
};

/// Energy functional on a product of mass spheres.
class ConstrainedObjective {
 public:
  virtual ~ConstrainedObjective() = default;
  virtual double energy(std::span<const RealField> state) const = 0;
  /// Unrounded energy used for line-search comparisons; defaults to energy().
  virtual long double precise_energy(std::span<const RealField> state) const { return energy(state); }
  /// L2 gradient of `energy`, one field per component.
  virtual std::vector<RealField> gradient(std::span<const RealField> state) const = 0;
};

struct TraceEntry {
  int iter = 0;
  double energy = 0.0;
  double residual = 0.0;
  double tau = 0.0;
};

struct DescentResult {
  std::vector<RealField> state;
  std::vector<double> lambdas;
  /// ||G_i - lambda_i u_i||_2 per component at the returned state.
  std::vector<double> residuals;
  double energy = 0.0;
  /// One entry per accepted iterate, starting with the initial state.
  std::vector<TraceEntry> trace;
  int iterations = 0;
  bool converged = false;
  /// max_i |mass(u_i) - a_i| / a_i over every recorded iterate.
  double max_mass_error = 0.0;
};

/// sqrt(a / mass(u)) u. Throws std::domain_error for a zero field or a <= 0.
RealField project_mass(const RealField& u, double a);

/// Minimises `objective` over {mass(u_i) = masses[i]} starting from `init`
/// (projected first). Stops unconverged at max_iter or when the energy has not
/// moved beyond round-off over a full window. Throws NumericalError on step collapse (tau < 1e-14)
/// before the residual tolerance is met, or on a non-finite energy.
DescentResult descend(const ConstrainedObjective& objective, std::vector<RealField> init,
                      std::span<const double> masses, const SolverOptions& options);

}  // namespace nlslab
