#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nlslab/energy.hpp"
#include "nlslab/field.hpp"
#include "nlslab/variational.hpp"

namespace nlslab {

enum class Scheme {
  Strang,
  /// Triple-jump composition of three Strang steps (weights w, 1 - 2w, w with
  /// w = 1 / (2 - 2^(1/3))): fourth order at three times the cost.
  Yoshida4,
};

struct PropagatorConfig {
  double dt = 1e-3;
  double T = 1.0;
  /// Relative residual allowed in each Crank-Nicolson solve.
  double linear_tol = 1e-10;
  /// Record every k-th step (t = 0 and the final step are always recorded).
  int record_every = 10;
  Scheme scheme = Scheme::Strang;

  /// Throws ValidationError on nonpositive dt, T, linear_tol or record_every.
  void validate() const;
  /// round(T / dt), at least 1.
  long steps() const;
};

/// Sampled observables of one run. For plain evolution `distance` is empty.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> mass1;
  std::vector<double> mass2;
  std::vector<double> energy;
  std::vector<double> distance;
  /// State after the last step.
  std::optional<ComplexPair> final_state;
  long steps = 0;
  /// Diagnostic only: the scheme is exact for Dirichlet ghosts either way, but
  /// a state touching the box edge is not a faithful whole-space sample.
  bool boundary_clean_init = true;
};

/// One Strang step of i d_t phi = (-Delta_h + V) phi - W(|phi|) phi:
/// half-step pointwise phase rotation by V - W_i, a Crank-Nicolson (Cayley)
/// step for -Delta_h solved in the sine basis, and the second half rotation.
/// Moduli are invariant under the rotations and the Cayley factor is unitary,
/// so each component's mass is conserved to round-off. Yoshida4 composes
/// three such steps.
class Propagator {
 public:
  Propagator(const GridSpec& grid, const ModelParams& params, double dt, double linear_tol,
             Scheme scheme = Scheme::Strang);
  ~Propagator();
  Propagator(Propagator&&) noexcept;
  Propagator& operator=(Propagator&&) noexcept;

  /// Advances in place. Throws NumericalError if the linear residual exceeds
  /// linear_tol.
  void step(ComplexPair& state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Observation hook called at every record point.
using RecordHook = std::function<void(double t, const ComplexPair& state)>;

/// Evolves `init`. Exponents must satisfy the admissibility bounds; mu and
/// beta may be zero (linear evolution). Throws ValidationError for a bad
/// config, NumericalError on a non-finite state (naming the step) or a failed
/// linear solve.
Trajectory evolve(const ComplexPair& init, const ModelParams& params, const PropagatorConfig& cfg,
                  const RecordHook& hook = {});

/// Complex conjugate of both components: evolving the conjugate forward is
/// evolving the original backward.
ComplexPair time_reverse(ComplexPair s);

/// ||f||_H^2 = ||f||_Hdot^2 + ||f||_2^2.
double h_norm_sq(const ComplexField& f);

struct OrbitDistance {
  double distance = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  /// x3 shift of the reference in cells (fractional after refinement).
  double shift = 0.0;
};

/// min over phases theta_i and a common x3 shift s of
///   ||(phi1, phi2) - (e^{i theta1} u1(. - s e3), e^{i theta2} u2(. - s e3))||_{H x H}.
/// Phases are exact minimisers (arguments of H inner products); the shift is
/// searched over whole cells and refined by a parabola through the best
/// three.
OrbitDistance orbit_distance(const ComplexPair& phi, const StatePair& u);

/// Seeded smooth perturbation with ||eta||_H = delta on each component.
ComplexPair seeded_perturbation(const GridSpec& grid, double delta, std::uint64_t seed);

/// Perturbs the minimiser by `seeded_perturbation`, re-projects the masses,
/// evolves and records the orbit distance at every record point. Requires a
/// converged minimiser and delta >= 0.
Trajectory stability_experiment(const MinimizationResult& minimizer, double delta, const ModelParams& params,
                                const PropagatorConfig& cfg, std::uint64_t seed = 0);

}  // namespace nlslab
