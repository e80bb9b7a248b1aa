#pragma once

#include <optional>
#include <vector>

#include "nlslab/descent.hpp"
#include "nlslab/energy.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// Outcome of a mass-constrained minimisation. For single-component runs the
/// second field is identically zero and lambda2 = 0.
struct MinimizationResult {
  StatePair state;
  EnergyBreakdown energy;
  Multipliers multipliers;
  std::vector<TraceEntry> trace;
  int iterations = 0;
  bool converged = false;
  /// ||G_i - lambda_i u_i||_2 at the returned state.
  double residual1 = 0.0;
  double residual2 = 0.0;
  double max_mass_error = 0.0;
  /// Final energy of every start, in start order; the best one is returned.
  std::vector<double> start_energies;
  int best_start = 0;

  double total() const { return energy.total; }
};

/// Seeded Gaussian initial guess: exp(-(x1^2+x2^2)/2 - x3^2/2) scaled to mass
/// a, times (1 + 1e-3 eta) with eta a seeded combination of x1, x2 and an
/// x3-even profile. `component` and `start` select the seed stream.
RealField gaussian_start(const GridSpec& grid, double a, std::uint64_t seed, int start, int component);

/// Minimises J over S(a1) x S(a2). Parameters must be admissible except that
/// beta = 0 is allowed (decoupled system). `init` replaces the Gaussian start
/// for every start when provided.
MinimizationResult minimize_pair(const ModelParams& params, const GridSpec& grid,
                                 const SolverOptions& options = {},
                                 const std::optional<StatePair>& init = std::nullopt);

/// Minimises I_{mu,p} over S(a). Requires mu > 0, 2 < p < 10/3, a > 0.
MinimizationResult minimize_single(double mu, double p, double a, const GridSpec& grid,
                                   const SolverOptions& options = {});

/// Objectives, exposed for tests and for callers driving `descend` directly.
class PairObjective final : public ConstrainedObjective {
 public:
  explicit PairObjective(ModelParams params) : params_(params) {}
  double energy(std::span<const RealField> s) const override;
  long double precise_energy(std::span<const RealField> s) const override;
  std::vector<RealField> gradient(std::span<const RealField> s) const override;

 private:
  ModelParams params_;
};

class SingleObjective final : public ConstrainedObjective {
 public:
  SingleObjective(double mu, double p) : mu_(mu), p_(p) {}
  double energy(std::span<const RealField> s) const override;
  long double precise_energy(std::span<const RealField> s) const override;
  std::vector<RealField> gradient(std::span<const RealField> s) const override;

 private:
  double mu_;
  double p_;
};

}  // namespace nlslab
