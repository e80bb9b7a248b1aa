#include "nlslab/variational.hpp"

#include <cmath>
#include <random>
#include <string>

namespace nlslab {

double PairObjective::energy(std::span<const RealField> s) const {
  return energy_pair(StatePair(s[0], s[1]), params_).total;
}

long double PairObjective::precise_energy(std::span<const RealField> s) const {
  return energy_total_precise(StatePair(s[0], s[1]), params_);
}

std::vector<RealField> PairObjective::gradient(std::span<const RealField> s) const {
  StatePair g = el_gradient(StatePair(s[0], s[1]), params_);
  std::vector<RealField> out;
  out.push_back(std::move(g.first));
  out.push_back(std::move(g.second));
  return out;
}

double SingleObjective::energy(std::span<const RealField> s) const {
  return energy_single_unchecked(s[0], mu_, p_);
}

long double SingleObjective::precise_energy(std::span<const RealField> s) const {
  return energy_single_precise(s[0], mu_, p_);
}

std::vector<RealField> SingleObjective::gradient(std::span<const RealField> s) const {
  std::vector<RealField> out;
  out.push_back(single_gradient(s[0], mu_, p_));
  return out;
}

RealField gaussian_start(const GridSpec& grid, double a, std::uint64_t seed, int start, int component) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(component)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
  RealField u = RealField::sample(grid, [&](double x1, double x2, double x3) {
    const double base = std::exp(-0.5 * (x1 * x1 + x2 * x2) - 0.5 * x3 * x3);
    const double eta = c1 * x1 + c2 * x2 + c3 * (0.25 * x3 * x3 - 1.0);
    return base * (1.0 + 1e-3 * eta);
  });
  return project_mass(u, a);
}

namespace {

void check_pair_params(const ModelParams& params) {
  auto bad = violations(params);
  if (params.beta == 0.0) {
    std::erase_if(bad, [](const std::string& s) { return s.rfind("beta", 0) == 0; });
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

MinimizationResult best_of(std::vector<DescentResult>& runs) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].energy < runs[best].energy) best = k;
  }
  DescentResult& r = runs[best];
  RealField second = r.state.size() > 1 ? std::move(r.state[1]) : RealField(r.state[0].grid());
  MinimizationResult out{StatePair(std::move(r.state[0]), std::move(second)), {}, {}, {}, 0, false, 0.0, 0.0, 0.0, {}, 0};
  out.trace = std::move(r.trace);
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.residual1 = r.residuals[0];
  out.residual2 = r.residuals.size() > 1 ? r.residuals[1] : 0.0;
  out.max_mass_error = r.max_mass_error;
  out.multipliers = {r.lambdas[0], r.lambdas.size() > 1 ? r.lambdas[1] : 0.0};
  for (const auto& run : runs) out.start_energies.push_back(run.energy);
  out.best_start = static_cast<int>(best);
  return out;
}

}  // namespace

MinimizationResult minimize_pair(const ModelParams& params, const GridSpec& grid,
                                 const SolverOptions& options, const std::optional<StatePair>& init) {
  check_pair_params(params);
  options.validate();
  const PairObjective objective(params);
  const double masses[] = {params.a1, params.a2};
  std::vector<DescentResult> runs;
  for (int s = 0; s < options.starts; ++s) {
    std::vector<RealField> start;
    if (init) {
      require_same_grid(init->grid(), grid, "minimize_pair init");
      start.push_back(init->first);
      start.push_back(init->second);
    } else {
      start.push_back(gaussian_start(grid, params.a1, options.seed, s, 0));
      start.push_back(gaussian_start(grid, params.a2, options.seed, s, 1));
    }
    runs.push_back(descend(objective, std::move(start), masses, options));
    if (init) break;  // identical starts would repeat the same run
  }
  MinimizationResult out = best_of(runs);
  out.energy = energy_pair(out.state, params);
  return out;
}

MinimizationResult minimize_single(double mu, double p, double a, const GridSpec& grid,
                                   const SolverOptions& options) {
  std::vector<std::string> bad;
  if (!(mu > 0.0)) bad.emplace_back("mu must be > 0");
  if (!(p > 2.0 && p < 10.0 / 3.0)) bad.emplace_back("p out of (2,10/3)");
  if (!(a > 0.0)) bad.emplace_back("a must be > 0");
  if (!bad.empty()) throw ValidationError(std::move(bad));
  options.validate();

  const SingleObjective objective(mu, p);
  const double masses[] = {a};
  std::vector<DescentResult> runs;
  for (int s = 0; s < options.starts; ++s) {
    std::vector<RealField> start;
    start.push_back(gaussian_start(grid, a, options.seed, s, 0));
    runs.push_back(descend(objective, std::move(start), masses, options));
  }
  MinimizationResult out = best_of(runs);
  const RealField& u = out.state.first;
  out.energy.kinetic = kinetic_energy(u);
  out.energy.potential = potential_moment(u);
  out.energy.self1 = mu / p * lp_norm_p(u, p);
  out.energy.total = 0.5 * out.energy.kinetic + 0.5 * out.energy.potential - out.energy.self1;
  return out;
}

}  // namespace nlslab
