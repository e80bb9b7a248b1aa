#include <benchmark/benchmark.h>

#include <cmath>

#include "nlslab/descent.hpp"
#include "nlslab/dynamics.hpp"
#include "nlslab/energy.hpp"
#include "nlslab/rearrange.hpp"
#include "nlslab/sine_transform.hpp"
#include "nlslab/variational.hpp"

using namespace nlslab;

namespace {

// Grid sizes: 32 x 32 x n3 on the standard box.
GridSpec box(int n3) { return GridSpec({32, 32, n3}, {8.0, 8.0, 16.0}); }

StatePair gaussians(const GridSpec& g) {
  auto f = [&](double s) {
    return RealField::sample(g, [s](double a, double b, double c) {
      return std::exp(-0.5 * (a * a + b * b) - 0.25 * (c - s) * (c - s));
    });
  };
  return {f(1.0), f(-1.0)};
}

void BM_DstApply(benchmark::State& st) {
  const GridSpec g = box(static_cast<int>(st.range(0)));
  const DirichletLaplacian lap(g);
  std::vector<double> mult(lap.eigenvalues().size());
  for (std::size_t k = 0; k < mult.size(); ++k) mult[k] = 1.0 / (1.0 + lap.eigenvalues()[k]);
  RealField u = gaussians(g).first;
  for (auto _ : st) {
    lap.apply(u, mult);
    benchmark::DoNotOptimize(u.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(g.size()));
}
// n3 + 1 = 128 is smooth; 129 = 3 * 43 is not.
BENCHMARK(BM_DstApply)->Arg(127)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Hamiltonian(benchmark::State& st) {
  const RealField u = gaussians(box(128)).first;
  for (auto _ : st) benchmark::DoNotOptimize(apply_hamiltonian(u));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(u.size()));
}
BENCHMARK(BM_Hamiltonian)->Unit(benchmark::kMillisecond);

void BM_EnergyPair(benchmark::State& st) {
  const StatePair s = gaussians(box(128));
  const ModelParams m = ModelParams::reference();
  for (auto _ : st) benchmark::DoNotOptimize(energy_pair(s, m));
}
BENCHMARK(BM_EnergyPair)->Unit(benchmark::kMillisecond);

void BM_Gradient(benchmark::State& st) {
  const StatePair s = gaussians(box(128));
  const ModelParams m = ModelParams::reference();
  for (auto _ : st) benchmark::DoNotOptimize(el_gradient(s, m));
}
BENCHMARK(BM_Gradient)->Unit(benchmark::kMillisecond);

void BM_CoupledRearrangement(benchmark::State& st) {
  const GridSpec g = box(128);
  // Supports on the two x3 halves, so every merged column fits.
  auto half = [&](bool lower) {
    return RealField::sample(g, [lower](double a, double b, double c) {
      return (c < 0.0) == lower ? std::exp(-0.5 * (a * a + b * b) - 0.25 * c * c) : 0.0;
    });
  };
  const RealField u = half(true), v = half(false);
  for (auto _ : st) benchmark::DoNotOptimize(coupled_x3(u, v));
}
BENCHMARK(BM_CoupledRearrangement)->Unit(benchmark::kMillisecond);

void BM_PropagatorStep(benchmark::State& st) {
  const GridSpec g = box(127);
  const StatePair s = gaussians(g);
  ComplexPair phi{to_complex(s.first), to_complex(s.second)};
  const Scheme scheme = st.range(0) == 0 ? Scheme::Strang : Scheme::Yoshida4;
  const Propagator prop(g, ModelParams::reference(), 1e-3, 1e-10, scheme);
  for (auto _ : st) prop.step(phi);
  st.SetLabel(st.range(0) == 0 ? "strang" : "yoshida4");
}
BENCHMARK(BM_PropagatorStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// A fixed number of descent iterations from the Gaussian start.
void BM_DescentIterations(benchmark::State& st) {
  const GridSpec g = box(128);
  const PairObjective obj(ModelParams::reference());
  SolverOptions o;
  o.max_iter = static_cast<int>(st.range(0));
  o.tol_residual = 1e-14;
  const double masses[] = {1.0, 1.0};
  for (auto _ : st) {
    std::vector<RealField> init{gaussian_start(g, 1.0, 0, 0, 0), gaussian_start(g, 1.0, 0, 0, 1)};
    benchmark::DoNotOptimize(descend(obj, std::move(init), masses, o));
  }
}
BENCHMARK(BM_DescentIterations)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
