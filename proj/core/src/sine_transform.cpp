#include "nlslab/sine_transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace nlslab {

namespace {

// FFTW's planner is not thread-safe; plans are created once per layout and
// shared. Execution through the new-array interface is thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using PlanKey = std::tuple<int, int, int, bool, bool>;  // n1, n2, n3, planar, complex

fftw_plan cached_plan(const GridSpec& g, bool complex_layout) {
  static std::map<PlanKey, fftw_plan> cache;
  const PlanKey key{g.n(0), g.n(1), g.n(2), g.planar(), complex_layout};
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const int rank = g.active_axes();
  int dims[3] = {g.n(0), g.n(1), g.n(2)};
  fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
  const int howmany = complex_layout ? 2 : 1;
  const int stride = complex_layout ? 2 : 1;
  const int dist = 1;
  std::vector<double> scratch(g.size() * howmany);
  fftw_plan plan = fftw_plan_many_r2r(rank, dims, howmany, scratch.data(), nullptr, stride, dist,
                                      scratch.data(), nullptr, stride, dist, kinds,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

struct DirichletLaplacian::Impl {
  GridSpec grid;
  std::vector<double> eig;
  double normalisation;
  fftw_plan real_plan;
  fftw_plan complex_plan;

  explicit Impl(const GridSpec& g)
      : grid(g),
        normalisation(1.0),
        real_plan(cached_plan(g, false)),
        complex_plan(cached_plan(g, true)) {
    const int axes = g.active_axes();
    for (int a = 0; a < axes; ++a) normalisation *= 2.0 * (g.n(a) + 1);
    std::vector<double> e1(g.n(0)), e2(g.n(1)), e3(g.n(2), 0.0);
    for (int m = 0; m < g.n(0); ++m) e1[m] = mode_eigenvalue(m, g.n(0), g.spacing(0));
    for (int m = 0; m < g.n(1); ++m) e2[m] = mode_eigenvalue(m, g.n(1), g.spacing(1));
    if (!g.planar()) {
      for (int m = 0; m < g.n(2); ++m) e3[m] = mode_eigenvalue(m, g.n(2), g.spacing(2));
    }
    eig.resize(g.size());
    for (int i1 = 0; i1 < g.n(0); ++i1)
      for (int i2 = 0; i2 < g.n(1); ++i2)
        for (int i3 = 0; i3 < g.n(2); ++i3) eig[g.index(i1, i2, i3)] = e1[i1] + e2[i2] + e3[i3];
  }
};

DirichletLaplacian::DirichletLaplacian(const GridSpec& grid) : impl_(std::make_unique<Impl>(grid)) {}
DirichletLaplacian::~DirichletLaplacian() = default;
DirichletLaplacian::DirichletLaplacian(DirichletLaplacian&&) noexcept = default;
DirichletLaplacian& DirichletLaplacian::operator=(DirichletLaplacian&&) noexcept = default;

const GridSpec& DirichletLaplacian::grid() const { return impl_->grid; }
const std::vector<double>& DirichletLaplacian::eigenvalues() const { return impl_->eig; }

double DirichletLaplacian::mode_eigenvalue(int m, int n, double h) {
  const double s = std::sin(std::numbers::pi * (m + 1) / (2.0 * (n + 1)));
  return 4.0 * s * s / (h * h);
}

void DirichletLaplacian::apply(RealField& u, const std::vector<double>& multiplier) const {
  require_same_grid(u.grid(), impl_->grid, "DirichletLaplacian::apply");
  double* d = u.data();
  fftw_execute_r2r(impl_->real_plan, d, d);
  const double scale = 1.0 / impl_->normalisation;
  for (std::size_t i = 0; i < u.size(); ++i) d[i] *= multiplier[i] * scale;
  fftw_execute_r2r(impl_->real_plan, d, d);
}

void DirichletLaplacian::apply(ComplexField& u, const std::vector<Complex>& multiplier) const {
  require_same_grid(u.grid(), impl_->grid, "DirichletLaplacian::apply");
  auto* d = reinterpret_cast<double*>(u.data());
  fftw_execute_r2r(impl_->complex_plan, d, d);
  const double scale = 1.0 / impl_->normalisation;
  Complex* c = u.data();
  for (std::size_t i = 0; i < u.size(); ++i) c[i] *= multiplier[i] * scale;
  fftw_execute_r2r(impl_->complex_plan, d, d);
}

}  // namespace nlslab
