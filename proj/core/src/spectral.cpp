#include "nlslab/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/sine_transform.hpp"

namespace nlslab {

namespace {

class QuadraticForm final : public ConstrainedObjective {
 public:
  double energy(std::span<const RealField> s) const override { return 0.5 * h_seminorm_sq(s[0]); }
  long double precise_energy(std::span<const RealField> s) const override {
    return 0.5L * (precise::kinetic_energy(s[0]) + precise::potential_moment(s[0]));
  }
  std::vector<RealField> gradient(std::span<const RealField> s) const override {
    std::vector<RealField> g;
    g.push_back(apply_hamiltonian(s[0]));
    return g;
  }
};

GroundState solve(const GridSpec& grid, const SolverOptions& options) {
  RealField init = RealField::sample(grid, [](double x1, double x2, double x3) {
    return std::exp(-0.5 * (x1 * x1 + x2 * x2 + x3 * x3));
  });
  const double unit[] = {1.0};
  std::vector<RealField> start;
  start.push_back(std::move(init));
  DescentResult r = descend(QuadraticForm{}, std::move(start), unit, options);
  if (!r.converged) {
    throw NumericalError("ground state: no convergence after " + std::to_string(r.iterations) +
                         " iterations (residual " + std::to_string(r.residuals[0]) + ")");
  }
  GroundState gs{0.0, std::move(r.state[0]), r.iterations};
  gs.energy = rayleigh_quotient(gs.field);
  return gs;
}

}  // namespace

SolverOptions ground_state_options() {
  SolverOptions o;
  o.tol_residual = 1e-7;
  o.tol_energy = 1e-14;
  o.max_iter = 20000;
  o.starts = 1;
  return o;
}

GroundState ground_2d(const GridSpec& plane, const SolverOptions& options) {
  if (!plane.planar()) throw std::domain_error("ground_2d: expected a planar grid");
  if (plane.half_width(0) < 6.0 || plane.half_width(1) < 6.0) {
    throw std::domain_error("ground_2d: transverse half-width must be >= 6");
  }
  return solve(plane, options);
}

GroundState ground_3d(const GridSpec& box, const SolverOptions& options) {
  if (box.planar()) throw std::domain_error("ground_3d: expected a 3D grid");
  return solve(box, options);
}

Spectrum spectrum(const GridSpec& box, const SolverOptions& options) {
  const GroundState g2 = ground_2d(box.transverse(), options);
  const GroundState g3 = ground_3d(box, options);
  return {g2.energy, g3.energy, g3.energy - g2.energy, g2.iterations, g3.iterations};
}

double separable_box_energy(double transverse_energy, const GridSpec& box) {
  return transverse_energy + DirichletLaplacian::mode_eigenvalue(0, box.n(2), box.spacing(2));
}

}  // namespace nlslab
