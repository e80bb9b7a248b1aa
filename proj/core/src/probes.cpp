#include "nlslab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/variational.hpp"

namespace nlslab {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_converged(const MinimizationResult& r, const char* what) {
  if (!r.converged) {
    throw NumericalError(std::string(what) + ": minimisation did not converge (residual " +
                         num(std::max(r.residual1, r.residual2)) + " after " + std::to_string(r.iterations) +
                         " iterations)");
  }
}

// Best (c1, c2) for y ~ c1 x^e1 - c2 x^e2 and the resulting rms.
TwoPowerFit solve_coefficients(std::span<const double> x, std::span<const double> y, double e1, double e2) {
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double f1 = std::pow(x[k], e1);
    const double f2 = -std::pow(x[k], e2);
    s11 += f1 * f1;
    s12 += f1 * f2;
    s22 += f2 * f2;
    t1 += f1 * y[k];
    t2 += f2 * y[k];
  }
  const double det = s11 * s22 - s12 * s12;
  TwoPowerFit fit{0.0, e1, 0.0, e2, std::numeric_limits<double>::infinity()};
  if (!(std::abs(det) > 0.0)) return fit;
  fit.c1 = (t1 * s22 - t2 * s12) / det;
  fit.c2 = (s11 * t2 - s12 * t1) / det;
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = fit.c1 * std::pow(x[k], e1) - fit.c2 * std::pow(x[k], e2) - y[k];
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(x.size()));
  return fit;
}

}  // namespace

GridSpec scaling_grid() { return GridSpec({32, 32, 1024}, {8.0, 8.0, 120.0}); }

std::vector<double> ScalingCurve::excess() const {
  std::vector<double> out;
  for (double e : energies) out.push_back(e - 0.5 * a * Lambda0);
  return out;
}

std::vector<double> ScalingCurve::structural() const {
  std::vector<double> out;
  for (double e : energies) out.push_back(e - 0.5 * a * lambda0);
  return out;
}

ScalingCurve scaling_probe(double mu, double p, double a, std::span<const double> lambdas, const GridSpec& grid,
                           const SolverOptions& ground) {
  std::vector<std::string> bad;
  if (!(mu >= 0.0)) bad.emplace_back("mu must be >= 0");
  if (!(p > 2.0 && p < 10.0 / 3.0)) bad.emplace_back("p out of (2,10/3)");
  if (!(a > 0.0)) bad.emplace_back("a must be > 0");
  for (double l : lambdas) {
    if (!(l > 0.0)) bad.push_back("lambda must be > 0 (got " + num(l) + ")");
  }
  if (grid.planar()) bad.emplace_back("scaling probe needs a 3D grid");
  if (!bad.empty()) throw ValidationError(std::move(bad));

  const GroundState w = ground_2d(grid.transverse(), ground);
  ScalingCurve curve{mu, p, a, {lambdas.begin(), lambdas.end()}, {}, w.energy,
                     separable_box_energy(w.energy, grid)};

  const int n3 = grid.n(2);
  const double h3 = grid.spacing(2);
  const double norm = std::sqrt(a) * std::pow(std::numbers::pi, -0.25);
  for (double lam : lambdas) {
    std::vector<double> psi(n3);
    double m = 0.0;
    for (int k = 0; k < n3; ++k) {
      const double y = lam * grid.coord(2, k);
      psi[k] = std::sqrt(lam) * norm * std::exp(-0.5 * y * y);
      m += psi[k] * psi[k] * h3;
    }
    const double fix = std::sqrt(a / m);
    for (double& v : psi) v *= fix;

    RealField u(grid);
    for (int i1 = 0; i1 < grid.n(0); ++i1) {
      for (int i2 = 0; i2 < grid.n(1); ++i2) {
        // w lives on the transverse grid: index i1 * n2 + i2.
        const double wv = w.field[static_cast<std::size_t>(i1) * grid.n(1) + i2];
        const std::size_t base = grid.index(i1, i2, 0);
        for (int k = 0; k < n3; ++k) u[base + k] = wv * psi[k];
      }
    }
    if (!boundary_clean(u)) {
      throw NumericalError("scaling_probe: boundary contamination at lambda = " + num(lam));
    }
    curve.energies.push_back(energy_single_unchecked(u, mu, p));
  }
  return curve;
}

TwoPowerFit fit_two_powers(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 4) {
    throw std::invalid_argument("fit_two_powers: need at least 4 matching samples");
  }
  for (double v : x) {
    if (!(v > 0.0)) throw std::invalid_argument("fit_two_powers: abscissae must be > 0");
  }
  TwoPowerFit best;
  best.rms = std::numeric_limits<double>::infinity();
  for (double e1 = 0.5; e1 <= 4.0 + 1e-12; e1 += 0.05) {
    for (double e2 = 0.05; e2 < e1 - 0.05 + 1e-12; e2 += 0.05) {
      const TwoPowerFit f = solve_coefficients(x, y, e1, e2);
      if (f.rms < best.rms) best = f;
    }
  }
  // Pattern search on (e1, e2), halving the stencil when no neighbour improves.
  for (double step = 0.025; step > 1e-10;) {
    bool moved = false;
    const double d1[] = {step, -step, 0.0, 0.0};
    const double d2[] = {0.0, 0.0, step, -step};
    for (int k = 0; k < 4; ++k) {
      const double e1 = best.e1 + d1[k];
      const double e2 = best.e2 + d2[k];
      if (!(e2 > 0.0) || !(e1 > e2)) continue;
      const TwoPowerFit f = solve_coefficients(x, y, e1, e2);
      if (f.rms < best.rms) {
        best = f;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

double m_single_hat(double mu, double p, double a, const GridSpec& grid, const SolverOptions& options) {
  const MinimizationResult r = minimize_single(mu, p, a, grid, options);
  require_converged(r, "m_single_hat");
  return r.total();
}

double m_hat(const ModelParams& params, double a1, double a2, const GridSpec& grid, const SolverOptions& options) {
  if (!(a1 >= 0.0) || !(a2 >= 0.0)) throw ValidationError({"masses must be >= 0"});
  if (a1 == 0.0 && a2 == 0.0) return 0.0;
  if (a1 == 0.0) return m_single_hat(params.mu2, params.p2, a2, grid, options);
  if (a2 == 0.0) return m_single_hat(params.mu1, params.p1, a1, grid, options);
  ModelParams q = params;
  q.a1 = a1;
  q.a2 = a2;
  const MinimizationResult r = minimize_pair(q, grid, options);
  require_converged(r, "m_hat");
  return r.total();
}

bool SubaddReport::weak_holds(double tol) const {
  return std::all_of(splits.begin(), splits.end(), [&](const SplitOutcome& s) { return s.gap >= -tol; });
}

SubaddReport subadd_probe(const ModelParams& params, std::span<const Split> splits, const GridSpec& grid,
                          const SolverOptions& options) {
  std::vector<std::string> bad;
  for (const Split& s : splits) {
    const std::string tag = "split (" + num(s.b1) + "," + num(s.b2) + ")";
    if (!(s.b1 >= 0.0 && s.b1 <= params.a1 && s.b2 >= 0.0 && s.b2 <= params.a2)) {
      bad.push_back(tag + " outside [0,a1] x [0,a2]");
    } else if ((s.b1 == 0.0 && s.b2 == 0.0) || (s.b1 == params.a1 && s.b2 == params.a2)) {
      bad.push_back(tag + " is degenerate");
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  SubaddReport report;
  report.m_full = m_hat(params, params.a1, params.a2, grid, options);
  for (const Split& s : splits) {
    SplitOutcome o{s, m_hat(params, s.b1, s.b2, grid, options),
                   m_hat(params, params.a1 - s.b1, params.a2 - s.b2, grid, options), 0.0, 0.0};
    o.sum = o.m_b + o.m_c;
    o.gap = o.sum - report.m_full;
    report.splits.push_back(o);
  }
  return report;
}

ThetaCheck theta_scaling_check(double mu, double p, double a, double theta, const GridSpec& grid,
                               const SolverOptions& options) {
  if (!(theta > 1.0)) throw ValidationError({"theta must be > 1 (got " + num(theta) + ")"});
  return {theta, m_single_hat(mu, p, theta * a, grid, options), theta * m_single_hat(mu, p, a, grid, options)};
}

SplitBoundReport split_bound_check(const ModelParams& params, const GridSpec& grid, const SolverOptions& options,
                                 double Lambda0) {
  SplitBoundReport r;
  r.Lambda0 = Lambda0 > 0.0 ? Lambda0 : ground_3d(grid).energy;
  r.m = m_hat(params, params.a1, params.a2, grid, options);
  r.bound1 = 0.5 * r.Lambda0 * params.a1 + m_single_hat(params.mu2, params.p2, params.a2, grid, options);
  r.bound2 = m_single_hat(params.mu1, params.p1, params.a1, grid, options) + 0.5 * r.Lambda0 * params.a2;
  return r;
}

ContinuityProbe continuity_probe(const ModelParams& params, std::span<const double> eps, const GridSpec& grid,
                                 const SolverOptions& options) {
  ContinuityProbe c;
  c.base = m_hat(params, params.a1, params.a2, grid, options);
  for (double e : eps) {
    if (!(e > 0.0)) throw ValidationError({"continuity step must be > 0 (got " + num(e) + ")"});
    const double v = m_hat(params, params.a1 + e, params.a2, grid, options);
    c.eps.push_back(e);
    c.values.push_back(v);
    c.K = std::max(c.K, std::abs(v - c.base) / e);
  }
  return c;
}

}  // namespace nlslab
