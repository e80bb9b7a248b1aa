#include "nlslab/descent.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/sine_transform.hpp"

namespace nlslab {

namespace {

constexpr double kSufficientDecrease = 1e-4;
constexpr double kMinStep = 1e-14;
constexpr int kGrowAfter = 5;
constexpr double kGrowFactor = 1.5;
constexpr double kMaxStepGrowth = 100.0;
constexpr long double kStallRelative = 1e-18L;

double dot(std::span<const RealField> a, std::span<const RealField> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += inner(a[i], b[i]);
  return s;
}

// Removes the component of p along u (tangent space of the sphere at u).
void make_tangent(RealField& p, const RealField& u, double a) {
  const double c = inner(p, u) / a;
  p.axpy(-c, u);
}

struct Derivatives {
  std::vector<RealField> projected;  // G_i - lambda_i u_i
  std::vector<double> lambdas;
  std::vector<double> residuals;
  double residual = 0.0;
};

Derivatives derivatives(const ConstrainedObjective& obj, const std::vector<RealField>& u,
                        std::span<const double> masses) {
  Derivatives d;
  d.projected = obj.gradient(u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lambda = inner(d.projected[i], u[i]) / masses[i];
    d.projected[i].axpy(-lambda, u[i]);
    const double r = std::sqrt(std::max(0.0, mass(d.projected[i])));
    d.lambdas.push_back(lambda);
    d.residuals.push_back(r);
    d.residual = std::max(d.residual, r);
  }
  return d;
}

}  // namespace

void SolverOptions::validate() const {
  std::vector<std::string> bad;
  if (!(tau0 > 0.0)) bad.emplace_back("tau0 must be > 0");
  if (!(armijo > 0.0 && armijo < 1.0)) bad.emplace_back("armijo must lie in (0,1)");
  if (!(tol_energy > 0.0)) bad.emplace_back("tol_energy must be > 0");
  if (!(tol_residual > 0.0)) bad.emplace_back("tol_residual must be > 0");
  if (max_iter < 1) bad.emplace_back("max_iter must be >= 1");
  if (starts < 1) bad.emplace_back("starts must be >= 1");
  if (window < 1) bad.emplace_back("window must be >= 1");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

RealField project_mass(const RealField& u, double a) {
  if (!(a > 0.0)) throw std::domain_error("project_mass: target mass must be > 0");
  const double m = mass(u);
  if (m == 0.0) throw std::domain_error("project_mass: zero field");
  RealField out = u;
  out *= std::sqrt(a / m);
  return out;
}

DescentResult descend(const ConstrainedObjective& obj, std::vector<RealField> init,
                      std::span<const double> masses, const SolverOptions& opt) {
  opt.validate();
  const std::size_t n = init.size();
  if (n == 0 || masses.size() != n) throw std::invalid_argument("descend: component/mass count mismatch");

  std::vector<RealField> u;
  u.reserve(n);
  for (std::size_t i = 0; i < n; ++i) u.push_back(project_mass(init[i], masses[i]));
  const GridSpec& grid = u[0].grid();

  DescentResult res;
  auto mass_error = [&](const std::vector<RealField>& s) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(mass(s[i]) - masses[i]) / masses[i]);
    return e;
  };

  std::optional<DirichletLaplacian> laplacian;
  std::vector<double> precond;
  if (opt.precondition) {
    laplacian.emplace(grid);
    double alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i) alpha = std::max(alpha, rayleigh_quotient(u[i]));
    const auto& eig = laplacian->eigenvalues();
    precond.resize(eig.size());
    for (std::size_t k = 0; k < eig.size(); ++k) precond[k] = 1.0 / (alpha + eig[k]);
  }
  auto precondition = [&](const std::vector<RealField>& g) {
    std::vector<RealField> z = g;
    for (std::size_t i = 0; i < n; ++i) {
      if (laplacian) laplacian->apply(z[i], precond);
      make_tangent(z[i], u[i], masses[i]);
    }
    return z;
  };

  // Projection hits the sphere only to an ulp, and a uniform ulp rescaling
  // shifts E by ~lambda * ulp, which swamps the decrease near convergence.
  // Comparisons therefore use E - sum_i lambda_i (mass_i - a_i) / 2, the
  // first-order energy of the exactly projected state.
  struct Evaluation {
    long double raw = 0.0L;
    std::vector<long double> masses;
  };
  auto evaluate = [&](const std::vector<RealField>& s) {
    Evaluation ev{obj.precise_energy(s), {}};
    for (const auto& f : s) ev.masses.push_back(precise::mass(f));
    return ev;
  };
  Derivatives d = derivatives(obj, u, masses);
  auto on_sphere = [&](const Evaluation& ev) {
    long double e = ev.raw;
    for (std::size_t i = 0; i < n; ++i) e -= 0.5L * d.lambdas[i] * (ev.masses[i] - masses[i]);
    return e;
  };

  Evaluation current = evaluate(u);
  if (!std::isfinite(current.raw)) throw NumericalError("descend: non-finite initial energy");
  long double energy = on_sphere(current);
  std::vector<long double> history{energy};

  double tau = opt.tau0;
  res.trace.push_back({0, static_cast<double>(energy), d.residual, tau});
  res.max_mass_error = mass_error(u);

  const bool cg = opt.method == SolverOptions::Method::ConjugateGradient;
  std::vector<RealField> p_prev, z_prev;
  double gz_prev = 0.0;
  int accepted_run = 0;

  auto converged = [&]() {
    if (d.residual >= opt.tol_residual) return false;
    const std::size_t last = history.size() - 1;
    const std::size_t ref = last >= static_cast<std::size_t>(opt.window) ? last - opt.window : 0;
    const long double change = std::abs(history[ref] - energy);
    return change <= opt.tol_energy * std::max(std::abs(energy), 1.0L);
  };

  // No energy movement over a full window: further steps are round-off.
  auto stalled = [&]() {
    const std::size_t last = history.size() - 1;
    if (last < static_cast<std::size_t>(opt.window)) return false;
    const long double change = std::abs(history[last - opt.window] - energy);
    return change <= kStallRelative * std::max(std::abs(energy), 1.0L);
  };

  int iter = 0;
  while (!converged()) {
    if (iter >= opt.max_iter || stalled()) break;
    ++iter;

    std::vector<RealField> z = precondition(d.projected);
    const double gz = dot(d.projected, z);

    std::vector<RealField> p;
    bool steepest = true;
    if (cg && !p_prev.empty() && gz_prev > 0.0) {
      const double beta = std::max(0.0, (gz - dot(d.projected, z_prev)) / gz_prev);
      if (beta > 0.0) {
        p = p_prev;
        for (std::size_t i = 0; i < n; ++i) {
          make_tangent(p[i], u[i], masses[i]);
          p[i] *= beta;
          p[i] -= z[i];
        }
        steepest = false;
      }
    }
    double slope = 0.0;
    if (!steepest) {
      slope = dot(d.projected, p);
      if (!(slope < 0.0)) steepest = true;
    }
    if (steepest) {
      p = z;
      for (auto& f : p) f *= -1.0;
      slope = -gz;
    }
    if (!(slope < 0.0)) break;  // gradient vanished to round-off

    auto trial_state = [&](double t) {
      std::vector<RealField> s;
      s.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        RealField f = u[i];
        f.axpy(t, p[i]);
        s.push_back(project_mass(f, masses[i]));
      }
      return s;
    };

    std::optional<std::vector<RealField>> next;
    Evaluation next_eval;
    long double next_energy = energy;
    double step = tau;
    while (true) {
      auto s = trial_state(step);
      Evaluation ev = evaluate(s);
      const long double e = on_sphere(ev);
      if (std::isfinite(e) && e <= energy + kSufficientDecrease * step * slope) {
        next = std::move(s);
        next_eval = std::move(ev);
        next_energy = e;
        break;
      }
      accepted_run = 0;
      step *= opt.armijo;
      if (step < kMinStep) {
        if (!steepest) {
          // Conjugate direction failed: retry along the preconditioned gradient.
          p = z;
          for (auto& f : p) f *= -1.0;
          slope = -gz;
          steepest = true;
          step = opt.tau0;
          continue;
        }
        break;
      }
    }
    if (!next) {
      if (d.residual < opt.tol_residual) {
        res.converged = true;
        break;
      }
      throw NumericalError("descend: step collapse (tau < 1e-14) at iteration " + std::to_string(iter) +
                           ", residual " + std::to_string(d.residual));
    }

    if (cg) {
      // Quadratic model through E(0), E'(0) and E(step).
      const double curvature = static_cast<double>(next_energy - energy) - slope * step;
      if (curvature > 0.0) {
        const double tq = std::clamp(-slope * step * step / (2.0 * curvature), 0.1 * step, 10.0 * step);
        if (std::abs(tq - step) > 0.05 * step) {
          auto s = trial_state(tq);
          Evaluation ev = evaluate(s);
          const long double e = on_sphere(ev);
          if (std::isfinite(e) && e < next_energy && e <= energy + kSufficientDecrease * tq * slope) {
            next = std::move(s);
            next_eval = std::move(ev);
            next_energy = e;
            step = tq;
          }
        }
      }
      // Start the next search above the accepted step so a single noisy
      // backtrack near convergence cannot pin tau at a tiny value.
      tau = std::min(2.0 * step, kMaxStepGrowth * opt.tau0);
    } else {
      tau = step;
      if (++accepted_run >= kGrowAfter) {
        tau *= kGrowFactor;
        accepted_run = 0;
      }
    }

    u = std::move(*next);
    current = std::move(next_eval);
    d = derivatives(obj, u, masses);
    // Re-centre on the new multipliers; the shift is O(dlambda * ulp).
    energy = on_sphere(current);
    p_prev = std::move(p);
    z_prev = std::move(z);
    gz_prev = gz;

    history.push_back(energy);
    res.trace.push_back({iter, static_cast<double>(energy), d.residual, step});
    res.max_mass_error = std::max(res.max_mass_error, mass_error(u));
  }

  res.converged = res.converged || converged();
  res.iterations = iter;
  res.energy = static_cast<double>(energy);
  res.lambdas = d.lambdas;
  res.residuals = d.residuals;
  res.state = std::move(u);
  return res;
}

}  // namespace nlslab
