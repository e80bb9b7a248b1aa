#include "nlslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/sine_transform.hpp"

namespace nlslab {

namespace {

// Exponent bounds only: the linear and decoupled regimes (mu = 0, beta = 0)
// are legitimate evolutions.
void check_dynamics_params(const ModelParams& m) {
  std::vector<std::string> bad;
  for (auto& v : violations(m)) {
    const bool sign_only = v.rfind("mu", 0) == 0 || v.rfind("beta", 0) == 0 || v.rfind("a1", 0) == 0 ||
                           v.rfind("a2", 0) == 0;
    if (!sign_only) bad.push_back(std::move(v));
  }
  if (!(m.mu1 >= 0.0)) bad.emplace_back("mu1 must be >= 0");
  if (!(m.mu2 >= 0.0)) bad.emplace_back("mu2 must be >= 0");
  if (!(m.beta >= 0.0)) bad.emplace_back("beta must be >= 0");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

// Sum conj(a) b h1h2h3.
Complex cinner(const ComplexField& a, const ComplexField& b) {
  long double re = 0.0L, im = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex z = std::conj(a[i]) * b[i];
    re += z.real();
    im += z.imag();
  }
  const double h = a.grid().cell_volume();
  return {static_cast<double>(re * h), static_cast<double>(im * h)};
}

// -Delta_h f.
ComplexField minus_laplacian(const ComplexField& f) {
  ComplexField out = apply_hamiltonian(f);
  const GridSpec& g = f.grid();
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const double v = transverse_potential(g, i1, i2);
      const std::size_t base = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < g.n(2); ++i3) out[base + i3] -= v * f[base + i3];
    }
  }
  return out;
}

ComplexField project_mass_complex(const ComplexField& u, double a) {
  const double m = mass(u);
  if (m == 0.0) throw std::domain_error("project_mass: zero field");
  ComplexField out = u;
  out *= std::sqrt(a / m);
  return out;
}

}  // namespace

void PropagatorConfig::validate() const {
  std::vector<std::string> bad;
  if (!(dt > 0.0)) bad.emplace_back("dt must be > 0");
  if (!(T > 0.0)) bad.emplace_back("T must be > 0");
  if (!(linear_tol > 0.0)) bad.emplace_back("linear_tol must be > 0");
  if (record_every < 1) bad.emplace_back("record_every must be >= 1");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

long PropagatorConfig::steps() const { return std::max(1L, std::lround(T / dt)); }

struct Propagator::Impl {
  struct Substep {
    double h;
    std::vector<Complex> cayley;
  };

  GridSpec grid;
  ModelParams params;
  double linear_tol;
  DirichletLaplacian laplacian;
  std::vector<Substep> substeps;

  Impl(const GridSpec& g, const ModelParams& m, double dt, double tol, Scheme scheme)
      : grid(g), params(m), linear_tol(tol), laplacian(g) {
    std::vector<double> weights{1.0};
    if (scheme == Scheme::Yoshida4) {
      const double w = 1.0 / (2.0 - std::cbrt(2.0));
      weights = {w, 1.0 - 2.0 * w, w};
    }
    const auto& eig = laplacian.eigenvalues();
    for (double wgt : weights) {
      Substep sub{wgt * dt, std::vector<Complex>(eig.size())};
      for (std::size_t k = 0; k < eig.size(); ++k) {
        const Complex half(0.0, 0.5 * sub.h * eig[k]);
        sub.cayley[k] = (1.0 - half) / (1.0 + half);
      }
      substeps.push_back(std::move(sub));
    }
  }

  // phi_i <- exp(-i h (V - W_i)) phi_i; W depends on moduli only, which the
  // rotation leaves unchanged, so this substep is exact.
  void rotate(ComplexPair& s, double h) const {
    auto [w1, w2] = nonlinear_potentials(s, params);
    for (int i1 = 0; i1 < grid.n(0); ++i1) {
      for (int i2 = 0; i2 < grid.n(1); ++i2) {
        const double v = transverse_potential(grid, i1, i2);
        const std::size_t base = grid.index(i1, i2, 0);
        for (int i3 = 0; i3 < grid.n(2); ++i3) {
          const std::size_t i = base + i3;
          s.first[i] *= std::polar(1.0, -h * (v - w1[i]));
          s.second[i] *= std::polar(1.0, -h * (v - w2[i]));
        }
      }
    }
  }

  // (1 + i h/2 A) new = (1 - i h/2 A) old with A = -Delta_h.
  void linear(ComplexField& f, const Substep& sub) const {
    const ComplexField old = f;
    laplacian.apply(f, sub.cayley);
    const double norm = mass(old);
    if (norm == 0.0) return;
    ComplexField sum = f + old;
    ComplexField r = f - old;
    r.axpy(Complex(0.0, 0.5 * sub.h), minus_laplacian(sum));
    const double rel = std::sqrt(mass(r) / norm);
    if (!(rel <= linear_tol)) {
      throw NumericalError("evolve: linear solve residual " + std::to_string(rel) + " exceeds linear_tol");
    }
  }

  void strang(ComplexPair& s, const Substep& sub) const {
    rotate(s, 0.5 * sub.h);
    linear(s.first, sub);
    linear(s.second, sub);
    rotate(s, 0.5 * sub.h);
  }
};

Propagator::Propagator(const GridSpec& grid, const ModelParams& params, double dt, double linear_tol,
                       Scheme scheme)
    : impl_(std::make_unique<Impl>(grid, params, dt, linear_tol, scheme)) {}
Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

void Propagator::step(ComplexPair& s) const {
  require_same_grid(s.grid(), impl_->grid, "Propagator::step");
  for (const auto& sub : impl_->substeps) impl_->strang(s, sub);
}

Trajectory evolve(const ComplexPair& init, const ModelParams& params, const PropagatorConfig& cfg,
                  const RecordHook& hook) {
  cfg.validate();
  check_dynamics_params(params);
  const Propagator prop(init.grid(), params, cfg.dt, cfg.linear_tol, cfg.scheme);
  ComplexPair s = init;
  Trajectory tr;
  tr.boundary_clean_init = boundary_clean(init.first) && boundary_clean(init.second);
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.mass1.push_back(mass(s.first));
    tr.mass2.push_back(mass(s.second));
    tr.energy.push_back(energy_pair(s, params).total);
    if (hook) hook(t, s);
  };
  record(0.0);
  const long steps = cfg.steps();
  for (long k = 1; k <= steps; ++k) {
    prop.step(s);
    if (!s.first.all_finite() || !s.second.all_finite()) {
      throw NumericalError("evolve: non-finite state at step " + std::to_string(k));
    }
    if (k % cfg.record_every == 0 || k == steps) record(static_cast<double>(k) * cfg.dt);
  }
  tr.steps = steps;
  tr.final_state = std::move(s);
  return tr;
}

ComplexPair time_reverse(ComplexPair s) {
  for (int c = 0; c < 2; ++c) {
    for (auto& z : s[c].values()) z = std::conj(z);
  }
  return s;
}

double h_norm_sq(const ComplexField& f) {
  return static_cast<double>(precise::kinetic_energy(f) + precise::potential_moment(f) + precise::mass(f));
}

OrbitDistance orbit_distance(const ComplexPair& phi, const StatePair& u) {
  require_same_grid(phi.grid(), u.grid(), "orbit_distance");
  const GridSpec& g = u.grid();
  const int n3 = g.n(2);

  // (H + 1) phi_i, so that <v, A_i> is the H inner product <v, phi_i>_H.
  ComplexField a1 = apply_hamiltonian(phi.first) + phi.first;
  ComplexField a2 = apply_hamiltonian(phi.second) + phi.second;

  struct Eval {
    double d2;
    double theta1;
    double theta2;
  };
  auto eval = [&](int s) {
    Eval e{0.0, 0.0, 0.0};
    for (int c = 0; c < 2; ++c) {
      const ComplexField v = to_complex(translate_x3(u[c], s));
      const Complex ip = cinner(v, c == 0 ? a1 : a2);
      const double theta = ip == Complex(0.0, 0.0) ? 0.0 : std::arg(ip);
      ComplexField diff = phi[c];
      diff.axpy(-std::polar(1.0, theta), v);
      e.d2 += h_norm_sq(diff);
      (c == 0 ? e.theta1 : e.theta2) = theta;
    }
    return e;
  };

  // Starting shift from the x3 mass profiles, then a local descent over cells.
  int s = 0;
  if (!g.planar()) {
    const auto pu1 = plane_masses(u.first), pu2 = plane_masses(u.second);
    const auto pf1 = plane_masses(phi.first), pf2 = plane_masses(phi.second);
    double best = -1.0;
    for (int t = -(n3 - 1); t < n3; ++t) {
      double c = 0.0;
      for (int k = std::max(0, t); k < std::min(n3, n3 + t); ++k) {
        c += (pu1[k - t] + pu2[k - t]) * (pf1[k] + pf2[k]);
      }
      if (c > best + 1e-15 * std::abs(best) || (std::abs(c - best) <= 1e-15 * std::abs(best) && std::abs(t) < std::abs(s))) {
        best = c;
        s = t;
      }
    }
  }
  Eval cur = eval(s);
  if (g.planar()) return {std::sqrt(cur.d2), cur.theta1, cur.theta2, 0.0};

  auto valid = [&](int t) { return t > -n3 && t < n3; };
  for (;;) {
    bool moved = false;
    for (int dir : {-1, 1}) {
      if (!valid(s + dir)) continue;
      const Eval e = eval(s + dir);
      if (e.d2 < cur.d2) {
        cur = e;
        s += dir;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  OrbitDistance out{std::sqrt(cur.d2), cur.theta1, cur.theta2, static_cast<double>(s)};
  if (valid(s - 1) && valid(s + 1)) {
    const double dm = eval(s - 1).d2, dp = eval(s + 1).d2;
    const double curv = dp + dm - 2.0 * cur.d2;
    if (curv > 0.0) {
      const double b = 0.5 * (dp - dm);
      const double x = std::clamp(-b / curv, -1.0, 1.0);
      const double vertex = cur.d2 + b * x + 0.5 * curv * x * x;
      out.distance = std::sqrt(std::max(0.0, std::min(cur.d2, vertex)));
      out.shift = s + x;
    }
  }
  return out;
}

ComplexPair seeded_perturbation(const GridSpec& grid, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw ValidationError({"delta must be >= 0"});
  ComplexPair out{ComplexField(grid), ComplexField(grid)};
  if (delta == 0.0) return out;
  for (int c = 0; c < 2; ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), 0x5eedu};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Complex k[7];
    for (auto& z : k) z = Complex(coef(rng), coef(rng));
    ComplexField eta(grid);
    for (int i1 = 0; i1 < grid.n(0); ++i1) {
      const double x1 = grid.coord(0, i1);
      for (int i2 = 0; i2 < grid.n(1); ++i2) {
        const double x2 = grid.coord(1, i2);
        for (int i3 = 0; i3 < grid.n(2); ++i3) {
          const double x3 = grid.planar() ? 0.0 : grid.coord(2, i3);
          const double env = std::exp(-0.5 * (x1 * x1 + x2 * x2) - 0.125 * x3 * x3);
          const Complex poly = k[0] + k[1] * x1 + k[2] * x2 + k[3] * x3 + k[4] * (x1 * x2) +
                               k[5] * (0.25 * x3 * x3 - 1.0) + k[6] * (x1 * x3);
          eta(i1, i2, i3) = env * poly;
        }
      }
    }
    eta *= delta / std::sqrt(h_norm_sq(eta));
    out[c] = std::move(eta);
  }
  return out;
}

Trajectory stability_experiment(const MinimizationResult& minimizer, double delta, const ModelParams& params,
                                const PropagatorConfig& cfg, std::uint64_t seed) {
  if (!minimizer.converged) throw ValidationError({"stability_experiment: minimiser not converged"});
  if (!(delta >= 0.0)) throw ValidationError({"delta must be >= 0"});
  const StatePair& u = minimizer.state;
  const ComplexPair eta = seeded_perturbation(u.grid(), delta, seed);
  ComplexPair init{to_complex(u.first) + eta.first, to_complex(u.second) + eta.second};
  if (delta > 0.0) {
    init.first = project_mass_complex(init.first, mass(u.first));
    init.second = project_mass_complex(init.second, mass(u.second));
  }
  std::vector<double> distance;
  Trajectory tr = evolve(init, params, cfg, [&](double, const ComplexPair& s) {
    distance.push_back(orbit_distance(s, u).distance);
  });
  tr.distance = std::move(distance);
  return tr;
}

}  // namespace nlslab
