#include "nlslab/energy.hpp"

#include <cmath>
#include <sstream>

namespace nlslab {

namespace {

constexpr double kCritical = 10.0 / 3.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> violations(const ModelParams& m) {
  std::vector<std::string> out;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be > 0 (got " + fmt(v) + ")");
  };
  auto power = [&](const char* name, double v) {
    if (!(v > 2.0 && v < kCritical)) out.push_back(std::string(name) + " out of (2,10/3) (got " + fmt(v) + ")");
  };
  auto cross = [&](const char* name, double v) {
    if (!(v > 1.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be > 1 (got " + fmt(v) + ")");
  };
  positive("mu1", m.mu1);
  positive("mu2", m.mu2);
  positive("beta", m.beta);
  power("p1", m.p1);
  power("p2", m.p2);
  cross("r1", m.r1);
  cross("r2", m.r2);
  if (!(m.r1 + m.r2 < kCritical)) out.push_back("r1+r2 must be < 10/3 (got " + fmt(m.r1 + m.r2) + ")");
  positive("a1", m.a1);
  positive("a2", m.a2);
  return out;
}

ModelParams validate(const ModelParams& params) {
  auto v = violations(params);
  if (!v.empty()) throw ValidationError(std::move(v));
  return params;
}

template <class T>
EnergyBreakdown energy_pair(const Pair<T>& s, const ModelParams& m) {
  require_same_grid(s.first.grid(), s.second.grid(), "energy_pair");
  EnergyBreakdown e;
  e.kinetic = kinetic_energy(s.first) + kinetic_energy(s.second);
  e.potential = potential_moment(s.first) + potential_moment(s.second);
  e.self1 = m.mu1 / m.p1 * lp_norm_p(s.first, m.p1);
  e.self2 = m.mu2 / m.p2 * lp_norm_p(s.second, m.p2);
  e.cross = m.beta == 0.0 ? 0.0 : m.beta * mixed_integral(s.first, s.second, m.r1, m.r2);
  e.total = 0.5 * e.kinetic + 0.5 * e.potential - e.self1 - e.self2 - e.cross;
  return e;
}

template EnergyBreakdown energy_pair(const Pair<double>&, const ModelParams&);
template EnergyBreakdown energy_pair(const Pair<Complex>&, const ModelParams&);

long double energy_total_precise(const StatePair& s, const ModelParams& m) {
  require_same_grid(s.first.grid(), s.second.grid(), "energy_pair");
  long double e = 0.5L * (precise::kinetic_energy(s.first) + precise::kinetic_energy(s.second) +
                          precise::potential_moment(s.first) + precise::potential_moment(s.second));
  e -= m.mu1 / m.p1 * precise::lp_norm_p(s.first, m.p1);
  e -= m.mu2 / m.p2 * precise::lp_norm_p(s.second, m.p2);
  if (m.beta != 0.0) e -= m.beta * precise::mixed_integral(s.first, s.second, m.r1, m.r2);
  return e;
}

long double energy_single_precise(const RealField& u, double mu, double p) {
  long double e = 0.5L * (precise::kinetic_energy(u) + precise::potential_moment(u));
  if (mu != 0.0) e -= mu / p * precise::lp_norm_p(u, p);
  return e;
}

double energy_single_unchecked(const RealField& u, double mu, double p) {
  return static_cast<double>(energy_single_precise(u, mu, p));
}

double energy_single(const RealField& u, double mu, double p) {
  std::vector<std::string> bad;
  if (!(mu > 0.0)) bad.push_back("mu must be > 0 (got " + fmt(mu) + ")");
  if (!(p > 2.0 && p < kCritical)) bad.push_back("p out of (2,10/3) (got " + fmt(p) + ")");
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return energy_single_unchecked(u, mu, p);
}

template <class T>
std::pair<RealField, RealField> nonlinear_potentials(const Pair<T>& s, const ModelParams& m) {
  require_same_grid(s.first.grid(), s.second.grid(), "nonlinear_potentials");
  const GridSpec& g = s.grid();
  RealField w1(g), w2(g);
  const PowerFn self1(m.p1 - 2.0), self2(m.p2 - 2.0);
  const PowerFn c1a(m.r1 - 2.0), c1b(m.r2);
  const PowerFn c2a(m.r1), c2b(m.r2 - 2.0);
  const bool coupled = m.beta != 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = modulus(s.first[i]);
    const double b = modulus(s.second[i]);
    double v1 = a > 0.0 ? m.mu1 * self1(a) : 0.0;
    double v2 = b > 0.0 ? m.mu2 * self2(b) : 0.0;
    if (coupled && a > 0.0 && b > 0.0) {
      v1 += m.beta * m.r1 * c1a(a) * c1b(b);
      v2 += m.beta * m.r2 * c2a(a) * c2b(b);
    }
    w1[i] = v1;
    w2[i] = v2;
  }
  return {std::move(w1), std::move(w2)};
}

template std::pair<RealField, RealField> nonlinear_potentials(const Pair<double>&, const ModelParams&);
template std::pair<RealField, RealField> nonlinear_potentials(const Pair<Complex>&, const ModelParams&);

template <class T>
Pair<T> el_gradient(const Pair<T>& s, const ModelParams& m) {
  auto [w1, w2] = nonlinear_potentials(s, m);
  Field<T> g1 = apply_hamiltonian(s.first);
  Field<T> g2 = apply_hamiltonian(s.second);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    g1[i] -= w1[i] * s.first[i];
    g2[i] -= w2[i] * s.second[i];
  }
  return Pair<T>(std::move(g1), std::move(g2));
}

template Pair<double> el_gradient(const Pair<double>&, const ModelParams&);
template Pair<Complex> el_gradient(const Pair<Complex>&, const ModelParams&);

RealField single_gradient(const RealField& u, double mu, double p) {
  RealField g = apply_hamiltonian(u);
  if (mu == 0.0) return g;
  const PowerFn pw(p - 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = std::abs(u[i]);
    if (a > 0.0) g[i] -= mu * pw(a) * u[i];
  }
  return g;
}

Multipliers multipliers(const StatePair& s, const ModelParams& m) {
  const double m1 = mass(s.first);
  const double m2 = mass(s.second);
  if (m1 == 0.0 || m2 == 0.0) throw std::domain_error("multipliers: zero component");
  const StatePair g = el_gradient(s, m);
  return {inner(g.first, s.first) / m1, inner(g.second, s.second) / m2};
}

double gn_ratio(const RealField& u, double p) {
  if (!(p >= 2.0 && p <= 6.0)) throw std::domain_error("gn_ratio: p must lie in [2,6]");
  const double m = mass(u);
  if (m == 0.0) throw std::domain_error("gn_ratio: zero field");
  const double alpha = GNExponent::of(p, u.grid().active_axes()).alpha;
  const double lp = std::pow(lp_norm_p(u, p), 1.0 / p);
  const double grad = std::sqrt(kinetic_energy(u));
  return lp / (std::pow(grad, alpha) * std::pow(std::sqrt(m), 1.0 - alpha));
}

HolderExponents holder_exponents(double r1, double r2) {
  const double q = (r1 + r2) / r1;
  return {q, q / (q - 1.0)};
}

double holder_bound(const RealField& u, const RealField& v, double r1, double r2) {
  const auto [q, qc] = holder_exponents(r1, r2);
  const double nu = std::pow(lp_norm_p(u, r1 * q), 1.0 / (r1 * q));
  const double nv = std::pow(lp_norm_p(v, r2 * qc), 1.0 / (r2 * qc));
  return std::pow(nu, r1) * std::pow(nv, r2);
}

}  // namespace nlslab
