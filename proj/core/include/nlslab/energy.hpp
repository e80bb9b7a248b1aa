#pragma once

#include <string>
#include <vector>

#include "nlslab/errors.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// Couplings, exponents and target masses of the two-component model.
///
/// Admissible region: mu1, mu2, beta > 0; 2 < p1, p2 < 10/3; r1, r2 > 1;
/// r1 + r2 < 10/3; a1, a2 > 0. All bounds are strict.
struct ModelParams {
  double mu1 = 1.0;
  double mu2 = 1.0;
  double beta = 1.0;
  double p1 = 3.0;
  double p2 = 3.0;
  double r1 = 1.5;
  double r2 = 1.5;
  double a1 = 1.0;
  double a2 = 1.0;

  /// mu = beta = 1, p = 3, r = 1.5, a = (1, 1).
  static ModelParams reference() { return {}; }

  bool operator==(const ModelParams&) const = default;
};

/// Every violated bound, named like "p1 out of (2,10/3)". Empty if admissible.
std::vector<std::string> violations(const ModelParams& params);

/// Returns params unchanged if admissible, else throws ValidationError
/// listing every violated bound.
ModelParams validate(const ModelParams& params);

/// Components of J. `kinetic` and `potential` are the full integrals of
/// |grad u1|^2 + |grad u2|^2 and (x1^2 + x2^2)(|u1|^2 + |u2|^2);
/// self_i = (mu_i / p_i) ||u_i||_{p_i}^{p_i}; cross = beta int |u1|^r1 |u2|^r2.
struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double self1 = 0.0;
  double self2 = 0.0;
  double cross = 0.0;
  double total = 0.0;
};

struct Multipliers {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Gagliardo-Nirenberg interpolation exponent alpha = N (p - 2) / (2 p).
struct GNExponent {
  double p;
  double alpha;

  static GNExponent of(double p, int dimension = 3) {
    return {p, dimension * (p - 2.0) / (2.0 * p)};
  }
};

/// J(u1, u2) on the grid. Throws std::invalid_argument on grid mismatch.
template <class T>
EnergyBreakdown energy_pair(const Pair<T>& s, const ModelParams& params);

/// energy_pair(...).total without intermediate rounding to double.
long double energy_total_precise(const StatePair& s, const ModelParams& params);

/// I_{mu,p}(u) = (1/2)||u||_Hdot^2 - (mu/p)||u||_p^p. Requires mu > 0 and
/// 2 < p < 10/3 (throws ValidationError otherwise).
double energy_single(const RealField& u, double mu, double p);

/// Same functional without the parameter check; mu = 0 gives the quadratic
/// form used by the ground-state solver.
double energy_single_unchecked(const RealField& u, double mu, double p);
long double energy_single_precise(const RealField& u, double mu, double p);

/// Pointwise real potentials W_i with the nonlinear terms of the
/// Euler-Lagrange system written as W_i u_i:
///   W1 = mu1 |u1|^(p1-2) + beta r1 |u1|^(r1-2) |u2|^r2,
///   W2 = mu2 |u2|^(p2-2) + beta r2 |u1|^r1 |u2|^(r2-2).
/// Where a component vanishes the corresponding term is 0.
template <class T>
std::pair<RealField, RealField> nonlinear_potentials(const Pair<T>& s, const ModelParams& params);

/// L2 gradient of the discrete J:
///   G_i = (-Delta_h + x1^2 + x2^2) u_i - W_i u_i.
template <class T>
Pair<T> el_gradient(const Pair<T>& s, const ModelParams& params);

/// Gradient of I_{mu,p}: (-Delta_h + V) u - mu |u|^(p-2) u.
RealField single_gradient(const RealField& u, double mu, double p);

/// lambda_i = <G_i, u_i> / mass(u_i). Throws std::domain_error if a
/// component is zero.
Multipliers multipliers(const StatePair& s, const ModelParams& params);

/// ||u||_p / (||grad u||_2^alpha ||u||_2^(1-alpha)) with the dimension taken
/// from the grid. Requires 2 <= p <= 6 and u != 0.
double gn_ratio(const RealField& u, double p);

/// q = (r1 + r2) / r1 and its conjugate, so that r1 q = r2 q' = r1 + r2.
struct HolderExponents {
  double q;
  double q_conj;
};
HolderExponents holder_exponents(double r1, double r2);

/// ||u||_{r1 q}^{r1} ||v||_{r2 q'}^{r2}: the Holder bound on mixed_integral.
double holder_bound(const RealField& u, const RealField& v, double r1, double r2);

}  // namespace nlslab
