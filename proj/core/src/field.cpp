#include "nlslab/field.hpp"

#include <algorithm>
#include <cmath>

namespace nlslab {

ComplexField to_complex(const RealField& u) {
  ComplexField out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = Complex(u[i], 0.0);
  return out;
}

RealField modulus_field(const ComplexField& u) {
  RealField out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::abs(u[i]);
  return out;
}

int unit_strip_cells(const GridSpec& g) {
  if (g.planar()) return 1;
  const int n3 = g.n(2);
  int w = std::max(1, static_cast<int>(std::lround(1.0 / g.spacing(2))));
  w = std::min(w, n3);
  // Same parity as n3 so a window can sit exactly on the centre.
  if ((n3 - w) % 2 != 0) w = (w + 1 <= n3) ? w + 1 : w - 1;
  return std::max(w, 1);
}

int recenter_shift(std::span<const double> planes, int strip_cells) {
  const int n3 = static_cast<int>(planes.size());
  const int w = std::clamp(strip_cells, 1, n3);
  const int target = (n3 - w) / 2;

  long double window = 0.0L;
  for (int k = 0; k < w; ++k) window += planes[k];
  int best = 0;
  long double best_mass = window;
  for (int j = 1; j + w <= n3; ++j) {
    window += planes[j + w - 1] - planes[j - 1];
    const long double tol = 1e-12L * std::max(std::abs(best_mass), std::abs(window));
    if (window > best_mass + tol) {
      best = j;
      best_mass = window;
    } else if (window >= best_mass - tol && std::abs(j - target) < std::abs(best - target)) {
      best = j;
      best_mass = std::max(best_mass, window);
    }
  }
  return target - best;
}

}  // namespace nlslab
