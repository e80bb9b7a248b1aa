#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/power.hpp"

namespace nlslab {

using Complex = std::complex<double>;

inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return std::norm(z); }
inline double modulus(double x) { return std::abs(x); }
inline double modulus(const Complex& z) { return std::abs(z); }
inline long double abs2_extended(double x) { return static_cast<long double>(x) * x; }
inline long double abs2_extended(const Complex& z) {
  return static_cast<long double>(z.real()) * z.real() + static_cast<long double>(z.imag()) * z.imag();
}

/// A real or complex function sampled at the cell centres of a grid.
template <class T>
class Field {
 public:
  using value_type = T;

  explicit Field(GridSpec grid) : grid_(std::move(grid)), values_(grid_.size(), T{}) {}

  Field(GridSpec grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("field: value count does not match grid");
    }
  }

  /// Samples f(x1, x2, x3) at every cell centre.
  template <class F>
  static Field sample(const GridSpec& grid, F&& f) {
    Field out(grid);
    for (int i1 = 0; i1 < grid.n(0); ++i1) {
      const double x1 = grid.coord(0, i1);
      for (int i2 = 0; i2 < grid.n(1); ++i2) {
        const double x2 = grid.coord(1, i2);
        for (int i3 = 0; i3 < grid.n(2); ++i3) {
          const double x3 = grid.planar() ? 0.0 : grid.coord(2, i3);
          out.values_[grid.index(i1, i2, i3)] = static_cast<T>(f(x1, x2, x3));
        }
      }
    }
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }
  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }

  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator()(int i1, int i2, int i3) { return values_[grid_.index(i1, i2, i3)]; }
  const T& operator()(int i1, int i2, int i3) const { return values_[grid_.index(i1, i2, i3)]; }

  Field& operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  Field& operator+=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field +=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field -=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  /// this += s * o (s real, or complex for complex fields)
  template <class S>
  Field& axpy(S s, const Field& o) {
    require_same_grid(grid_, o.grid_, "field axpy");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
    return *this;
  }

  bool all_finite() const {
    for (const auto& v : values_) {
      if (!std::isfinite(abs2(v))) return false;
    }
    return true;
  }

 private:
  GridSpec grid_;
  std::vector<T> values_;
};

using RealField = Field<double>;
using ComplexField = Field<Complex>;

template <class T>
Field<T> operator*(double s, Field<T> u) {
  u *= s;
  return u;
}
template <class T>
Field<T> operator+(Field<T> a, const Field<T>& b) {
  a += b;
  return a;
}
template <class T>
Field<T> operator-(Field<T> a, const Field<T>& b) {
  a -= b;
  return a;
}

/// Two components on one grid.
template <class T>
struct Pair {
  Field<T> first;
  Field<T> second;

  Pair(Field<T> a, Field<T> b) : first(std::move(a)), second(std::move(b)) {
    require_same_grid(first.grid(), second.grid(), "pair");
  }
  const GridSpec& grid() const { return first.grid(); }
  Field<T>& operator[](int i) { return i == 0 ? first : second; }
  const Field<T>& operator[](int i) const { return i == 0 ? first : second; }
};

using StatePair = Pair<double>;
using ComplexPair = Pair<Complex>;

ComplexField to_complex(const RealField& u);
RealField modulus_field(const ComplexField& u);

/// Transverse potential x1^2 + x2^2 at column (i1, i2).
inline double transverse_potential(const GridSpec& g, int i1, int i2) {
  const double x1 = g.coord(0, i1);
  const double x2 = g.coord(1, i2);
  return x1 * x1 + x2 * x2;
}

// ---------------------------------------------------------------------------
// Quadrature. Midpoint rule on cell centres; reductions accumulate in long
// double so exact discrete identities hold to round-off.

namespace precise {

// Unrounded long-double versions of the reductions below. Line searches
// compare these so that energy decreases near round-off stay resolvable.

template <class T>
long double mass(const Field<T>& u) {
  long double s = 0.0L;
  for (const auto& v : u.values()) s += abs2_extended(v);
  return s * u.grid().cell_volume();
}

template <class T>
long double lp_norm_p(const Field<T>& u, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm_p: p must be >= 1");
  const PowerFn pw(p);
  long double s = 0.0L;
  for (const auto& v : u.values()) s += pw.extended(modulus(v));
  return s * u.grid().cell_volume();
}

template <class T>
long double axis_gradient_energy(const Field<T>& u, int axis) {
  const GridSpec& g = u.grid();
  if (axis >= g.active_axes()) return 0.0L;
  const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
  const std::size_t stride = axis == 0 ? static_cast<std::size_t>(n2) * n3
                             : axis == 1 ? static_cast<std::size_t>(n3)
                                         : 1;
  const int len = g.n(axis);
  const auto v = u.values();
  long double s = 0.0L;
  for (int i1 = 0; i1 < (axis == 0 ? 1 : n1); ++i1) {
    for (int i2 = 0; i2 < (axis == 1 ? 1 : n2); ++i2) {
      for (int i3 = 0; i3 < (axis == 2 ? 1 : n3); ++i3) {
        const std::size_t base = g.index(i1, i2, i3);
        T prev{};
        for (int k = 0; k < len; ++k) {
          const T cur = v[base + k * stride];
          s += abs2_extended(cur - prev);
          prev = cur;
        }
        s += abs2_extended(prev);
      }
    }
  }
  const long double h = g.spacing(axis);
  return s * g.cell_volume() / (h * h);
}

template <class T>
long double kinetic_energy(const Field<T>& u) {
  long double s = 0.0L;
  for (int a = 0; a < u.grid().active_axes(); ++a) s += precise::axis_gradient_energy(u, a);
  return s;
}

template <class T>
long double potential_moment(const Field<T>& u) {
  const GridSpec& g = u.grid();
  const int n3 = g.n(2);
  long double s = 0.0L;
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const double vx = transverse_potential(g, i1, i2);
      long double col = 0.0L;
      const std::size_t base = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < n3; ++i3) col += abs2_extended(u[base + i3]);
      s += vx * col;
    }
  }
  return s * g.cell_volume();
}

template <class T>
long double mixed_integral(const Field<T>& u, const Field<T>& v, double r1, double r2) {
  require_same_grid(u.grid(), v.grid(), "mixed_integral");
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::domain_error("mixed_integral: exponents must be > 0");
  const PowerFn p1(r1), p2(r2);
  long double s = 0.0L;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = modulus(u[i]);
    if (a == 0.0) continue;
    const double b = modulus(v[i]);
    if (b == 0.0) continue;
    s += p1.extended(a) * p2.extended(b);
  }
  return s * u.grid().cell_volume();
}

}  // namespace precise

template <class T>
double mass(const Field<T>& u) {
  return static_cast<double>(precise::mass(u));
}

/// Sum |u|^p h1h2h3. Throws std::domain_error for p < 1.
template <class T>
double lp_norm_p(const Field<T>& u, double p) {
  return static_cast<double>(precise::lp_norm_p(u, p));
}

/// Real L2 inner product Re sum conj(u) v h1h2h3.
template <class T>
double inner(const Field<T>& u, const Field<T>& v) {
  require_same_grid(u.grid(), v.grid(), "inner");
  long double s = 0.0L;
  const auto a = u.values();
  const auto b = v.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_same_v<T, double>) {
      s += a[i] * b[i];
    } else {
      s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
  }
  return static_cast<double>(s * u.grid().cell_volume());
}

/// Forward-difference energy sum |D_a u|^2 h1h2h3 along one axis, with zero
/// Dirichlet ghost cells on both ends.
template <class T>
double axis_gradient_energy(const Field<T>& u, int axis) {
  return static_cast<double>(precise::axis_gradient_energy(u, axis));
}

/// sum over axes of axis_gradient_energy: the discrete integral of |grad u|^2.
template <class T>
double kinetic_energy(const Field<T>& u) {
  return static_cast<double>(precise::kinetic_energy(u));
}

/// Discrete integral of (x1^2 + x2^2)|u|^2.
template <class T>
double potential_moment(const Field<T>& u) {
  return static_cast<double>(precise::potential_moment(u));
}

/// ||u||_Hdot^2 = int |grad u|^2 + (x1^2 + x2^2)|u|^2.
template <class T>
double h_seminorm_sq(const Field<T>& u) {
  return static_cast<double>(precise::kinetic_energy(u) + precise::potential_moment(u));
}

/// int |u|^r1 |v|^r2.
template <class T>
double mixed_integral(const Field<T>& u, const Field<T>& v, double r1, double r2) {
  return static_cast<double>(precise::mixed_integral(u, v, r1, r2));
}

/// (-Delta_h + x1^2 + x2^2) u with the 7-point (5-point when planar) stencil
/// and zero ghost cells. This is the exact gradient of h_seminorm_sq / 2.
template <class T>
Field<T> apply_hamiltonian(const Field<T>& u) {
  const GridSpec& g = u.grid();
  const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
  const double c1 = 1.0 / (g.spacing(0) * g.spacing(0));
  const double c2 = 1.0 / (g.spacing(1) * g.spacing(1));
  const double c3 = g.planar() ? 0.0 : 1.0 / (g.spacing(2) * g.spacing(2));
  const double diag_kin = 2.0 * (c1 + c2 + c3);
  const std::size_t s1 = static_cast<std::size_t>(n2) * n3;
  const std::size_t s2 = n3;
  Field<T> out(g);
  const T* in = u.data();
  T* o = out.data();
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const double vx = transverse_potential(g, i1, i2);
      const std::size_t base = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < n3; ++i3) {
        const std::size_t i = base + i3;
        T acc = (diag_kin + vx) * in[i];
        if (i1 > 0) acc -= c1 * in[i - s1];
        if (i1 + 1 < n1) acc -= c1 * in[i + s1];
        if (i2 > 0) acc -= c2 * in[i - s2];
        if (i2 + 1 < n2) acc -= c2 * in[i + s2];
        if (c3 != 0.0) {
          if (i3 > 0) acc -= c3 * in[i - 1];
          if (i3 + 1 < n3) acc -= c3 * in[i + 1];
        }
        o[i] = acc;
      }
    }
  }
  return out;
}

/// Rayleigh quotient <(-Delta_h + V) u, u> / <u, u>.
template <class T>
double rayleigh_quotient(const Field<T>& u) {
  return h_seminorm_sq(u) / mass(u);
}

// ---------------------------------------------------------------------------
// Boundary diagnostics.

/// Mass carried by the outermost cell layer of every active axis.
template <class T>
double boundary_layer_mass(const Field<T>& u) {
  const GridSpec& g = u.grid();
  const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
  long double s = 0.0L;
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const bool edge12 = i1 == 0 || i1 == n1 - 1 || i2 == 0 || i2 == n2 - 1;
      for (int i3 = 0; i3 < n3; ++i3) {
        const bool edge3 = !g.planar() && (i3 == 0 || i3 == n3 - 1);
        if (edge12 || edge3) s += abs2(u(i1, i2, i3));
      }
    }
  }
  return static_cast<double>(s * g.cell_volume());
}

inline constexpr double kBoundaryCleanFraction = 1e-10;

/// Outer-layer mass below 1e-10 of the total mass.
template <class T>
bool boundary_clean(const Field<T>& u) {
  return boundary_layer_mass(u) < kBoundaryCleanFraction * mass(u) || mass(u) == 0.0;
}

// ---------------------------------------------------------------------------
// Translations along x3.

/// Shifts values by k cells along x3 (positive k moves mass towards +x3),
/// zero-filling vacated cells. Throws std::domain_error if |k| >= n3.
template <class T>
Field<T> translate_x3(const Field<T>& u, int k) {
  const GridSpec& g = u.grid();
  const int n3 = g.n(2);
  if (k >= n3 || -k >= n3) throw std::domain_error("translate_x3: |k| must be < n3");
  Field<T> out(g);
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const std::size_t base = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < n3; ++i3) {
        const int src = i3 - k;
        if (src >= 0 && src < n3) out[base + i3] = u[base + src];
      }
    }
  }
  return out;
}

/// Mass in each x3 slab of `width` cells; slabs partition the grid, the last
/// one possibly narrower.
template <class T>
std::vector<double> strip_masses(const Field<T>& u, int width) {
  const GridSpec& g = u.grid();
  if (width < 1) throw std::domain_error("strip_masses: width must be >= 1");
  const int n3 = g.n(2);
  const int count = (n3 + width - 1) / width;
  std::vector<long double> acc(count, 0.0L);
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const std::size_t base = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < n3; ++i3) acc[i3 / width] += abs2(u[base + i3]);
    }
  }
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = static_cast<double>(acc[k] * g.cell_volume());
  return out;
}

/// Number of cells spanning one length unit along x3 (at least one).
int unit_strip_cells(const GridSpec& g);

/// Mass of |u|^2 restricted to each x3 plane (length n3).
template <class T>
std::vector<double> plane_masses(const Field<T>& u) {
  const GridSpec& g = u.grid();
  std::vector<long double> acc(g.n(2), 0.0L);
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const std::size_t base = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < g.n(2); ++i3) acc[i3] += abs2(u[base + i3]);
    }
  }
  std::vector<double> out(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<double>(acc[k] * g.cell_volume());
  return out;
}

/// Cell shift that moves the unit-length x3 strip of maximal mass to the box
/// centre. Ties within 1e-12 relative go to the candidate nearest the centre.
int recenter_shift(std::span<const double> planes, int strip_cells);

template <class T>
struct Recentered {
  Field<T> field;
  int shift;
};

/// Translates u so its heaviest unit strip sits at the centre of the x3 axis.
/// Returns the translated field and the applied cell shift. Throws
/// std::domain_error for a zero field.
template <class T>
Recentered<T> recenter_x3(const Field<T>& u) {
  if (mass(u) == 0.0) throw std::domain_error("recenter_x3: zero field");
  const auto planes = plane_masses(u);
  const int shift = recenter_shift(planes, unit_strip_cells(u.grid()));
  return {translate_x3(u, shift), shift};
}

}  // namespace nlslab
