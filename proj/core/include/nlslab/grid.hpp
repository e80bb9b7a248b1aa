#pragma once

#include <array>
#include <cstddef>

namespace nlslab {

/// Uniform cell-centred discretisation of the box [-L1,L1]x[-L2,L2]x[-L3,L3].
///
/// Cell k on axis a has centre x_a(k) = -L_a + (k + 1/2) h_a with
/// h_a = 2 L_a / n_a. Values are stored row-major with
/// index = (i1*n2 + i2)*n3 + i3, so x3 columns are contiguous.
///
/// A planar grid (see `plane`) discretises only the transverse (x1,x2)
/// plane. It has n3 = 1, unit weight along x3, and no x3 differences.
class GridSpec {
 public:
  static constexpr int kMinCells = 4;

  /// 3D box. Throws std::domain_error unless n_a >= 4 and L_a > 0.
  GridSpec(std::array<int, 3> cells, std::array<double, 3> half_widths);

  /// 2D transverse grid.
  static GridSpec plane(std::array<int, 2> cells, std::array<double, 2> half_widths);

  /// Default box used throughout the project: 32x32x128 on [-8,8]^2 x [-16,16].
  static GridSpec standard();

  int n(int axis) const { return cells_[axis]; }
  double half_width(int axis) const { return half_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  const std::array<int, 3>& cells() const { return cells_; }
  const std::array<double, 3>& half_widths() const { return half_; }

  bool planar() const { return planar_; }
  /// Number of axes carrying differences: 2 for planar grids, else 3.
  int active_axes() const { return planar_ ? 2 : 3; }

  std::size_t size() const {
    return static_cast<std::size_t>(cells_[0]) * cells_[1] * cells_[2];
  }
  double cell_volume() const { return spacing_[0] * spacing_[1] * spacing_[2]; }

  double coord(int axis, int k) const { return -half_[axis] + (k + 0.5) * spacing_[axis]; }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * cells_[1] + i2) * cells_[2] + i3;
  }

  /// Transverse restriction: the planar grid sharing (n1,n2,L1,L2).
  GridSpec transverse() const;

  bool operator==(const GridSpec& other) const;
  bool operator!=(const GridSpec& other) const { return !(*this == other); }

 private:
  GridSpec(std::array<int, 3> cells, std::array<double, 3> half_widths, bool planar);

  std::array<int, 3> cells_;
  std::array<double, 3> half_;
  std::array<double, 3> spacing_;
  bool planar_;
};

/// Throws std::invalid_argument if the two grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace nlslab
