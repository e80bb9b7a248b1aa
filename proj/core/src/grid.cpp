#include "nlslab/grid.hpp"

#include <stdexcept>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

GridSpec::GridSpec(std::array<int, 3> cells, std::array<double, 3> half_widths)
    : GridSpec(cells, half_widths, false) {}

GridSpec::GridSpec(std::array<int, 3> cells, std::array<double, 3> half_widths, bool planar)
    : cells_(cells), half_(half_widths), planar_(planar) {
  const int axes = planar ? 2 : 3;
  for (int a = 0; a < axes; ++a) {
    if (cells_[a] < kMinCells) {
      throw std::domain_error("grid: n" + std::to_string(a + 1) + " must be >= 4");
    }
    if (!(half_[a] > 0.0)) {
      throw std::domain_error("grid: L" + std::to_string(a + 1) + " must be > 0");
    }
    spacing_[a] = 2.0 * half_[a] / cells_[a];
  }
  if (planar) {
    cells_[2] = 1;
    half_[2] = 0.5;
    spacing_[2] = 1.0;
  }
}

GridSpec GridSpec::plane(std::array<int, 2> cells, std::array<double, 2> half_widths) {
  return GridSpec({cells[0], cells[1], 1}, {half_widths[0], half_widths[1], 0.5}, true);
}

GridSpec GridSpec::standard() { return GridSpec({32, 32, 128}, {8.0, 8.0, 16.0}); }

GridSpec GridSpec::transverse() const {
  return plane({cells_[0], cells_[1]}, {half_[0], half_[1]});
}

bool GridSpec::operator==(const GridSpec& other) const {
  return cells_ == other.cells_ && half_ == other.half_ && planar_ == other.planar_;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace nlslab
