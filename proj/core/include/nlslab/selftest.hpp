#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// The compared quantity and the bound it is held to.
  double value = 0.0;
  double bound = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
  /// Aggregates per check name: worst value, pass only if every instance passed.
  void add(std::string name, bool passed, double value, double bound);
};

nlohmann::json to_json(const SuiteReport& report);

/// Seeded nonnegative random pair for the rearrangement identities. Each
/// field lives on a random x3 window of at most n3/2 cells per column (so the
/// coupled arrangement always fits) with about 30% of that window zeroed.
std::pair<RealField, RealField> random_rearrangement_pair(const GridSpec& grid, std::uint64_t seed, int index);

/// Smooth pair with positive, x3-symmetric-decreasing columns on disjoint
/// windows: the regime where the coupled gradient inequality is strict.
std::pair<RealField, RealField> smooth_bump_pair(const GridSpec& grid, std::uint64_t seed, int index);

/// Splitting defect of the mixed integral
///   |M(u1 + b1(. - s), u2 + b2(. - s)) - M(u1, u2) - M(b1, b2)|
/// for Gaussian (u1, u2) and compactly supported bumps (b1, b2) centred at
/// x3 = 0, one entry per shift s (in cells).
struct BrezisLiebSeries {
  std::vector<int> shifts;
  std::vector<double> defects;
  /// First shift at which the bump support no longer meets |x3| < the
  /// Gaussian's effective support radius.
  int separated_from = 0;
};
BrezisLiebSeries brezis_lieb_series(const GridSpec& grid, double r1, double r2, std::span<const int> shifts);

/// Property suites; each runs at desk scale (seconds).
SuiteReport rearrange_suite(const GridSpec& grid, int samples, std::uint64_t seed);
SuiteReport energy_suite(std::uint64_t seed);
SuiteReport spectral_suite();
SuiteReport variational_suite(std::uint64_t seed);

/// All four suites in order.
std::vector<SuiteReport> selftest(std::uint64_t seed);

}  // namespace nlslab
