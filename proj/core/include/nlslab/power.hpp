#pragma once

#include <cmath>

namespace nlslab {

/// x -> x^p for x >= 0, with multiply/sqrt fast paths when 2p is an integer
/// in [-16, 16]. Every exponent in the reference parameter sets (3, 1.5,
/// -0.5, 1, 2, 4) hits the fast path; anything else falls back to std::pow.
/// Negative exponents return 0 at x == 0, which is the convention used for
/// the |u|^(r-2) u factors.
class PowerFn {
 public:
  explicit PowerFn(double p) : p_(p) {
    const double twice = 2.0 * p;
    if (std::abs(twice - std::round(twice)) < 1e-15 && std::abs(twice) <= 16.0) {
      const int k = static_cast<int>(std::lround(twice));
      negative_ = k < 0;
      const int m = negative_ ? -k : k;
      whole_ = m / 2;
      half_ = (m % 2) != 0;
      fast_ = true;
    }
  }

  double exponent() const { return p_; }

  double operator()(double x) const { return eval<double>(x); }

  /// Same value carried in long double (used by the unrounded reductions).
  long double extended(double x) const { return eval<long double>(x); }


 private:
  template <class R>
  R eval(double x) const {
    if (!fast_) {
      if (x == 0.0) return p_ > 0.0 ? R(0) : (p_ == 0.0 ? R(1) : R(0));
      return std::pow(static_cast<R>(x), static_cast<R>(p_));
    }
    if (negative_ && x == 0.0) return R(0);
    R r = 1;
    R base = x;
    for (int e = whole_; e > 0; e >>= 1) {
      if (e & 1) r *= base;
      base *= base;
    }
    if (half_) r *= std::sqrt(static_cast<R>(x));
    return negative_ ? R(1) / r : r;
  }

  double p_;
  bool fast_ = false;
  bool negative_ = false;
  bool half_ = false;
  int whole_ = 0;
};

}  // namespace nlslab
