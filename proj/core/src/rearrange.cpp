#include "nlslab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace nlslab {

void place_symmetric_decreasing(std::vector<double>& values, std::span<double> out) {
  const int n = static_cast<int>(out.size());
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  std::fill(out.begin(), out.end(), 0.0);
  const int c = n / 2;
  const int count = std::min<int>(n, static_cast<int>(values.size()));
  for (int j = 0; j < count; ++j) {
    // 0 -> c, 1 -> c-1, 2 -> c+1, 3 -> c-2, ...
    const int step = (j + 1) / 2;
    const int pos = (j % 2 == 1) ? c - step : c + step;
    out[pos] = values[j];
  }
}

template <class T>
RealField steiner_x3(const Field<T>& u) {
  const GridSpec& g = u.grid();
  const int n3 = g.n(2);
  RealField out(g);
  std::vector<double> column(n3);
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const std::size_t base = g.index(i1, i2, 0);
      for (int k = 0; k < n3; ++k) column[k] = modulus(u[base + k]);
      place_symmetric_decreasing(column, std::span<double>(out.data() + base, n3));
    }
  }
  return out;
}

template RealField steiner_x3(const Field<double>&);
template RealField steiner_x3(const Field<Complex>&);

template <class T>
RealField coupled_x3(const Field<T>& u, const Field<T>& v) {
  require_same_grid(u.grid(), v.grid(), "coupled_x3");
  const GridSpec& g = u.grid();
  const int n3 = g.n(2);
  RealField out(g);
  std::vector<double> merged;
  merged.reserve(2 * n3);
  for (int i1 = 0; i1 < g.n(0); ++i1) {
    for (int i2 = 0; i2 < g.n(1); ++i2) {
      const std::size_t base = g.index(i1, i2, 0);
      merged.clear();
      for (int k = 0; k < n3; ++k) {
        const double a = modulus(u[base + k]);
        const double b = modulus(v[base + k]);
        if (a != 0.0) merged.push_back(a);
        if (b != 0.0) merged.push_back(b);
      }
      if (static_cast<int>(merged.size()) > n3) {
        throw std::domain_error("insufficient grid extent along x3");
      }
      place_symmetric_decreasing(merged, std::span<double>(out.data() + base, n3));
    }
  }
  return out;
}

template RealField coupled_x3(const Field<double>&, const Field<double>&);
template RealField coupled_x3(const Field<Complex>&, const Field<Complex>&);

template <class T>
RealField abs_power(const Field<T>& u, double r) {
  RealField out(u.grid());
  const PowerFn pw(r);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = pw(modulus(u[i]));
  return out;
}

template RealField abs_power(const Field<double>&, double);
template RealField abs_power(const Field<Complex>&, double);

double InequalityCheck::margin() const {
  switch (kind) {
    case Kind::Equal:
      return -std::abs(rhs - lhs);
    case Kind::LessEqual:
    case Kind::Less:
      return rhs - lhs;
  }
  return 0.0;
}

bool InequalityCheck::holds() const {
  switch (kind) {
    case Kind::Equal:
      return std::abs(rhs - lhs) <= tolerance;
    case Kind::LessEqual:
      return lhs <= rhs + tolerance;
    case Kind::Less:
      return lhs < rhs - tolerance;
  }
  return false;
}

bool RearrangementReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds(); });
}

const InequalityCheck* RearrangementReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string num(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

RearrangementReport rearrangement_report(const RealField& u, const RealField& v,
                                         const ReportOptions& opt) {
  require_same_grid(u.grid(), v.grid(), "rearrangement_report");
  using K = InequalityCheck::Kind;
  const double rel = opt.relative_tolerance;
  auto tol = [rel](double a, double b) { return rel * std::max({std::abs(a), std::abs(b), 1e-300}); };

  const RealField us = steiner_x3(u);
  const RealField vs = steiner_x3(v);
  const RealField uv = coupled_x3(u, v);

  RearrangementReport rep;
  rep.p_values = opt.p_values;
  auto add = [&](std::string name, K kind, double lhs, double rhs) {
    rep.checks.push_back({std::move(name), kind, lhs, rhs, tol(lhs, rhs)});
  };

  for (double p : opt.p_values) {
    add("steiner_lp_u[p=" + num(p) + "]", K::Equal, lp_norm_p(us, p), lp_norm_p(u, p));
    add("steiner_lp_v[p=" + num(p) + "]", K::Equal, lp_norm_p(vs, p), lp_norm_p(v, p));
    add("coupled_lp[p=" + num(p) + "]", K::Equal, lp_norm_p(uv, p), lp_norm_p(u, p) + lp_norm_p(v, p));
  }

  const int axes = u.grid().active_axes();
  double grad_uv = 0.0, grad_sum = 0.0;
  for (int a = 0; a < axes; ++a) {
    const std::string ax = "x" + std::to_string(a + 1);
    const double gu = axis_gradient_energy(u, a);
    const double gv = axis_gradient_energy(v, a);
    add("steiner_grad_u[" + ax + "]", K::LessEqual, axis_gradient_energy(us, a), gu);
    add("steiner_grad_v[" + ax + "]", K::LessEqual, axis_gradient_energy(vs, a), gv);
    const double guv = axis_gradient_energy(uv, a);
    add("coupled_grad[" + ax + "]", K::LessEqual, guv, gu + gv);
    grad_uv += guv;
    grad_sum += gu + gv;
  }
  add("coupled_grad_total", opt.strict_gradient ? K::Less : K::LessEqual, grad_uv, grad_sum);
  rep.gradient_margin_relative = grad_sum > 0.0 ? 1.0 - grad_uv / grad_sum : 0.0;

  add("steiner_potential_u", K::Equal, potential_moment(us), potential_moment(u));
  add("steiner_potential_v", K::Equal, potential_moment(vs), potential_moment(v));
  add("coupled_potential", K::Equal, potential_moment(uv), potential_moment(u) + potential_moment(v));

  const std::string rr = "[r1=" + num(opt.r1) + ",r2=" + num(opt.r2) + "]";
  add("steiner_product" + rr, K::LessEqual, mixed_integral(u, v, opt.r1, opt.r2),
      mixed_integral(us, vs, opt.r1, opt.r2));
  return rep;
}

ProductPair coupled_product_check(const RealField& u1, const RealField& u2, const RealField& v1,
                                  const RealField& v2, double r1, double r2) {
  const double lhs = mixed_integral(u1, u2, r1, r2) + mixed_integral(v1, v2, r1, r2);
  const RealField a = coupled_x3(abs_power(u1, r1), abs_power(v1, r1));
  const RealField b = coupled_x3(abs_power(u2, r2), abs_power(v2, r2));
  return {lhs, mixed_integral(a, b, 1.0, 1.0)};
}

}  // namespace nlslab
