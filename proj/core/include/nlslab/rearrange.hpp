#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Places `values` (any order, nonnegative) symmetric-decreasing into `out`:
/// the largest at c = floor(n/2), then c-1, c+1, c-2, c+2, ... Ties keep
/// their input order. Positions beyond values.size() are zero-filled.
void place_symmetric_decreasing(std::vector<double>& values, std::span<double> out);

/// Steiner rearrangement along x3: every (i1,i2) column of |u| is replaced
/// by its symmetric-decreasing arrangement.
template <class T>
RealField steiner_x3(const Field<T>& u);

/// Coupled rearrangement along x3: every output column is the merged multiset
/// of the |u| and |v| columns, placed symmetric-decreasing. Throws
/// std::domain_error("insufficient grid extent along x3") if any column
/// holds more than n3 nonzero entries in total.
template <class T>
RealField coupled_x3(const Field<T>& u, const Field<T>& v);

/// One side-by-side comparison inside a RearrangementReport.
struct InequalityCheck {
  enum class Kind { Equal, LessEqual, Less };

  std::string name;
  Kind kind;
  double lhs;
  double rhs;
  double tolerance;  // absolute slack allowed on the comparison

  /// rhs - lhs for inequalities, -|rhs - lhs| for equalities.
  double margin() const;
  bool holds() const;
};

/// Both sides of every single-field and coupled rearrangement identity or
/// inequality, evaluated for one (u, v) input pair:
///   L^p preservation under u -> u*, per-axis gradient non-increase,
///   the potential-moment identity, product-integral non-decrease, L^p
///   additivity and gradient sub-additivity of u * v (strict where requested).
struct RearrangementReport {
  std::vector<double> p_values;
  std::vector<InequalityCheck> checks;
  double gradient_margin_relative = 0.0;  // 1 - |grad(u*v)|^2 / (|grad u|^2 + |grad v|^2)

  bool all_hold() const;
  const InequalityCheck* find(const std::string& name) const;
};

struct ReportOptions {
  double r1 = 1.5;
  double r2 = 1.5;
  std::vector<double> p_values{1.0, 2.0, 3.0, 4.0};
  double relative_tolerance = 1e-12;
  /// Ask for a strict gradient inequality for the coupled rearrangement.
  bool strict_gradient = false;
};

RearrangementReport rearrangement_report(const RealField& u, const RealField& v,
                                         const ReportOptions& options = {});

/// Coupled product-integral inequality for a quadruple:
///   int |u1|^r1 |u2|^r2 + |v1|^r1 |v2|^r2
///     <= int (|u1|^r1 * |v1|^r1)(|u2|^r2 * |v2|^r2)
/// where * is the coupled rearrangement. Returns {lhs, rhs}.
struct ProductPair {
  double lhs;
  double rhs;
};
ProductPair coupled_product_check(const RealField& u1, const RealField& u2, const RealField& v1,
                                  const RealField& v2, double r1, double r2);

/// Pointwise |u|^r as a real field.
template <class T>
RealField abs_power(const Field<T>& u, double r);

}  // namespace nlslab
