#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubicalforms/poly.hpp"

namespace cubicalforms {

// Power series truncated by total degree in a designated subset of ring
// variables (the series variables).  A value of order N knows every term of
// series-degree < N; everything from degree N on is unknown, never merely
// zero.  Coefficients live in the remaining (parameter) variables and are
// never truncated.
//
// Internally the terms are grouped into homogeneous slices by series-degree,
// each slice a Poly over the full ring.
class TSeries {
 public:
  TSeries() = default;

  static TSeries zero(RingPtr ring, const std::vector<std::string>& series_vars, int order);
  static TSeries constant(RingPtr ring, const std::vector<std::string>& series_vars, int order,
                          const Scalar& c);
  static TSeries variable(RingPtr ring, const std::vector<std::string>& series_vars, int order,
                          const std::string& name);
  // Truncates the polynomial into a series (terms of series-degree >= order
  // are dropped as unknown).
  static TSeries from_poly(const Poly& p, const std::vector<std::string>& series_vars, int order);

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::string>& series_vars() const { return series_names_; }
  int order() const { return order_; }

  bool is_zero() const { return slices_.empty(); }
  // Lowest series-degree carrying a term; equals order() for the zero series.
  int valuation() const;

  // The homogeneous slice of exact series-degree d (zero Poly when absent).
  Poly homog(int d) const;  // throws BeyondTruncation for d >= order
  const std::map<int, Poly>& slices() const { return slices_; }

  // Coefficient of the series monomial given by exponents over series_vars()
  // (in that order), as a polynomial in the parameter variables.
  Poly coefficient(const std::vector<unsigned>& series_exps) const;

  int series_degree_of_key(ExpKey key) const;

  TSeries operator-() const;
  TSeries operator+(const TSeries& o) const;
  TSeries operator-(const TSeries& o) const;
  TSeries operator*(const TSeries& o) const;
  TSeries& operator+=(const TSeries& o) { return *this = *this + o; }
  TSeries& operator-=(const TSeries& o) { return *this = *this - o; }
  TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

  TSeries mul(const TSeries& o, const Reduction* red) const;
  TSeries scaled(const Scalar& c) const;
  // Multiply by a polynomial in parameter variables only.
  TSeries mul_poly(const Poly& p) const;
  TSeries pow(unsigned n, const Reduction* red = nullptr) const;

  TSeries truncated(int new_order) const;

  // Reciprocal of a series whose degree-0 slice is an invertible constant.
  TSeries invert_unit() const;  // throws NonUnitConstantTerm

  // Composite series: every series variable must be assigned a replacement of
  // positive valuation; the replacements share one ring and series-variable
  // set, which become those of the result.  Parameter variables are carried
  // over by name.
  TSeries substitute(const std::map<std::string, TSeries>& assign) const;

  // Carries every variable to the target ring by name (or through the given
  // renames), with a new designated series-variable set.
  TSeries renamed(RingPtr target, const std::vector<std::string>& target_series_vars,
                  const std::map<std::string, std::string>& renames = {}) const;

  TSeries reduced(const Reduction& red) const;

  bool operator==(const TSeries& o) const;
  bool operator!=(const TSeries& o) const { return !(*this == o); }

  // Flattened canonical text, series-degree ascending, unit scalars elided,
  // with the trailing truncation marker: "x0 + x1 + a1*x0*x1 + O(4)".
  std::string to_string() const;

 private:
  void check_compatible(const TSeries& o) const;
  static TSeries like(const TSeries& model, int order);

  RingPtr ring_;
  std::vector<std::string> series_names_;
  std::vector<std::size_t> series_idx_;
  int order_ = 0;
  std::map<int, Poly> slices_;
};

std::ostream& operator<<(std::ostream& os, const TSeries& s);

// Degree-by-degree exact division of series sharing their lowest form's
// divisibility (valuation(num) >= valuation(den)); raises NotDivisible when
// the quotient is not a series.  Result order = min(order(num), order(den))
// minus valuation(den).
TSeries graded_divide(const TSeries& num, const TSeries& den, const Reduction* red = nullptr);

// For univariate f, the series L(varA, varB) with L*(varB - varA) =
// f(varB) - f(varA); target ring must contain both variables and f's
// parameter variables.
TSeries divided_difference(const TSeries& f, RingPtr target, const std::string& var_a,
                           const std::string& var_b);

// Thread cap for internally parallel kernels: the CUBICALFORMS_THREADS
// environment variable when set, otherwise the hardware count.
unsigned thread_cap();

}  // namespace cubicalforms
