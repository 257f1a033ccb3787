#pragma once

#include "cubicalforms/series.hpp"

namespace cubicalforms {

// A power series in one formal variable x and the modular parameter q,
// truncated independently in each: coefficients are stored on the dense grid
// 0 <= x-degree < x_order, 0 <= q-degree < q_order.  The field tag records
// whether coefficients live in Q or in Q(zeta).
class QXSeries {
 public:
  QXSeries() : field_(ScalarKind::Rational), x_order_(0), q_order_(0) {}
  QXSeries(ScalarKind field, int x_order, int q_order);

  static QXSeries constant(ScalarKind field, int x_order, int q_order, const Scalar& c);

  ScalarKind field() const { return field_; }
  int x_order() const { return x_order_; }
  int q_order() const { return q_order_; }
  bool is_zero() const;

  const Scalar& at(int x_deg, int q_deg) const;
  void set(int x_deg, int q_deg, const Scalar& c);

  QXSeries operator+(const QXSeries& o) const;
  QXSeries operator-(const QXSeries& o) const;
  QXSeries operator*(const QXSeries& o) const;
  QXSeries& operator+=(const QXSeries& o) { return *this = *this + o; }
  QXSeries& operator*=(const QXSeries& o) { return *this = *this * o; }
  QXSeries scaled(const Scalar& c) const;

  // Reciprocal; the (x^0, q^0) coefficient must be invertible.
  // Throws NonUnitConstantTerm otherwise.
  QXSeries inverted() const;

  // x -> -x.
  QXSeries negated_x() const;

  // The x^0 row as a series constant in x (keeps only q-dependence).
  QXSeries x_constant_part() const;

  // Retag the coefficient field (promotion only).
  QXSeries with_field(ScalarKind f) const;

  // Render over the two-variable ring (q, <xname>) with x as the series
  // variable, for canonical text/JSON via the usual series printers.
  TSeries to_tseries(const std::string& xname) const;

  bool operator==(const QXSeries& o) const;
  bool operator!=(const QXSeries& o) const { return !(*this == o); }

 private:
  ScalarKind field_;
  int x_order_, q_order_;
  std::vector<Scalar> grid_;  // index x_deg * q_order_ + q_deg
};

// Exact Bernoulli number B_n from the defining recurrence (B_1 = -1/2).
Scalar bernoulli(int n);

// Divisor power sum sigma_e(n) = sum_{d | n} d^e.
mpz_class divisor_power_sum(int e, int n);

// G_{2k} = -B_{2k}/(4k) + sum_{n>=1} sigma_{2k-1}(n) q^n, an x-constant grid.
QXSeries eisenstein_G(int two_k, int q_order);

enum class PhiShift { None, MinusOmega };

// Theta product (e^{x/2}-e^{-x/2}) prod_{n<=q_order} (1-q^n e^x)(1-q^n e^-x)
// / (1-q^n)^2.  With the MinusOmega shift the argument becomes x - omega,
// omega = 2*pi*i/3, and the series lives over Q(zeta).
QXSeries phi_product(int x_order, int q_order, PhiShift shift = PhiShift::None);

// Exponential form x * exp(-sum_{2k < x_order} 2/(2k)! G_{2k} x^{2k});
// equal to phi_product on every common window.
QXSeries phi_exp(int x_order, int q_order);

// psi(z) = Phi(tau, -omega) / Phi(tau, z - omega), with psi(0) = 1.
QXSeries psi_series(int x_order, int q_order);

// x(z) = Phi(tau, z) * Phi(tau, -omega) / Phi(tau, z - omega) = z + O(z^2).
QXSeries level3_genus_x(int x_order, int q_order);

// prod_{i=1}^{roots} 1/psi(x_i) over the ring (q, x1..xm), q truncated at
// q_order; the empty product is 1.
TSeries character_product(int roots, int x_order, int q_order);

}  // namespace cubicalforms
