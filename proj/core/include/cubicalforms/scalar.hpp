#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "cubicalforms/errors.hpp"

namespace cubicalforms {

// Coefficient kinds, ordered by promotion: an operation on mixed kinds yields
// the larger one.  TwoLocal is the subring of rationals with odd denominator;
// Eisenstein is Q(zeta) with zeta^2 = -1 - zeta (a primitive cube root of 1).
enum class ScalarKind : unsigned char { Integer = 0, TwoLocal = 1, Rational = 2, Eisenstein = 3 };

// An exact scalar.  Rational parts are kept in lowest terms with positive
// denominator (gmp canonical form); two-local values additionally keep an odd
// denominator; Eisenstein values are a pair (a, b) meaning a + b*zeta.
class Scalar {
 public:
  Scalar() : kind_(ScalarKind::Integer) {}
  Scalar(long n) : kind_(ScalarKind::Integer), re_(n) {}  // NOLINT: implicit by design
  explicit Scalar(const mpz_class& n) : kind_(ScalarKind::Integer), re_(n) {}

  static Scalar integer(const mpz_class& n) { return Scalar(n); }
  static Scalar rational(const mpz_class& num, const mpz_class& den);
  static Scalar two_local(const mpz_class& num, const mpz_class& den);
  static Scalar eisenstein(const Scalar& re, const Scalar& zeta_coeff);
  static Scalar zeta();  // the generator itself

  ScalarKind kind() const { return kind_; }
  bool is_zero() const { return re_ == 0 && zeta_ == 0; }
  bool is_one() const { return re_ == 1 && zeta_ == 0; }
  bool is_integer_value() const;

  // Rational value of a non-Eisenstein scalar, or the zeta-free part.
  const mpq_class& rat() const { return re_; }
  const mpq_class& zeta_part() const { return zeta_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Exact inverse.  Throws DivisionByZero, and NotTwoLocallyInvertible for a
  // two-local value with even numerator.
  Scalar inverse() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  // Norm a^2 - a*b + b^2 of an Eisenstein value (multiplicative).
  mpq_class eisenstein_norm() const;

  // Value equality; the kind tag does not participate.
  bool operator==(const Scalar& o) const { return re_ == o.re_ && zeta_ == o.zeta_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // -1, 0, +1 for rational kinds; Eisenstein values report +1 unless zero.
  int sign() const;

  // Plain text: "7", "-3/5", "(1-2*zeta)".  Parsed back by textio.
  std::string to_string() const;

 private:
  static ScalarKind join(ScalarKind a, ScalarKind b);
  void check_two_local() const;

  ScalarKind kind_;
  mpq_class re_;
  mpq_class zeta_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace cubicalforms
