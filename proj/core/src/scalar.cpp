#include "cubicalforms/scalar.hpp"

#include <ostream>

namespace cubicalforms {

namespace {

mpq_class make_canonical(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

bool odd_denominator(const mpq_class& q) { return mpz_odd_p(q.get_den().get_mpz_t()) != 0; }

std::string rat_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

Scalar Scalar::rational(const mpz_class& num, const mpz_class& den) {
  Scalar s;
  s.kind_ = ScalarKind::Rational;
  s.re_ = make_canonical(num, den);
  return s;
}

Scalar Scalar::two_local(const mpz_class& num, const mpz_class& den) {
  Scalar s;
  s.kind_ = ScalarKind::TwoLocal;
  s.re_ = make_canonical(num, den);
  s.check_two_local();
  return s;
}

Scalar Scalar::eisenstein(const Scalar& re, const Scalar& zeta_coeff) {
  if (re.kind_ == ScalarKind::Eisenstein || zeta_coeff.kind_ == ScalarKind::Eisenstein)
    throw MathError("eisenstein components must be rational");
  Scalar s;
  s.kind_ = ScalarKind::Eisenstein;
  s.re_ = re.re_;
  s.zeta_ = zeta_coeff.re_;
  return s;
}

Scalar Scalar::zeta() { return eisenstein(Scalar(0), Scalar(1)); }

bool Scalar::is_integer_value() const {
  return zeta_ == 0 && re_.get_den() == 1;
}

void Scalar::check_two_local() const {
  if (!odd_denominator(re_))
    throw NotTwoLocallyInvertible("denominator " + re_.get_den().get_str() + " is even");
}

ScalarKind Scalar::join(ScalarKind a, ScalarKind b) { return a < b ? b : a; }

Scalar Scalar::operator-() const {
  Scalar s(*this);
  s.re_ = -s.re_;
  s.zeta_ = -s.zeta_;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s;
  s.kind_ = join(kind_, o.kind_);
  s.re_ = re_ + o.re_;
  s.zeta_ = zeta_ + o.zeta_;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s;
  s.kind_ = join(kind_, o.kind_);
  s.re_ = re_ - o.re_;
  s.zeta_ = zeta_ - o.zeta_;
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s;
  s.kind_ = join(kind_, o.kind_);
  // (a + b z)(c + d z) with z^2 = -1 - z.
  s.re_ = re_ * o.re_ - zeta_ * o.zeta_;
  s.zeta_ = re_ * o.zeta_ + zeta_ * o.re_ - zeta_ * o.zeta_;
  return s;
}

mpq_class Scalar::eisenstein_norm() const { return re_ * re_ - re_ * zeta_ + zeta_ * zeta_; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Scalar s;
  s.kind_ = kind_;
  switch (kind_) {
    case ScalarKind::Integer:
      if (re_ == 1 || re_ == -1) {
        s.re_ = re_;
      } else {
        s.kind_ = ScalarKind::Rational;
        s.re_ = mpq_class(1) / re_;
      }
      return s;
    case ScalarKind::TwoLocal:
      if (mpz_even_p(re_.get_num().get_mpz_t()))
        throw NotTwoLocallyInvertible("numerator " + re_.get_num().get_str() + " is even");
      s.re_ = mpq_class(1) / re_;
      return s;
    case ScalarKind::Rational:
      s.re_ = mpq_class(1) / re_;
      return s;
    case ScalarKind::Eisenstein: {
      // (a + b z)^-1 = ((a - b) - b z) / (a^2 - a b + b^2)
      mpq_class n = eisenstein_norm();
      s.re_ = (re_ - zeta_) / n;
      s.zeta_ = -zeta_ / n;
      return s;
    }
  }
  throw MathError("unreachable");
}

int Scalar::sign() const {
  if (is_zero()) return 0;
  if (kind_ == ScalarKind::Eisenstein && zeta_ != 0) return 1;
  return sgn(re_);
}

std::string Scalar::to_string() const {
  if (kind_ != ScalarKind::Eisenstein || zeta_ == 0) return rat_str(re_);
  std::string out = "(";
  bool have_re = (re_ != 0);
  if (have_re) out += rat_str(re_);
  if (zeta_ == 1) {
    out += have_re ? "+zeta" : "zeta";
  } else if (zeta_ == -1) {
    out += "-zeta";
  } else {
    std::string z = rat_str(zeta_);
    if (have_re && sgn(zeta_) > 0) out += "+";
    out += z + "*zeta";
  }
  out += ")";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace cubicalforms
