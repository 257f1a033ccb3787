#include "cubicalforms/qchar.hpp"

#include <vector>

namespace cubicalforms {

namespace {
ScalarKind join_kind(ScalarKind a, ScalarKind b) { return a < b ? b : a; }
}  // namespace

QXSeries::QXSeries(ScalarKind field, int x_order, int q_order)
    : field_(field), x_order_(x_order), q_order_(q_order) {
  if (x_order < 0 || q_order < 0) throw MathError("negative truncation order");
  grid_.assign(static_cast<std::size_t>(x_order) * q_order, Scalar());
}

QXSeries QXSeries::constant(ScalarKind field, int x_order, int q_order, const Scalar& c) {
  QXSeries s(field, x_order, q_order);
  if (x_order > 0 && q_order > 0) s.set(0, 0, c);
  return s;
}

bool QXSeries::is_zero() const {
  for (const auto& c : grid_)
    if (!c.is_zero()) return false;
  return true;
}

const Scalar& QXSeries::at(int x_deg, int q_deg) const {
  if (x_deg < 0 || x_deg >= x_order_ || q_deg < 0 || q_deg >= q_order_)
    throw BeyondTruncation("coefficient outside the stored grid");
  return grid_[static_cast<std::size_t>(x_deg) * q_order_ + q_deg];
}

void QXSeries::set(int x_deg, int q_deg, const Scalar& c) {
  if (x_deg < 0 || x_deg >= x_order_ || q_deg < 0 || q_deg >= q_order_)
    throw BeyondTruncation("coefficient outside the stored grid");
  grid_[static_cast<std::size_t>(x_deg) * q_order_ + q_deg] = c;
}

QXSeries QXSeries::operator+(const QXSeries& o) const {
  QXSeries out(join_kind(field_, o.field_), std::min(x_order_, o.x_order_),
               std::min(q_order_, o.q_order_));
  for (int i = 0; i < out.x_order_; ++i)
    for (int j = 0; j < out.q_order_; ++j) out.set(i, j, at(i, j) + o.at(i, j));
  return out;
}

QXSeries QXSeries::operator-(const QXSeries& o) const {
  QXSeries out(join_kind(field_, o.field_), std::min(x_order_, o.x_order_),
               std::min(q_order_, o.q_order_));
  for (int i = 0; i < out.x_order_; ++i)
    for (int j = 0; j < out.q_order_; ++j) out.set(i, j, at(i, j) - o.at(i, j));
  return out;
}

QXSeries QXSeries::operator*(const QXSeries& o) const {
  QXSeries out(join_kind(field_, o.field_), std::min(x_order_, o.x_order_),
               std::min(q_order_, o.q_order_));
  for (int i = 0; i < out.x_order_; ++i)
    for (int j = 0; j < out.q_order_; ++j) {
      Scalar acc;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          const Scalar& u = at(a, b);
          if (u.is_zero()) continue;
          const Scalar& v = o.at(i - a, j - b);
          if (v.is_zero()) continue;
          acc += u * v;
        }
      out.set(i, j, acc);
    }
  return out;
}

QXSeries QXSeries::scaled(const Scalar& c) const {
  QXSeries out = *this;
  for (auto& g : out.grid_) g *= c;
  return out;
}

QXSeries QXSeries::inverted() const {
  if (x_order_ == 0 || q_order_ == 0) throw NonUnitConstantTerm("empty grid has no reciprocal");
  Scalar lead = at(0, 0);
  if (lead.is_zero()) throw NonUnitConstantTerm("constant term is zero");
  Scalar li = lead.inverse();
  QXSeries out(field_, x_order_, q_order_);
  // Graded recursion: b_{ij} = -lead^{-1} * sum_{(a,b) < (i,j)} a_{i-a,j-b} b_{ab}.
  for (int n = 0; n < x_order_ + q_order_ - 1; ++n)
    for (int i = 0; i <= n && i < x_order_; ++i) {
      int j = n - i;
      if (j >= q_order_) continue;
      if (i == 0 && j == 0) {
        out.set(0, 0, li);
        continue;
      }
      Scalar acc;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          if (a == i && b == j) continue;
          const Scalar& u = at(i - a, j - b);
          if (u.is_zero()) continue;
          const Scalar& v = out.at(a, b);
          if (v.is_zero()) continue;
          acc += u * v;
        }
      out.set(i, j, acc.is_zero() ? acc : -(li * acc));
    }
  return out;
}

QXSeries QXSeries::negated_x() const {
  QXSeries out = *this;
  for (int i = 1; i < x_order_; i += 2)
    for (int j = 0; j < q_order_; ++j) out.set(i, j, -at(i, j));
  return out;
}

QXSeries QXSeries::x_constant_part() const {
  QXSeries out(field_, x_order_, q_order_);
  for (int j = 0; j < q_order_; ++j) out.set(0, j, at(0, j));
  return out;
}

QXSeries QXSeries::with_field(ScalarKind f) const {
  QXSeries out = *this;
  out.field_ = f;
  return out;
}

TSeries QXSeries::to_tseries(const std::string& xname) const {
  RingPtr r = PolyRing::create({"q", xname});
  std::vector<std::string> sv = {xname};
  Poly q = Poly::variable(r, "q");
  Poly x = Poly::variable(r, xname);
  TSeries out = TSeries::zero(r, sv, x_order_);
  for (int i = 0; i < x_order_; ++i) {
    Poly slice = Poly::zero(r);
    for (int j = 0; j < q_order_; ++j)
      if (!at(i, j).is_zero()) slice += (x.pow(i) * q.pow(j)).scaled(at(i, j));
    if (!slice.is_zero()) out += TSeries::from_poly(slice, sv, x_order_);
  }
  return out;
}

bool QXSeries::operator==(const QXSeries& o) const {
  return x_order_ == o.x_order_ && q_order_ == o.q_order_ && grid_ == o.grid_;
}

Scalar bernoulli(int n) {
  if (n < 0) throw MathError("Bernoulli index must be nonnegative");
  static std::vector<Scalar> cache{Scalar(1)};
  for (int m = static_cast<int>(cache.size()); m <= n; ++m) {
    // sum_{j=0}^{m} binom(m+1, j) B_j = 0.
    Scalar acc;
    mpz_class binom = 1;  // binom(m+1, 0)
    for (int j = 0; j < m; ++j) {
      acc += Scalar(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    // Here binom = binom(m+1, m) = m+1.
    cache.push_back(acc.is_zero() ? Scalar() : -(acc * Scalar(binom).inverse()));
  }
  return cache[n];
}

mpz_class divisor_power_sum(int e, int n) {
  if (n <= 0) throw MathError("divisor sum needs n >= 1");
  mpz_class total = 0;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_class dp, ep;
    mpz_ui_pow_ui(dp.get_mpz_t(), d, e);
    total += dp;
    int other = n / d;
    if (other != d) {
      mpz_ui_pow_ui(ep.get_mpz_t(), other, e);
      total += ep;
    }
  }
  return total;
}

QXSeries eisenstein_G(int two_k, int q_order) {
  if (two_k < 2 || two_k % 2 != 0) throw MathError("Eisenstein index must be even and positive");
  QXSeries g(ScalarKind::Rational, 1, q_order);
  if (q_order == 0) return g;
  Scalar b = bernoulli(two_k);
  g.set(0, 0, -(b * Scalar(2 * two_k).inverse()));  // -B_{2k}/(4k)
  for (int n = 1; n < q_order; ++n)
    g.set(0, n, Scalar(divisor_power_sum(two_k - 1, n)));
  return g;
}

namespace {

// e^{c x} as an x-column, c rational.
QXSeries exp_column(const Scalar& c, int x_order, int q_order, ScalarKind field) {
  QXSeries e(field, x_order, q_order);
  Scalar term(1);
  for (int i = 0; i < x_order; ++i) {
    e.set(i, 0, term);
    term = term * c * Scalar(i + 1).inverse();
  }
  return e;
}

// 1 - u * q^n * e^{sign x} where u is a unit scalar.
QXSeries geometric_factor(const Scalar& u, int n, int sign, int x_order, int q_order,
                          ScalarKind field) {
  QXSeries f = QXSeries::constant(field, x_order, q_order, Scalar(1));
  if (n >= q_order) return f;
  Scalar term = -u;
  for (int i = 0; i < x_order; ++i) {
    f.set(i, n, f.at(i, n) + term);
    term = term * Scalar(sign) * Scalar(i + 1).inverse();
  }
  return f;
}

}  // namespace

QXSeries phi_product(int x_order, int q_order, PhiShift shift) {
  ScalarKind field = shift == PhiShift::None ? ScalarKind::Rational : ScalarKind::Eisenstein;
  // Scalars of the shift: e^{-omega} = zeta^2, e^{-omega/2} = -zeta,
  // e^{omega/2} = 1 + zeta (all inside Q(zeta)).
  Scalar em_half(1), ep_half(1), em(1), ep(1);
  if (shift == PhiShift::MinusOmega) {
    Scalar z = Scalar::zeta();
    em_half = -z;                 // e^{-omega/2}
    ep_half = Scalar(1) + z;      // e^{+omega/2}
    em = z * z;                   // e^{-omega}
    ep = z;                       // e^{+omega}
  }

  Scalar half = Scalar::rational(1, 2);
  QXSeries acc = exp_column(half, x_order, q_order, field).scaled(em_half) -
                 exp_column(-half, x_order, q_order, field).scaled(ep_half);

  QXSeries den = QXSeries::constant(field, x_order, q_order, Scalar(1));
  for (int n = 1; n <= q_order; ++n) {
    acc *= geometric_factor(em, n, +1, x_order, q_order, field);
    acc *= geometric_factor(ep, n, -1, x_order, q_order, field);
    // (1 - q^n)^2 has x-degree zero only.
    QXSeries one_minus_qn = geometric_factor(Scalar(1), n, 0, 1, q_order, field);
    QXSeries sq = one_minus_qn * one_minus_qn;
    QXSeries full(field, x_order, q_order);
    for (int j = 0; j < q_order; ++j) full.set(0, j, sq.at(0, j));
    den *= full;
  }
  return acc * den.inverted();
}

QXSeries phi_exp(int x_order, int q_order) {
  QXSeries expo(ScalarKind::Rational, x_order, q_order);
  for (int two_k = 2; two_k < x_order; two_k += 2) {
    QXSeries g = eisenstein_G(two_k, q_order);
    // factorial (2k)!
    mpz_class fact = 1;
    for (int i = 2; i <= two_k; ++i) fact *= i;
    Scalar coeff = Scalar(-2) * Scalar(fact).inverse();
    for (int j = 0; j < q_order; ++j) {
      Scalar v = g.at(0, j) * coeff;
      if (!v.is_zero()) expo.set(two_k, j, v);
    }
  }
  // exp(expo): expo has x-valuation >= 2.
  QXSeries e = QXSeries::constant(ScalarKind::Rational, x_order, q_order, Scalar(1));
  QXSeries power = QXSeries::constant(ScalarKind::Rational, x_order, q_order, Scalar(1));
  Scalar inv_fact(1);
  for (int m = 1; 2 * m < x_order; ++m) {
    power *= expo;
    inv_fact = inv_fact * Scalar(m).inverse();
    e += power.scaled(inv_fact);
  }
  // Multiply by x: shift every x-degree up by one.
  QXSeries out(ScalarKind::Rational, x_order, q_order);
  for (int i = 0; i + 1 < x_order; ++i)
    for (int j = 0; j < q_order; ++j) out.set(i + 1, j, e.at(i, j));
  return out;
}

QXSeries psi_series(int x_order, int q_order) {
  QXSeries shifted = phi_product(x_order, q_order, PhiShift::MinusOmega);
  return shifted.x_constant_part() * shifted.inverted();
}

QXSeries level3_genus_x(int x_order, int q_order) {
  QXSeries plain = phi_product(x_order, q_order).with_field(ScalarKind::Eisenstein);
  return plain * psi_series(x_order, q_order);
}

TSeries character_product(int roots, int x_order, int q_order) {
  if (roots < 0) throw MathError("root count must be nonnegative");
  std::vector<std::string> names = {"q"};
  std::vector<std::string> xv;
  for (int i = 1; i <= roots; ++i) xv.push_back("x" + std::to_string(i));
  names.insert(names.end(), xv.begin(), xv.end());
  RingPtr r = PolyRing::create(names);
  std::size_t qi = r->index_of("q");

  TSeries out = TSeries::constant(r, xv, x_order, Scalar(1));
  if (roots == 0) return out;

  TSeries factor = psi_series(x_order, q_order).inverted().to_tseries("x");
  for (int i = 1; i <= roots; ++i) {
    out *= factor.renamed(r, xv, {{"x", xv[i - 1]}});
    // q is a bounded parameter variable: discard q-degrees past the grid.
    std::map<int, Poly> kept;
    for (const auto& [d, p] : out.slices()) {
      std::vector<Poly::Term> terms;
      for (const auto& tm : p.terms())
        if (expkey::exponent(tm.first, qi) < static_cast<unsigned>(q_order)) terms.push_back(tm);
      if (!terms.empty()) kept[d] = Poly::from_sorted_terms(r, terms);
    }
    TSeries trimmed = TSeries::zero(r, xv, out.order());
    for (const auto& [d, p] : kept) trimmed += TSeries::from_poly(p, xv, out.order());
    out = trimmed;
  }
  return out;
}

}  // namespace cubicalforms
