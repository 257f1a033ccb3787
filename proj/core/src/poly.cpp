#include "cubicalforms/poly.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

namespace cubicalforms {

namespace {

constexpr unsigned kDegByte = 15;  // most significant byte of the key

unsigned byte_at(ExpKey key, unsigned pos) {
  return static_cast<unsigned>((key >> (8 * pos)) & 0xFF);
}

ExpKey with_byte(unsigned value, unsigned pos) {
  return static_cast<ExpKey>(value) << (8 * pos);
}

ExpKey high_bits_mask() {
  ExpKey m = 0;
  for (unsigned i = 0; i < 16; ++i) m |= with_byte(0x80, i);
  return m;
}

const ExpKey kHighBits = high_bits_mask();

std::string monomial_string(const PolyRing& ring, ExpKey key) {
  std::string out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    unsigned e = expkey::exponent(key, i);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.name(i);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

RingPtr PolyRing::create(std::vector<std::string> names) {
  if (names.size() > kMaxVars) throw MathError("too many variables for one ring");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw MathError("empty variable name");
    if (!seen.insert(n).second) throw MathError("duplicate variable name: " + n);
  }
  return RingPtr(new PolyRing(std::move(names)));
}

bool PolyRing::has(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t PolyRing::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownVariable("unknown variable: " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

bool PolyRing::same_as(const PolyRing& other) const {
  return this == &other || names_ == other.names_;
}

namespace expkey {

ExpKey pack(const std::vector<unsigned>& exps) {
  if (exps.size() > PolyRing::kMaxVars) throw MathError("too many exponents");
  unsigned total = 0;
  ExpKey key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 255) throw MathError("exponent overflow");
    total += exps[i];
    key |= with_byte(exps[i], kDegByte - 1 - static_cast<unsigned>(i));
  }
  if (total > 255) throw MathError("total degree overflow");
  return key | with_byte(total, kDegByte);
}

std::vector<unsigned> unpack(ExpKey key, std::size_t nvars) {
  std::vector<unsigned> exps(nvars);
  for (std::size_t i = 0; i < nvars; ++i) exps[i] = exponent(key, i);
  return exps;
}

unsigned total_degree(ExpKey key) { return byte_at(key, kDegByte); }

unsigned exponent(ExpKey key, std::size_t var) {
  return byte_at(key, kDegByte - 1 - static_cast<unsigned>(var));
}

ExpKey mul(ExpKey a, ExpKey b) {
  if (((a | b) & kHighBits) == 0) return a + b;
  ExpKey key = 0;
  for (unsigned pos = 0; pos < 16; ++pos) {
    unsigned s = byte_at(a, pos) + byte_at(b, pos);
    if (s > 255) throw MathError("exponent overflow");
    key |= with_byte(s, pos);
  }
  return key;
}

bool divides(ExpKey a, ExpKey b) {
  for (unsigned pos = 0; pos < 16; ++pos)
    if (byte_at(a, pos) > byte_at(b, pos)) return false;
  return true;
}

ExpKey div(ExpKey b, ExpKey a) {
  if (!divides(a, b)) throw NotDivisible("monomial division underflow");
  return b - a;
}

ExpKey variable(std::size_t var) {
  return with_byte(1, kDegByte) | with_byte(1, kDegByte - 1 - static_cast<unsigned>(var));
}

}  // namespace expkey

Poly Poly::zero(RingPtr ring) {
  Poly p;
  p.ring_ = std::move(ring);
  return p;
}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
  Poly p = zero(std::move(ring));
  if (!c.is_zero()) p.terms_.emplace_back(0, c);
  return p;
}

Poly Poly::variable(RingPtr ring, const std::string& name) {
  std::size_t i = ring->index_of(name);
  Poly p = zero(std::move(ring));
  p.terms_.emplace_back(expkey::variable(i), Scalar(1));
  return p;
}

Poly Poly::monomial(RingPtr ring, const std::vector<unsigned>& exps, const Scalar& c) {
  if (exps.size() != ring->size()) throw VariableMismatch("exponent vector length mismatch");
  Poly p = zero(std::move(ring));
  if (!c.is_zero()) p.terms_.emplace_back(expkey::pack(exps), c);
  return p;
}

Poly Poly::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].second.is_zero()) throw MathError("zero coefficient in term list");
    if (i > 0 && terms[i - 1].first <= terms[i].first) throw MathError("terms out of order");
  }
  Poly p = zero(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

void Poly::check_same_ring(const Poly& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
    throw VariableMismatch("polynomials over different variable lists");
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
  return Scalar(0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(expkey::total_degree(terms_.front().first));
}

Scalar Poly::coefficient(const std::vector<unsigned>& exps) const {
  return coefficient(expkey::pack(exps));
}

Scalar Poly::coefficient(ExpKey key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, ExpKey k) { return t.first > k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return Scalar(0);
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  check_same_ring(o);
  Poly out = zero(ring_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].first > o.terms_[j].first) {
      out.terms_.push_back(terms_[i++]);
    } else if (terms_[i].first < o.terms_[j].first) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].second + o.terms_[j].second;
      if (!c.is_zero()) out.terms_.emplace_back(terms_[i].first, c);
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.terms_.push_back(o.terms_[j]);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_same_ring(o);
  if (is_zero() || o.is_zero()) return zero(ring_);
  if (o.terms_.size() == 1) return shifted(o.terms_[0].first).scaled(o.terms_[0].second);
  if (terms_.size() == 1) return o.shifted(terms_[0].first).scaled(terms_[0].second);
  std::map<ExpKey, Scalar, std::greater<ExpKey>> acc;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      acc[expkey::mul(ka, kb)] += ca * cb;
    }
  }
  Poly out = zero(ring_);
  out.terms_.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.terms_.emplace_back(k, std::move(c));
  return out;
}

Poly Poly::scaled(const Scalar& c) const {
  if (c.is_zero()) return zero(ring_);
  Poly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

Poly Poly::shifted(ExpKey mon) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.first = expkey::mul(t.first, mon);
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly acc = constant(ring_, Scalar(1));
  for (unsigned i = 0; i < n; ++i) acc = acc * *this;
  return acc;
}

Poly Poly::negate_vars(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> idx;
  idx.reserve(vars.size());
  for (const auto& v : vars) idx.push_back(ring_->index_of(v));
  Poly p = *this;
  for (auto& t : p.terms_) {
    unsigned parity = 0;
    for (std::size_t i : idx) parity += expkey::exponent(t.first, i);
    if (parity % 2 == 1) t.second = -t.second;
  }
  return p;
}

Poly Poly::embedded(RingPtr target) const {
  if (!ring_) throw MathError("polynomial without ring");
  if (target->same_as(*ring_)) {
    Poly p = *this;
    p.ring_ = std::move(target);
    return p;
  }
  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::vector<std::size_t> var_map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    const std::string& n = ring_->name(i);
    var_map[i] = target->has(n) ? target->index_of(n) : kMissing;
  }
  std::map<ExpKey, Scalar, std::greater<ExpKey>> acc;
  for (const auto& [key, c] : terms_) {
    std::vector<unsigned> exps(target->size(), 0);
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      unsigned e = expkey::exponent(key, i);
      if (e == 0) continue;
      if (var_map[i] == kMissing) throw UnknownVariable("unknown variable: " + ring_->name(i));
      exps[var_map[i]] = e;
    }
    acc[expkey::pack(exps)] += c;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.emplace_back(k, std::move(c));
  return from_sorted_terms(std::move(target), std::move(out));
}

bool Poly::operator==(const Poly& o) const {
  if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
  if (!ring_->same_as(*o.ring_)) return false;
  return terms_ == o.terms_;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    Scalar shown = c;
    if (first) {
      if (c.sign() < 0) {
        out += "-";
        shown = -c;
      }
    } else {
      if (c.sign() < 0) {
        out += " - ";
        shown = -c;
      } else {
        out += " + ";
      }
    }
    std::string mon = monomial_string(*ring_, key);
    out += shown.to_string();
    if (!mon.empty()) out += "*" + mon;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

namespace {

mpz_class mod_into_range(const mpz_class& v, const mpz_class& p) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpq_class reduce_rat_mod(const mpq_class& q, const mpz_class& p) {
  if (mpz_divisible_p(q.get_den().get_mpz_t(), p.get_mpz_t()))
    throw NonIntegerCoefficient("coefficient " + q.get_str() + " is not integral at " +
                                p.get_str());
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), q.get_den().get_mpz_t(), p.get_mpz_t()) == 0)
    throw NonIntegerCoefficient("coefficient " + q.get_str() + " is not integral at " +
                                p.get_str());
  return mpq_class(mod_into_range(mod_into_range(q.get_num(), p) * dinv, p));
}

}  // namespace

Scalar reduce_scalar_mod(const Scalar& c, unsigned long prime) {
  mpz_class p(static_cast<unsigned long>(prime));
  mpq_class re = reduce_rat_mod(c.rat(), p);
  if (c.zeta_part() == 0) return Scalar(mpz_class(re.get_num()));
  mpq_class ze = reduce_rat_mod(c.zeta_part(), p);
  return Scalar::eisenstein(Scalar(mpz_class(re.get_num())), Scalar(mpz_class(ze.get_num())));
}

Poly reduce_mod_ideal(const Poly& p, const Reduction& red) {
  return reduce_mod_ideal(p, red.prime, red.killed);
}

Poly reduce_mod_ideal(const Poly& p, const std::optional<unsigned long>& prime,
                      const std::vector<std::string>& killed_vars) {
  if (!p.ring()) throw MathError("polynomial without ring");
  if (prime) {
    mpz_class pz(static_cast<unsigned long>(*prime));
    if (*prime < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
      throw MathError("modulus must be prime");
  }
  std::vector<std::size_t> killed;
  killed.reserve(killed_vars.size());
  for (const auto& v : killed_vars) killed.push_back(p.ring()->index_of(v));

  std::vector<Poly::Term> out;
  for (const auto& [key, c] : p.terms()) {
    bool drop = false;
    for (std::size_t i : killed)
      if (expkey::exponent(key, i) > 0) {
        drop = true;
        break;
      }
    if (drop) continue;
    Scalar r = prime ? reduce_scalar_mod(c, *prime) : c;
    if (!r.is_zero()) out.emplace_back(key, r);
  }
  return Poly::from_sorted_terms(p.ring(), std::move(out));
}

Poly divide_exact(const Poly& num, const Poly& den, const Reduction* red) {
  Poly n = red ? reduce_mod_ideal(num, *red) : num;
  Poly d = red ? reduce_mod_ideal(den, *red) : den;
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (!n.ring() || !d.ring() || !n.ring()->same_as(*d.ring()))
    throw VariableMismatch("polynomials over different variable lists");

  std::vector<Poly::Term> quotient;
  const auto& lead_d = d.terms().front();
  while (!n.is_zero()) {
    const auto& lead_n = n.terms().front();
    if (!expkey::divides(lead_d.first, lead_n.first))
      throw NotDivisible("remainder term " + Poly::from_sorted_terms(
                             n.ring(), {lead_n}).to_string() +
                         " is not divisible by the leading term of the divisor");
    ExpKey qk = expkey::div(lead_n.first, lead_d.first);
    Scalar qc;
    if (red && red->prime) {
      Scalar dinv = reduce_scalar_mod(Scalar(1) / lead_d.second, *red->prime);
      qc = reduce_scalar_mod(lead_n.second * dinv, *red->prime);
    } else {
      qc = lead_n.second / lead_d.second;
    }
    quotient.emplace_back(qk, qc);
    Poly step = d.shifted(qk).scaled(qc);
    n = n - step;
    if (red && red->prime) n = reduce_mod_ideal(n, *red);
  }
  return Poly::from_sorted_terms(num.ring(), std::move(quotient));
}

}  // namespace cubicalforms
