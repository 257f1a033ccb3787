#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/scalar.hpp"

namespace cubicalforms {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// A declared ordered variable list.  Rings are immutable and shared; two
// polynomials interoperate only when their rings list the same names in the
// same order.
class PolyRing {
 public:
  static constexpr std::size_t kMaxVars = 15;

  static RingPtr create(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  bool has(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws UnknownVariable

  bool same_as(const PolyRing& other) const;

 private:
  explicit PolyRing(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

// Monomials are packed into one 128-bit key: the top byte carries the total
// degree, the next bytes the per-variable exponents (variable 0 highest).
// Plain integer comparison of keys is then graded-lex order, and multiplying
// monomials is key addition (guarded against byte overflow).
using ExpKey = unsigned __int128;

namespace expkey {

ExpKey pack(const std::vector<unsigned>& exps);
std::vector<unsigned> unpack(ExpKey key, std::size_t nvars);
unsigned total_degree(ExpKey key);
unsigned exponent(ExpKey key, std::size_t var);
ExpKey mul(ExpKey a, ExpKey b);          // throws on exponent overflow
bool divides(ExpKey a, ExpKey b);        // a | b componentwise
ExpKey div(ExpKey b, ExpKey a);          // b / a, requires divides(a, b)
ExpKey variable(std::size_t var);

}  // namespace expkey

// Sparse exact polynomial.  Terms are kept sorted by descending key (graded
// lex, highest total degree first), with no zero coefficients.
class Poly {
 public:
  using Term = std::pair<ExpKey, Scalar>;

  Poly() = default;  // zero over no ring; usable only as a target of assignment

  static Poly zero(RingPtr ring);
  static Poly constant(RingPtr ring, const Scalar& c);
  static Poly variable(RingPtr ring, const std::string& name);
  static Poly monomial(RingPtr ring, const std::vector<unsigned>& exps, const Scalar& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  int degree() const;  // -1 for the zero polynomial

  Scalar coefficient(const std::vector<unsigned>& exps) const;
  Scalar coefficient(ExpKey key) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Scalar& c) const;
  Poly shifted(ExpKey mon) const;  // multiply by one monomial
  Poly pow(unsigned n) const;

  // Negates every term whose total exponent in the given variables is odd
  // (the sign action v -> -v on those variables).
  Poly negate_vars(const std::vector<std::string>& vars) const;

  // Carries the polynomial into another ring that contains all its variables
  // by name.
  Poly embedded(RingPtr target) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Canonical text, highest degree first, every scalar explicit:
  // "-1*a1*a2 + 3*a3".
  std::string to_string() const;

  // Construction escape hatch for module code: terms must be sorted
  // descending with nonzero coefficients.
  static Poly from_sorted_terms(RingPtr ring, std::vector<Term> terms);

 private:
  void check_same_ring(const Poly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// The only ideals the engine reduces by: an optional prime together with a
// list of killed variables, e.g. (2, a1, a2).
struct Reduction {
  std::optional<unsigned long> prime;
  std::vector<std::string> killed;
};

// Drops every monomial containing a killed variable, then reduces surviving
// coefficients into {0, ..., prime-1} when a prime is given.  A coefficient
// whose denominator the prime divides raises NonIntegerCoefficient.
Poly reduce_mod_ideal(const Poly& p, const Reduction& red);
Poly reduce_mod_ideal(const Poly& p, const std::optional<unsigned long>& prime,
                      const std::vector<std::string>& killed_vars);

Scalar reduce_scalar_mod(const Scalar& c, unsigned long prime);

// Exact division num / den; throws NotDivisible when the quotient is not a
// polynomial.  With a reduction, arithmetic runs over the reduced ring.
Poly divide_exact(const Poly& num, const Poly& den, const Reduction* red = nullptr);

}  // namespace cubicalforms
