#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "cubicalforms/scalar.hpp"

namespace cubicalforms {

// Bidegree k + l*alpha (alpha the sign representation).
struct Degree {
  long k = 0;
  long l = 0;
  Degree operator+(const Degree& o) const { return {k + o.k, l + o.l}; }
  bool operator==(const Degree& o) const { return k == o.k && l == o.l; }
  bool operator<(const Degree& o) const { return k != o.k ? k < o.k : l < o.l; }
};

// a^j sigma^k u1^p u2^m with j, p, m >= 0 and k any integer.
// Degrees: |a| = alpha, |sigma| = 1 - alpha, |u1| = -1 - alpha,
// |u2| = -3 - 3*alpha; filtration is the a-exponent j.
struct SsqMonomial {
  long j = 0, k = 0, p = 0, m = 0;
  bool operator<(const SsqMonomial& o) const;
  bool operator==(const SsqMonomial& o) const = default;
};

Degree degree_of(const SsqMonomial& mono);
long filtration_of(const SsqMonomial& mono);
std::string monomial_to_string(const SsqMonomial& mono);

// A finite sum of monomials with two-local coefficients, kept merged and
// ordered.  Throws MalformedElement for negative a/u1/u2 exponents or
// coefficients outside the two-local subring.
class PageElement {
 public:
  PageElement() = default;
  static PageElement zero() { return {}; }
  static PageElement monomial(const SsqMonomial& mono, const Scalar& c = Scalar(1));
  static PageElement parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  const std::map<SsqMonomial, Scalar>& terms() const { return terms_; }

  PageElement operator+(const PageElement& o) const;
  PageElement operator-(const PageElement& o) const;
  PageElement operator*(const PageElement& o) const;
  PageElement scaled(const Scalar& c) const;
  bool operator==(const PageElement& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  std::map<SsqMonomial, Scalar> terms_;
};

// The three nonzero differentials, as residue-class operators on monomials:
//   d1(A sigma^k) = 2 a A sigma^{k+1}        for k odd,
//   d3(A sigma^k) = u1 a^3 A sigma^{k+2}     for k = 2 mod 4,
//   d7(A sigma^k) = u2 a^7 A sigma^{k+4}     for k = 4 mod 8,
// zero otherwise, and d_r = 0 for every other r.  Each raises the integral
// degree by 1 and the filtration by r.
PageElement d_r(int r, const PageElement& e);

struct Window {
  long kmax = 48;           // bound on |integral degree| and |sigma exponent|
  long filtration_max = 16; // bound on the a-exponent
  long u2_max = 8;          // bound on the u2-exponent
};

// One window cell: all monomials sharing a Degree and filtration.  They have
// a common sigma exponent; the basis is indexed by (p, m) with p + 3m fixed.
struct CellPresentation {
  Degree deg;
  long filtration = 0;
  long sigma_exp = 0;
  bool determinate = true;  // false: a differential crossed the window edge
  // Surviving generators with their 2-power torsion exponent; 0 means free.
  std::vector<std::pair<PageElement, int>> generators;
};

struct PagePresentation {
  int page = 1;
  Window window;
  std::vector<CellPresentation> cells;  // sorted by (deg, filtration)
};

// Homology through the d_r stage (r in {1,3,7}); the returned page is r+1.
// Verifies d_r(d_r(basis)) = 0 on the whole window first.
PagePresentation page_homology(int r, const Window& w);

// Pages 1 -> 2 -> 4 -> 8 -> infinity; no differentials remain after d7.
PagePresentation e_infinity_chart(const Window& w);

// Survival of a single monomial class through every page.  Returns true with
// the order of its class (torsion exponent t for Z/2^t, 0 for free) when it
// is nonzero at E-infinity.  Throws WindowTooSmall if the class lies outside
// the window or in a cell the window cannot decide.
bool survives_to_e_infinity(const SsqMonomial& mono, const Window& w, int* torsion_exp = nullptr);

std::string chart_text(const PagePresentation& page);
std::string chart_ascii(const PagePresentation& page);
std::string chart_json(const PagePresentation& page);

}  // namespace cubicalforms
