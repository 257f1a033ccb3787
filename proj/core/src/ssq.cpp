#include "cubicalforms/ssq.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace cubicalforms {

bool SsqMonomial::operator<(const SsqMonomial& o) const {
  if (j != o.j) return j < o.j;
  if (k != o.k) return k < o.k;
  if (p != o.p) return p < o.p;
  return m < o.m;
}

Degree degree_of(const SsqMonomial& mono) {
  return {mono.k - mono.p - 3 * mono.m, mono.j - mono.k - mono.p - 3 * mono.m};
}

long filtration_of(const SsqMonomial& mono) { return mono.j; }

namespace {

void validate(const SsqMonomial& mono) {
  if (mono.j < 0 || mono.p < 0 || mono.m < 0)
    throw MalformedElement("negative exponent on a, u1 or u2");
}

void validate_coeff(const Scalar& c) {
  if (c.kind() == ScalarKind::Eisenstein)
    throw MalformedElement("coefficient is not two-local");
  if (c.rat().get_den() % 2 == 0) throw MalformedElement("coefficient is not two-local");
}

std::string exp_factor(const char* name, long e) {
  if (e == 0) return "";
  std::string s = name;
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace

std::string monomial_to_string(const SsqMonomial& mono) {
  std::string out;
  for (const std::string& f : {exp_factor("a", mono.j), exp_factor("sigma", mono.k),
                               exp_factor("u1", mono.p), exp_factor("u2", mono.m)}) {
    if (f.empty()) continue;
    if (!out.empty()) out += "*";
    out += f;
  }
  return out.empty() ? "1" : out;
}

PageElement PageElement::monomial(const SsqMonomial& mono, const Scalar& c) {
  validate(mono);
  validate_coeff(c);
  PageElement e;
  if (!c.is_zero()) e.terms_[mono] = c;
  return e;
}

PageElement PageElement::operator+(const PageElement& o) const {
  PageElement out = *this;
  for (const auto& [mono, c] : o.terms_) {
    auto it = out.terms_.find(mono);
    if (it == out.terms_.end()) {
      out.terms_.emplace(mono, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

PageElement PageElement::operator-(const PageElement& o) const { return *this + o.scaled(Scalar(-1)); }

PageElement PageElement::operator*(const PageElement& o) const {
  PageElement out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      SsqMonomial mono{ma.j + mb.j, ma.k + mb.k, ma.p + mb.p, ma.m + mb.m};
      Scalar c = ca * cb;
      auto it = out.terms_.find(mono);
      if (it == out.terms_.end()) {
        if (!c.is_zero()) out.terms_.emplace(mono, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  return out;
}

PageElement PageElement::scaled(const Scalar& c) const {
  validate_coeff(c);
  PageElement out;
  if (c.is_zero()) return out;
  for (const auto& [mono, v] : terms_) out.terms_.emplace(mono, v * c);
  return out;
}

std::string PageElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    Scalar a = c;
    if (first) {
      if (a.sign() < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += a.sign() < 0 ? " - " : " + ";
      if (a.sign() < 0) a = -a;
    }
    std::string ms = monomial_to_string(mono);
    if (a.is_one()) {
      out += ms;
    } else if (ms == "1") {
      out += a.to_string();
    } else {
      out += a.to_string() + "*" + ms;
    }
    first = false;
  }
  return out;
}

PageElement PageElement::parse(const std::string& text) {
  PageElement out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw MalformedElement("empty element text");
  bool any = false;
  int sign = 1;
  while (i < text.size()) {
    skip_ws();
    if (any || text[i] == '+' || text[i] == '-') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-')) {
        if (any) throw MalformedElement("expected + or - between terms");
      } else {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
        skip_ws();
      }
    }
    // one term: '*'-separated factors
    SsqMonomial mono;
    Scalar coeff(sign);
    bool factor_expected = true;
    while (factor_expected) {
      skip_ws();
      std::size_t start = i;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        mpz_class num(text.substr(start, i - start));
        if (i < text.size() && text[i] == '/') {
          ++i;
          std::size_t ds = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (ds == i) throw MalformedElement("missing denominator");
          mpz_class den(text.substr(ds, i - ds));
          if (den % 2 == 0) throw MalformedElement("coefficient is not two-local");
          coeff *= Scalar::two_local(num, den);
        } else {
          coeff *= Scalar(num);
        }
      } else if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])))) ++i;
        std::string name = text.substr(start, i - start);
        long e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          std::size_t es = i;
          if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (es == i) throw MalformedElement("missing exponent");
          e = std::stol(text.substr(es, i - es));
        }
        if (name == "a") {
          if (e < 0) throw MalformedElement("negative exponent on a, u1 or u2");
          mono.j += e;
        } else if (name == "sigma") {
          mono.k += e;
        } else if (name == "u1") {
          if (e < 0) throw MalformedElement("negative exponent on a, u1 or u2");
          mono.p += e;
        } else if (name == "u2") {
          if (e < 0) throw MalformedElement("negative exponent on a, u1 or u2");
          mono.m += e;
        } else {
          throw MalformedElement("unknown factor: " + name);
        }
      } else {
        throw MalformedElement("malformed term");
      }
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
      } else {
        factor_expected = false;
      }
    }
    out = out + PageElement::monomial(mono, coeff);
    any = true;
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '+' && text[i] != '-') throw MalformedElement("expected + or - between terms");
  }
  return out;
}

namespace {

struct DrRule {
  int r;
  long dk, dS;        // shifts of the sigma exponent and of p + 3m
  long coeff;         // scalar multiple
  bool (*active)(long k);
  std::pair<long, long> (*slot)(long p, long m);
};

const DrRule kRules[3] = {
    {1, 1, 0, 2, [](long k) { return ((k % 2) + 2) % 2 == 1; },
     [](long p, long m) { return std::pair<long, long>(p, m); }},
    {3, 2, 1, 1, [](long k) { return ((k % 4) + 4) % 4 == 2; },
     [](long p, long m) { return std::pair<long, long>(p + 1, m); }},
    {7, 4, 3, 1, [](long k) { return ((k % 8) + 8) % 8 == 4; },
     [](long p, long m) { return std::pair<long, long>(p, m + 1); }},
};

const DrRule* rule_for(int r) {
  for (const auto& rule : kRules)
    if (rule.r == r) return &rule;
  return nullptr;
}

}  // namespace

PageElement d_r(int r, const PageElement& e) {
  const DrRule* rule = rule_for(r);
  PageElement out;
  if (!rule) return out;
  for (const auto& [mono, c] : e.terms()) {
    if (!rule->active(mono.k)) continue;
    auto [p, m] = rule->slot(mono.p, mono.m);
    SsqMonomial image{mono.j + rule->r, mono.k + rule->dk, p, m};
    out = out + PageElement::monomial(image, c * Scalar(rule->coeff));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Window engine: integer lattices per cell.
// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<mpz_class>;
using Cols = std::vector<Vec>;

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Unimodular column reduction to echelon form: pivot rows strictly increase,
// pivots positive; zero columns dropped.  The lattice spanned is unchanged.
void echelonize(Cols& cols, std::size_t nrows) {
  std::size_t done = 0;
  for (std::size_t row = 0; row < nrows && done < cols.size(); ++row) {
    // Combine all columns with a nonzero entry in this row into one.
    std::size_t lead = cols.size();
    for (std::size_t j = done; j < cols.size(); ++j) {
      if (cols[j][row] == 0) continue;
      if (lead == cols.size()) {
        lead = j;
        continue;
      }
      mpz_class g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), cols[lead][row].get_mpz_t(),
                 cols[j][row].get_mpz_t());
      mpz_class a = cols[lead][row] / g, b = cols[j][row] / g;
      for (std::size_t i = 0; i < nrows; ++i) {
        mpz_class u = cols[lead][i], v = cols[j][i];
        cols[lead][i] = x * u + y * v;
        cols[j][i] = b * u - a * v;
      }
    }
    if (lead == cols.size()) continue;
    std::swap(cols[lead], cols[done]);
    if (cols[done][row] < 0)
      for (auto& x : cols[done]) x = -x;
    ++done;
  }
  cols.erase(std::remove_if(cols.begin(), cols.end(),
                            [](const Vec& v) { return is_zero_vec(v); }),
             cols.end());
}

// Reduce v against an echelonized basis; returns true iff v is in the lattice.
bool in_lattice(Vec v, const Cols& ech) {
  std::size_t n = v.size();
  std::size_t col = 0;
  for (std::size_t row = 0; row < n; ++row) {
    if (v[row] == 0) continue;
    while (col < ech.size()) {
      std::size_t pivot = 0;
      while (pivot < n && ech[col][pivot] == 0) ++pivot;
      if (pivot >= row) break;
      ++col;
    }
    if (col >= ech.size()) return false;
    std::size_t pivot = 0;
    while (pivot < n && ech[col][pivot] == 0) ++pivot;
    if (pivot != row) return false;
    if (v[row] % ech[col][pivot] != 0) return false;
    mpz_class q = v[row] / ech[col][pivot];
    for (std::size_t i = row; i < n; ++i) v[i] -= q * ech[col][i];
  }
  return true;
}

// Membership after inverting odd integers: quotients may have odd denominators.
bool in_lattice_two_local(const Vec& v0, const Cols& ech) {
  std::size_t n = v0.size();
  std::vector<mpq_class> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = v0[i];
  std::size_t col = 0;
  for (std::size_t row = 0; row < n; ++row) {
    if (v[row] == 0) continue;
    while (col < ech.size()) {
      std::size_t pivot = 0;
      while (pivot < n && ech[col][pivot] == 0) ++pivot;
      if (pivot >= row) break;
      ++col;
    }
    if (col >= ech.size()) return false;
    std::size_t pivot = 0;
    while (pivot < n && ech[col][pivot] == 0) ++pivot;
    if (pivot != row) return false;
    mpq_class q = v[row] / mpq_class(ech[col][pivot]);
    q.canonicalize();
    if (q.get_den() % 2 == 0) return false;
    for (std::size_t i = row; i < n; ++i) v[i] -= q * ech[col][i];
  }
  return true;
}

// Coefficients of v against the echelon basis (v must be in the lattice).
Vec coords_in_lattice(Vec v, const Cols& ech) {
  std::size_t n = v.size();
  Vec out(ech.size(), 0);
  std::size_t col = 0;
  for (std::size_t row = 0; row < n; ++row) {
    if (v[row] == 0) continue;
    while (col < ech.size()) {
      std::size_t pivot = 0;
      while (pivot < n && ech[col][pivot] == 0) ++pivot;
      if (pivot >= row) break;
      ++col;
    }
    if (col >= ech.size()) throw InternalMismatch("vector not in lattice");
    std::size_t pivot = 0;
    while (pivot < n && ech[col][pivot] == 0) ++pivot;
    if (pivot != row || v[row] % ech[col][pivot] != 0)
      throw InternalMismatch("vector not in lattice");
    mpz_class q = v[row] / ech[col][pivot];
    out[col] = q;
    for (std::size_t i = row; i < n; ++i) v[i] -= q * ech[col][i];
  }
  return out;
}

// Kernel of the integer matrix whose columns are `cols` (each of length
// nrows): returns generators of {x : cols * x = 0}.
Cols kernel_columns(const Cols& cols, std::size_t nrows) {
  std::size_t c = cols.size();
  Cols work(c, Vec(nrows + c, 0));
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < nrows; ++i) work[j][i] = cols[j][i];
    work[j][nrows + j] = 1;
  }
  // Echelonize with pivoting restricted to the top block.
  std::size_t done = 0;
  for (std::size_t row = 0; row < nrows && done < work.size(); ++row) {
    std::size_t lead = work.size();
    for (std::size_t j = done; j < work.size(); ++j) {
      if (work[j][row] == 0) continue;
      if (lead == work.size()) {
        lead = j;
        continue;
      }
      mpz_class g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), work[lead][row].get_mpz_t(),
                 work[j][row].get_mpz_t());
      mpz_class a = work[lead][row] / g, b = work[j][row] / g;
      for (std::size_t i = 0; i < nrows + c; ++i) {
        mpz_class u = work[lead][i], v = work[j][i];
        work[lead][i] = x * u + y * v;
        work[j][i] = b * u - a * v;
      }
    }
    if (lead == work.size()) continue;
    std::swap(work[lead], work[done]);
    ++done;
  }
  Cols out;
  for (std::size_t j = done; j < work.size(); ++j) {
    Vec tail(work[j].begin() + nrows, work[j].end());
    if (!is_zero_vec(tail)) out.push_back(std::move(tail));
  }
  return out;
}

// Smith diagonal of X together with the inverse of the accumulated row
// transformation: if D = L * X * R then returns (diag(D), L^{-1}).  The
// columns of Z * L^{-1} present Z/col-span(X) with orders diag(D).
void snf_with_left_inverse(std::vector<Vec>& X, std::size_t rows, std::vector<Vec>& linv,
                           std::vector<mpz_class>& diag) {
  // X is stored as rows (X[i] is row i, length = #cols).
  std::size_t cols = rows == 0 || X.empty() ? 0 : X[0].size();
  linv.assign(rows, Vec(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) linv[i][i] = 1;  // linv[i][j]: entry (i,j)
  diag.clear();
  auto row_swap = [&](std::size_t a, std::size_t b) {
    std::swap(X[a], X[b]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(linv[i][a], linv[i][b]);  // column swap
  };
  auto row_addmul = [&](std::size_t a, std::size_t b, const mpz_class& c) {
    // row_a += c * row_b  =>  linv col_b -= c * col_a
    for (std::size_t jj = 0; jj < X[a].size(); ++jj) X[a][jj] += c * X[b][jj];
    for (std::size_t i = 0; i < rows; ++i) linv[i][b] -= c * linv[i][a];
  };
  auto row_negate = [&](std::size_t a) {
    for (auto& x : X[a]) x = -x;
    for (std::size_t i = 0; i < rows; ++i) linv[i][a] = -linv[i][a];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(X[i][a], X[i][b]);
  };
  auto col_addmul = [&](std::size_t a, std::size_t b, const mpz_class& c) {
    for (std::size_t i = 0; i < rows; ++i) X[i][a] += c * X[i][b];
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Find a nonzero entry of smallest absolute value in the submatrix.
    bool found = false;
    std::size_t bi = t, bj = t;
    mpz_class best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (X[i][j] == 0) continue;
        mpz_class a = abs(X[i][j]);
        if (!found || a < best) {
          found = true;
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;
    row_swap(t, bi);
    col_swap(t, bj);
    if (X[t][t] < 0) row_negate(t);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (X[i][t] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), X[i][t].get_mpz_t(), X[t][t].get_mpz_t());
      row_addmul(i, t, -q);
      if (X[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (X[t][j] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), X[t][j].get_mpz_t(), X[t][t].get_mpz_t());
      col_addmul(j, t, -q);
      if (X[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // Enforce divisibility of the remaining block by X[t][t].
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols && divides; ++j)
        if (X[i][j] % X[t][t] != 0) {
          row_addmul(t, i, 1);
          divides = false;
        }
    if (!divides) continue;
    diag.push_back(X[t][t]);
    ++t;
  }
}

struct CellKey {
  long K, j, S;
  bool operator<(const CellKey& o) const {
    if (K != o.K) return K < o.K;
    if (j != o.j) return j < o.j;
    return S < o.S;
  }
};

struct Cell {
  long k = 0;                                 // common sigma exponent K + S
  std::vector<std::pair<long, long>> slots;   // (p, m) with p + 3m = S
  Cols Z, B;                                  // current page lattices
  bool det = true;
  // staging for the next page
  Cols nextZ, nextB_extra;
  bool next_det = true;
};

struct PageState {
  Window w;
  int page = 1;
  std::map<CellKey, Cell> cells;
};

PageState build_window(const Window& w) {
  if (w.kmax < 0 || w.filtration_max < 0 || w.u2_max < 0)
    throw MathError("window bounds must be nonnegative");
  PageState st;
  st.w = w;
  for (long K = -w.kmax; K <= w.kmax; ++K)
    for (long j = 0; j <= w.filtration_max; ++j)
      for (long S = 0; S + K <= w.kmax; ++S) {
        Cell c;
        c.k = K + S;
        for (long m = 0; 3 * m <= S && m <= w.u2_max; ++m) c.slots.emplace_back(S - 3 * m, m);
        std::size_t n = c.slots.size();
        c.Z.assign(n, Vec(n, 0));
        for (std::size_t i = 0; i < n; ++i) c.Z[i][i] = 1;
        st.cells.emplace(CellKey{K, j, S}, std::move(c));
      }
  return st;
}

// The matrix of d_r from `src` into `tgt` slot bases; slots the u2 cap loses
// are reported through *lost.
Cols cell_matrix(const DrRule& rule, const Cell& src, const Cell& tgt, bool* lost) {
  std::map<std::pair<long, long>, std::size_t> tindex;
  for (std::size_t i = 0; i < tgt.slots.size(); ++i) tindex[tgt.slots[i]] = i;
  Cols M(src.slots.size(), Vec(tgt.slots.size(), 0));
  for (std::size_t s = 0; s < src.slots.size(); ++s) {
    auto [p, m] = rule.slot(src.slots[s].first, src.slots[s].second);
    auto it = tindex.find({p, m});
    if (it == tindex.end()) {
      *lost = true;
      continue;
    }
    M[s][it->second] = rule.coeff;
  }
  return M;
}

Vec apply_matrix(const Cols& M, const Vec& x, std::size_t nt) {
  Vec out(nt, 0);
  for (std::size_t s = 0; s < M.size(); ++s) {
    if (x[s] == 0) continue;
    for (std::size_t i = 0; i < nt; ++i) out[i] += x[s] * M[s][i];
  }
  return out;
}

void verify_squares_to_zero(const PageState& st, int r) {
  for (const auto& [key, cell] : st.cells) {
    long jj = key.j;
    for (const auto& [p, m] : cell.slots) {
      PageElement e = PageElement::monomial({jj, cell.k, p, m});
      if (!d_r(r, d_r(r, e)).is_zero())
        throw InternalMismatch("differential does not square to zero");
    }
  }
}

void run_transition(PageState& st, int r) {
  const DrRule& rule = *rule_for(r);
  verify_squares_to_zero(st, r);

  // Outgoing pass: push images into target staging areas, settle determinacy.
  for (auto& [key, cell] : st.cells) {
    cell.nextZ.clear();
    cell.nextB_extra.clear();
    cell.next_det = cell.det;
  }
  for (auto& [key, cell] : st.cells) {
    if (!rule.active(cell.k)) continue;
    CellKey tkey{key.K + 1, key.j + r, key.S + rule.dS};
    auto it = st.cells.find(tkey);
    if (it == st.cells.end()) {
      cell.next_det = false;  // image leaves the window: kernel unknown
      continue;
    }
    Cell& tgt = it->second;
    bool lost = false;
    Cols M = cell_matrix(rule, cell, tgt, &lost);
    if (lost) {
      cell.next_det = false;
      tgt.next_det = false;
    }
    if (!cell.det) tgt.next_det = false;  // its boundary contribution unknown
    if (!tgt.det) cell.next_det = false;  // kernel condition against unknown B
    for (const Vec& z : cell.Z) tgt.nextB_extra.push_back(apply_matrix(M, z, tgt.slots.size()));
  }
  // Incoming sources the window clipped on the left edge.
  for (auto& [key, cell] : st.cells) {
    CellKey skey{key.K - 1, key.j - r, key.S - rule.dS};
    if (skey.j < 0 || skey.S < 0) continue;  // no such source exists at all
    if (!rule.active(cell.k - rule.dk)) continue;
    if (st.cells.find(skey) == st.cells.end()) cell.next_det = false;
  }

  // Kernel pass, from the current-page snapshots.
  for (auto& [key, cell] : st.cells) {
    if (!rule.active(cell.k)) {
      cell.nextZ = cell.Z;
      continue;
    }
    CellKey tkey{key.K + 1, key.j + r, key.S + rule.dS};
    auto it = st.cells.find(tkey);
    if (it == st.cells.end()) {
      cell.nextZ = cell.Z;  // placeholder; the cell is already indeterminate
      continue;
    }
    const Cell& tgt = it->second;
    bool lost = false;
    Cols M = cell_matrix(rule, cell, tgt, &lost);
    std::size_t nt = tgt.slots.size();
    Cols aug;
    for (const Vec& z : cell.Z) aug.push_back(apply_matrix(M, z, nt));
    for (const Vec& b : tgt.B) aug.push_back(b);
    Cols ker = kernel_columns(aug, nt);
    Cols gens;
    std::size_t zc = cell.Z.size();
    for (const Vec& kv : ker) {
      Vec g(cell.slots.size(), 0);
      bool nonzero = false;
      for (std::size_t s = 0; s < zc; ++s) {
        if (kv[s] == 0) continue;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += kv[s] * cell.Z[s][i];
      }
      for (const auto& x : g) nonzero = nonzero || x != 0;
      if (nonzero) gens.push_back(std::move(g));
    }
    echelonize(gens, cell.slots.size());
    cell.nextZ = std::move(gens);
  }

  // Commit: new B = old B + incoming images; assert containment on
  // determinate cells.
  for (auto& [key, cell] : st.cells) {
    Cols b = cell.B;
    for (Vec& v : cell.nextB_extra) b.push_back(std::move(v));
    echelonize(b, cell.slots.size());
    cell.B = std::move(b);
    cell.Z = std::move(cell.nextZ);
    cell.det = cell.next_det;
    cell.nextB_extra.clear();
    cell.nextZ.clear();
    if (cell.det) {
      for (const Vec& bg : cell.B)
        if (!in_lattice(bg, cell.Z))
          throw InternalMismatch("boundary lattice escapes the cycle lattice");
    }
  }
  st.page = r + 1;
}

struct CellHomology {
  std::vector<std::pair<Vec, int>> gens;  // generator vector + torsion exponent (0 = free)
};

int two_adic_valuation(const mpz_class& d) {
  if (d == 0) return -1;  // marker: free
  mpz_class a = abs(d);
  return static_cast<int>(mpz_scan1(a.get_mpz_t(), 0));
}

CellHomology cell_homology(const Cell& cell) {
  CellHomology out;
  std::size_t rz = cell.Z.size();
  if (rz == 0) return out;
  // Coordinates of every B generator in the Z basis.
  std::vector<Vec> X(rz, Vec(cell.B.size(), 0));  // rows = Z coords
  for (std::size_t b = 0; b < cell.B.size(); ++b) {
    Vec coef = coords_in_lattice(cell.B[b], cell.Z);
    for (std::size_t i = 0; i < rz; ++i) X[i][b] = coef[i];
  }
  std::vector<Vec> linv;
  std::vector<mpz_class> diag;
  if (cell.B.empty()) {
    linv.assign(rz, Vec(rz, 0));
    for (std::size_t i = 0; i < rz; ++i) linv[i][i] = 1;
  } else {
    snf_with_left_inverse(X, rz, linv, diag);
  }
  // New Z basis: columns of Z * linv.
  for (std::size_t gi = 0; gi < rz; ++gi) {
    Vec g(cell.slots.size(), 0);
    for (std::size_t s = 0; s < rz; ++s) {
      if (linv[s][gi] == 0) continue;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += linv[s][gi] * cell.Z[s][i];
    }
    if (gi < diag.size()) {
      int t = two_adic_valuation(diag[gi]);
      if (t <= 0) continue;  // unit (two-locally): trivial class
      out.gens.emplace_back(std::move(g), t);
    } else {
      out.gens.emplace_back(std::move(g), 0);  // free
    }
  }
  return out;
}

PageElement vec_to_element(const Cell& cell, long j, const Vec& v) {
  PageElement e;
  for (std::size_t i = 0; i < cell.slots.size(); ++i) {
    if (v[i] == 0) continue;
    e = e + PageElement::monomial({j, cell.k, cell.slots[i].first, cell.slots[i].second},
                                  Scalar(mpz_class(v[i])));
  }
  return e;
}

PagePresentation present(const PageState& st) {
  PagePresentation out;
  out.page = st.page;
  out.window = st.w;
  for (const auto& [key, cell] : st.cells) {
    CellPresentation pres;
    pres.deg = {key.K, key.j - key.K - 2 * key.S};
    pres.filtration = key.j;
    pres.sigma_exp = cell.k;
    pres.determinate = cell.det;
    if (cell.det) {
      CellHomology h = cell_homology(cell);
      for (auto& [v, t] : h.gens) pres.generators.emplace_back(vec_to_element(cell, key.j, v), t);
      if (pres.generators.empty()) continue;
    }
    out.cells.push_back(std::move(pres));
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const CellPresentation& a, const CellPresentation& b) {
    if (!(a.deg == b.deg)) return a.deg < b.deg;
    if (a.filtration != b.filtration) return a.filtration < b.filtration;
    return a.sigma_exp < b.sigma_exp;
  });
  return out;
}

// Cache of the last fully-run window (the survival checks reuse it).
std::mutex g_cache_mutex;
bool g_cache_valid = false;
Window g_cache_window;
PageState g_cache_state;

const PageState& run_all_pages_cached(const Window& w) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  if (g_cache_valid && g_cache_window.kmax == w.kmax &&
      g_cache_window.filtration_max == w.filtration_max && g_cache_window.u2_max == w.u2_max)
    return g_cache_state;
  PageState st = build_window(w);
  run_transition(st, 1);
  run_transition(st, 3);
  run_transition(st, 7);
  st.page = 8;  // no further differentials: this is also E-infinity
  g_cache_state = std::move(st);
  g_cache_window = w;
  g_cache_valid = true;
  return g_cache_state;
}

}  // namespace

PagePresentation page_homology(int r, const Window& w) {
  if (r != 1 && r != 3 && r != 7)
    throw MathError("pages change only at r = 1, 3, 7");
  PageState st = build_window(w);
  run_transition(st, 1);
  if (r >= 3) run_transition(st, 3);
  if (r >= 7) run_transition(st, 7);
  return present(st);
}

PagePresentation e_infinity_chart(const Window& w) {
  PagePresentation pres = present(run_all_pages_cached(w));
  pres.page = 8;
  return pres;
}

bool survives_to_e_infinity(const SsqMonomial& mono, const Window& w, int* torsion_exp) {
  validate(mono);
  long S = mono.p + 3 * mono.m;
  CellKey key{mono.k - S, mono.j, S};
  if (key.K < -w.kmax || key.K > w.kmax || mono.j > w.filtration_max || mono.m > w.u2_max ||
      mono.k > w.kmax || mono.k < -w.kmax)
    throw WindowTooSmall("monomial outside the window");
  const PageState& st = run_all_pages_cached(w);
  auto it = st.cells.find(key);
  if (it == st.cells.end()) throw WindowTooSmall("monomial outside the window");
  const Cell& cell = it->second;
  if (!cell.det) throw WindowTooSmall("cell is indeterminate at this window size");
  Vec v(cell.slots.size(), 0);
  bool placed = false;
  for (std::size_t i = 0; i < cell.slots.size(); ++i)
    if (cell.slots[i] == std::pair<long, long>(mono.p, mono.m)) {
      v[i] = 1;
      placed = true;
    }
  if (!placed) throw WindowTooSmall("monomial outside the window");
  if (!in_lattice_two_local(v, cell.Z)) return false;  // dies: not a cycle on every page
  if (in_lattice_two_local(v, cell.B)) return false;   // dies: a boundary
  if (torsion_exp) {
    // Order of the class: the invariant factors bound the 2-power to test.
    CellHomology h = cell_homology(cell);
    int tmax = 0;
    for (const auto& [g, t] : h.gens) tmax = std::max(tmax, t);
    int order = 0;  // 0 = free
    mpz_class pow2 = 2;
    for (int t = 1; t <= tmax; ++t) {
      Vec scaled(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = v[i] * pow2;
      if (in_lattice_two_local(scaled, cell.B)) {
        order = t;
        break;
      }
      pow2 *= 2;
    }
    *torsion_exp = order;
  }
  return true;
}

std::string chart_text(const PagePresentation& page) {
  std::ostringstream os;
  os << "page E_" << page.page << " window |k|<=" << page.window.kmax
     << " filtration<=" << page.window.filtration_max << " u2<=" << page.window.u2_max << "\n";
  for (const auto& cell : page.cells) {
    os << "deg (" << cell.deg.k << "," << cell.deg.l << ")  filt " << cell.filtration
       << "  sigma^" << cell.sigma_exp << ": ";
    if (!cell.determinate) {
      os << "indeterminate (window edge)\n";
      continue;
    }
    bool first = true;
    for (const auto& [gen, t] : cell.generators) {
      if (!first) os << ", ";
      os << gen.to_string();
      if (t == 0)
        os << " (free)";
      else
        os << " (order 2^" << t << ")";
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::string chart_ascii(const PagePresentation& page) {
  long kmax = page.window.kmax, fmax = page.window.filtration_max;
  long width = 2 * kmax + 1;
  // Each position aggregates a whole sigma-tower of cells.  Digits count the
  // survivors among the decided cells; '?' marks positions where the window
  // decided nothing at all.
  std::vector<std::vector<int>> counts(fmax + 1, std::vector<int>(width, 0)),
      undecided(fmax + 1, std::vector<int>(width, 0));
  for (const auto& cell : page.cells) {
    long col = cell.deg.k + kmax;
    long row = cell.filtration;
    if (col < 0 || col >= width || row < 0 || row > fmax) continue;
    if (!cell.determinate)
      ++undecided[row][col];
    else
      counts[row][col] += static_cast<int>(cell.generators.size());
  }
  std::vector<std::string> rows(fmax + 1, std::string(width, '.'));
  for (long r = 0; r <= fmax; ++r)
    for (long c = 0; c < width; ++c) {
      long towers = kmax - (c - kmax) + 1;  // sigma-tower cells at this degree
      if (undecided[r][c] >= towers) {
        rows[r][c] = '?';
      } else if (counts[r][c] > 0) {
        rows[r][c] = counts[r][c] > 9 ? '+' : static_cast<char>('0' + counts[r][c]);
      }
    }
  std::ostringstream os;
  os << "E_" << page.page << " (rows: filtration, columns: integral degree " << -kmax << ".."
     << kmax << "; digits: decided survivors, ?: nothing decided)\n";
  for (long r = fmax; r >= 0; --r) {
    os << (r < 10 ? " " : "") << r << " |";
    os << rows[r] << "\n";
  }
  os << "   +" << std::string(width, '-') << "\n";
  std::string axis(width, ' ');
  for (long k = -kmax; k <= kmax; k += 8) axis[k + kmax] = '|';
  os << "    " << axis << "\n";
  return os.str();
}

std::string chart_json(const PagePresentation& page) {
  nlohmann::ordered_json j;
  j["page"] = page.page;
  j["window"] = {{"kmax", page.window.kmax},
                 {"filtration_max", page.window.filtration_max},
                 {"u2_max", page.window.u2_max}};
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& cell : page.cells) {
    nlohmann::ordered_json c;
    c["degree_k"] = cell.deg.k;
    c["degree_l"] = cell.deg.l;
    c["filtration"] = cell.filtration;
    c["sigma_exp"] = cell.sigma_exp;
    c["determinate"] = cell.determinate;
    c["generators"] = nlohmann::ordered_json::array();
    for (const auto& [gen, t] : cell.generators) {
      nlohmann::ordered_json g;
      g["element"] = gen.to_string();
      g["order"] = t == 0 ? std::string("free") : "2^" + std::to_string(t);
      c["generators"].push_back(g);
    }
    j["cells"].push_back(c);
  }
  return j.dump(2);
}

}  // namespace cubicalforms
