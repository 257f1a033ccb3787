#include "cubicalforms/series.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <set>
#include <thread>

namespace cubicalforms {

namespace {

using TermMap = std::map<ExpKey, Scalar, std::greater<ExpKey>>;

void multiply_into(TermMap& acc, const Poly& a, const Poly& b) {
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) acc[expkey::mul(ka, kb)] += ca * cb;
}

Poly collect(RingPtr ring, TermMap& acc) {
  std::vector<Poly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) terms.emplace_back(k, std::move(c));
  return Poly::from_sorted_terms(std::move(ring), std::move(terms));
}

std::vector<std::size_t> resolve_series_vars(const PolyRing& ring,
                                             const std::vector<std::string>& names) {
  std::set<std::string> seen;
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw MathError("duplicate series variable: " + n);
    idx.push_back(ring.index_of(n));
  }
  return idx;
}

}  // namespace

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CUBICALFORMS_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1) return hw;
  return static_cast<unsigned>(std::min<long>(v, 1024));
}

TSeries TSeries::zero(RingPtr ring, const std::vector<std::string>& series_vars, int order) {
  if (order < 0) throw MathError("negative truncation order");
  TSeries s;
  s.series_idx_ = resolve_series_vars(*ring, series_vars);
  s.ring_ = std::move(ring);
  s.series_names_ = series_vars;
  s.order_ = order;
  return s;
}

TSeries TSeries::like(const TSeries& model, int order) {
  TSeries s;
  s.ring_ = model.ring_;
  s.series_names_ = model.series_names_;
  s.series_idx_ = model.series_idx_;
  s.order_ = order;
  return s;
}

TSeries TSeries::constant(RingPtr ring, const std::vector<std::string>& series_vars, int order,
                          const Scalar& c) {
  TSeries s = zero(std::move(ring), series_vars, order);
  if (!c.is_zero() && order > 0) s.slices_[0] = Poly::constant(s.ring_, c);
  return s;
}

TSeries TSeries::variable(RingPtr ring, const std::vector<std::string>& series_vars, int order,
                          const std::string& name) {
  TSeries s = zero(ring, series_vars, order);
  Poly v = Poly::variable(std::move(ring), name);
  int d = s.series_degree_of_key(v.terms().front().first);
  if (d < order) s.slices_[d] = std::move(v);
  return s;
}

TSeries TSeries::from_poly(const Poly& p, const std::vector<std::string>& series_vars,
                           int order) {
  if (!p.ring()) throw MathError("polynomial without ring");
  TSeries s = zero(p.ring(), series_vars, order);
  std::map<int, std::vector<Poly::Term>> buckets;
  for (const auto& t : p.terms()) {
    int d = s.series_degree_of_key(t.first);
    if (d < order) buckets[d].push_back(t);
  }
  for (auto& [d, terms] : buckets)
    s.slices_[d] = Poly::from_sorted_terms(s.ring_, std::move(terms));
  return s;
}

int TSeries::series_degree_of_key(ExpKey key) const {
  int d = 0;
  for (std::size_t i : series_idx_) d += static_cast<int>(expkey::exponent(key, i));
  return d;
}

int TSeries::valuation() const {
  if (slices_.empty()) return order_;
  return slices_.begin()->first;
}

Poly TSeries::homog(int d) const {
  if (d >= order_) throw BeyondTruncation("slice " + std::to_string(d) +
                                          " is beyond truncation order " +
                                          std::to_string(order_));
  auto it = slices_.find(d);
  if (it == slices_.end()) return Poly::zero(ring_);
  return it->second;
}

Poly TSeries::coefficient(const std::vector<unsigned>& series_exps) const {
  if (series_exps.size() != series_idx_.size())
    throw VariableMismatch("exponent vector length does not match series variables");
  int total = 0;
  for (unsigned e : series_exps) total += static_cast<int>(e);
  if (total >= order_)
    throw BeyondTruncation("series monomial of degree " + std::to_string(total) +
                           " is beyond truncation order " + std::to_string(order_));
  auto it = slices_.find(total);
  if (it == slices_.end()) return Poly::zero(ring_);

  std::vector<Poly::Term> out;
  for (const auto& [key, c] : it->second.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < series_idx_.size(); ++i)
      if (expkey::exponent(key, series_idx_[i]) != series_exps[i]) {
        match = false;
        break;
      }
    if (!match) continue;
    std::vector<unsigned> exps = expkey::unpack(key, ring_->size());
    for (std::size_t i : series_idx_) exps[i] = 0;
    out.emplace_back(expkey::pack(exps), c);
  }
  return Poly::from_sorted_terms(ring_, std::move(out));
}

void TSeries::check_compatible(const TSeries& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
    throw VariableMismatch("series over different variable lists");
  if (series_names_ != o.series_names_)
    throw VariableMismatch("series with different series-variable sets");
}

TSeries TSeries::operator-() const {
  TSeries s = *this;
  for (auto& [d, p] : s.slices_) p = -p;
  return s;
}

TSeries TSeries::operator+(const TSeries& o) const {
  check_compatible(o);
  TSeries out = like(*this, std::min(order_, o.order_));
  for (const auto& [d, p] : slices_) {
    if (d >= out.order_) break;
    out.slices_[d] = p;
  }
  for (const auto& [d, p] : o.slices_) {
    if (d >= out.order_) break;
    auto it = out.slices_.find(d);
    if (it == out.slices_.end()) {
      out.slices_[d] = p;
    } else {
      it->second += p;
      if (it->second.is_zero()) out.slices_.erase(it);
    }
  }
  return out;
}

TSeries TSeries::operator-(const TSeries& o) const { return *this + (-o); }

TSeries TSeries::operator*(const TSeries& o) const { return mul(o, nullptr); }

TSeries TSeries::mul(const TSeries& o, const Reduction* red) const {
  check_compatible(o);
  int n = std::min(order_, o.order_);
  TSeries ared, bred;
  if (red) {
    ared = this->reduced(*red);
    bred = o.reduced(*red);
  }
  const TSeries& a = red ? ared : *this;
  const TSeries& b = red ? bred : o;
  TSeries out = like(*this, n);
  if (a.slices_.empty() || b.slices_.empty()) return out;

  auto compute_slice = [&](int d) -> Poly {
    TermMap acc;
    for (const auto& [da, pa] : a.slices_) {
      if (da > d) break;
      auto it = b.slices_.find(d - da);
      if (it == b.slices_.end()) continue;
      multiply_into(acc, pa, it->second);
    }
    Poly p = collect(ring_, acc);
    if (red) p = reduce_mod_ideal(p, *red);
    return p;
  };

  int lo = a.valuation() + b.valuation();
  std::vector<int> degrees;
  for (int d = lo; d < n; ++d) degrees.push_back(d);
  std::vector<Poly> results(degrees.size());

  unsigned threads = std::min<unsigned>(thread_cap(), degrees.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < degrees.size(); ++i) results[i] = compute_slice(degrees[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t i = t; i < degrees.size(); i += threads)
          results[i] = compute_slice(degrees[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (!results[i].is_zero()) out.slices_[degrees[i]] = std::move(results[i]);
  return out;
}

TSeries TSeries::scaled(const Scalar& c) const {
  TSeries out = like(*this, order_);
  if (c.is_zero()) return out;
  for (const auto& [d, p] : slices_) out.slices_[d] = p.scaled(c);
  return out;
}

TSeries TSeries::mul_poly(const Poly& p) const {
  return mul(from_poly(p, series_names_, order_), nullptr);
}

TSeries TSeries::pow(unsigned n, const Reduction* red) const {
  TSeries acc = constant(ring_, series_names_, order_, Scalar(1));
  for (unsigned i = 0; i < n; ++i) acc = acc.mul(*this, red);
  return acc;
}

TSeries TSeries::truncated(int new_order) const {
  if (new_order > order_)
    throw BeyondTruncation("cannot extend a series of order " + std::to_string(order_) +
                           " to order " + std::to_string(new_order));
  TSeries out = like(*this, new_order);
  for (const auto& [d, p] : slices_) {
    if (d >= new_order) break;
    out.slices_[d] = p;
  }
  return out;
}

TSeries TSeries::invert_unit() const {
  if (order_ < 1) throw NonUnitConstantTerm("series of order 0 has no known constant term");
  auto it = slices_.find(0);
  if (it == slices_.end() || !it->second.is_constant())
    throw NonUnitConstantTerm("constant term is not an invertible scalar");
  Scalar c = it->second.constant_term();
  Scalar cinv;
  try {
    cinv = c.inverse();
  } catch (const MathError&) {
    throw NonUnitConstantTerm("constant term " + c.to_string() + " is not invertible");
  }
  TSeries one = constant(ring_, series_names_, order_, Scalar(1));
  TSeries r = one - this->scaled(cinv);  // valuation >= 1
  TSeries acc = one;
  for (int pass = 1; pass < order_; ++pass) acc = one + r * acc;
  return acc.scaled(cinv);
}

TSeries TSeries::substitute(const std::map<std::string, TSeries>& assign) const {
  if (series_names_.empty()) throw MathError("substitution into a series without variables");
  for (const auto& [name, value] : assign) {
    (void)value;
    if (std::find(series_names_.begin(), series_names_.end(), name) == series_names_.end())
      throw UnknownVariable("assignment for non-series variable: " + name);
  }
  std::vector<const TSeries*> values;
  values.reserve(series_names_.size());
  for (const auto& name : series_names_) {
    auto it = assign.find(name);
    if (it == assign.end()) throw MathError("series variable " + name + " is unassigned");
    values.push_back(&it->second);
  }

  const TSeries& model = *values.front();
  int result_order = order_;
  for (const TSeries* v : values) {
    model.check_compatible(*v);
    if (v->valuation() < 1)
      throw NonPositiveValuation("substituted series must have positive valuation");
    result_order = std::min(result_order, v->order());
  }

  RingPtr target = model.ring_;
  // Parameter variables carry over by name and must stay parameters.
  std::vector<int> param_map(ring_->size(), -1);
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (std::find(series_idx_.begin(), series_idx_.end(), i) != series_idx_.end()) continue;
    std::size_t j = target->index_of(ring_->name(i));
    if (std::find(model.series_idx_.begin(), model.series_idx_.end(), j) !=
        model.series_idx_.end())
      throw MathError("parameter variable " + ring_->name(i) +
                      " collides with a series variable of the substitution target");
    param_map[i] = static_cast<int>(j);
  }

  // Group source terms by their series-exponent pattern.
  std::map<std::vector<unsigned>, TermMap> groups;
  for (const auto& [d, p] : slices_) {
    if (d >= result_order) break;
    for (const auto& [key, c] : p.terms()) {
      std::vector<unsigned> pattern(series_idx_.size());
      for (std::size_t i = 0; i < series_idx_.size(); ++i)
        pattern[i] = expkey::exponent(key, series_idx_[i]);
      std::vector<unsigned> param_exps(target->size(), 0);
      for (std::size_t i = 0; i < ring_->size(); ++i)
        if (param_map[i] >= 0)
          param_exps[static_cast<std::size_t>(param_map[i])] += expkey::exponent(key, i);
      groups[pattern][expkey::pack(param_exps)] += c;
    }
  }

  std::vector<TSeries> powers;  // cache keyed through the map below
  std::map<std::vector<unsigned>, std::size_t> power_index;
  std::vector<TSeries> trimmed;
  trimmed.reserve(values.size());
  for (const TSeries* v : values) trimmed.push_back(v->truncated(std::min(result_order, v->order())));

  std::function<std::size_t(const std::vector<unsigned>&)> power_of =
      [&](const std::vector<unsigned>& pattern) -> std::size_t {
    auto it = power_index.find(pattern);
    if (it != power_index.end()) return it->second;
    TSeries result;
    bool all_zero = true;
    for (unsigned e : pattern)
      if (e > 0) all_zero = false;
    if (all_zero) {
      result = TSeries::constant(target, model.series_names_, result_order, Scalar(1));
    } else {
      std::vector<unsigned> prev = pattern;
      std::size_t i = 0;
      while (prev[i] == 0) ++i;
      --prev[i];
      result = powers[power_of(prev)] * trimmed[i];
    }
    powers.push_back(std::move(result));
    power_index[pattern] = powers.size() - 1;
    return powers.size() - 1;
  };

  TSeries out = TSeries::zero(target, model.series_names_, result_order);
  for (auto& [pattern, acc] : groups) {
    Poly coeff = collect(target, acc);
    if (coeff.is_zero()) continue;
    out += powers[power_of(pattern)].mul_poly(coeff);
  }
  return out;
}

TSeries TSeries::renamed(RingPtr target, const std::vector<std::string>& target_series_vars,
                         const std::map<std::string, std::string>& renames) const {
  TSeries out = zero(target, target_series_vars, order_);
  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::vector<std::size_t> var_map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    const std::string& name = ring_->name(i);
    auto it = renames.find(name);
    const std::string& tn = it == renames.end() ? name : it->second;
    var_map[i] = target->has(tn) ? target->index_of(tn) : kMissing;
  }
  std::map<int, TermMap> buckets;
  for (const auto& [d, p] : slices_) {
    for (const auto& [key, c] : p.terms()) {
      std::vector<unsigned> exps(target->size(), 0);
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        unsigned e = expkey::exponent(key, i);
        if (e == 0) continue;
        if (var_map[i] == kMissing) throw UnknownVariable("unknown variable: " + ring_->name(i));
        exps[var_map[i]] += e;
      }
      ExpKey tkey = expkey::pack(exps);
      int td = out.series_degree_of_key(tkey);
      if (td < order_) buckets[td][tkey] += c;
    }
  }
  for (auto& [d, acc] : buckets) {
    Poly p = collect(target, acc);
    if (!p.is_zero()) out.slices_[d] = std::move(p);
  }
  return out;
}

TSeries TSeries::reduced(const Reduction& red) const {
  TSeries out = like(*this, order_);
  for (const auto& [d, p] : slices_) {
    Poly r = reduce_mod_ideal(p, red);
    if (!r.is_zero()) out.slices_[d] = std::move(r);
  }
  return out;
}

bool TSeries::operator==(const TSeries& o) const {
  if (!ring_ || !o.ring_) return slices_.empty() && o.slices_.empty() && order_ == o.order_;
  return ring_->same_as(*o.ring_) && series_names_ == o.series_names_ && order_ == o.order_ &&
         slices_ == o.slices_;
}

std::string TSeries::to_string() const {
  std::string out;
  if (slices_.empty()) {
    out = "0";
  } else {
    bool first = true;
    for (const auto& [d, p] : slices_) {
      (void)d;
      for (const auto& [key, c] : p.terms()) {
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
        std::string mon;
        for (std::size_t i = 0; i < ring_->size(); ++i) {
          unsigned e = expkey::exponent(key, i);
          if (e == 0) continue;
          if (!mon.empty()) mon += "*";
          mon += ring_->name(i);
          if (e > 1) mon += "^" + std::to_string(e);
        }
        bool unit = shown.is_one();
        if (mon.empty()) {
          out += shown.to_string();
        } else if (unit) {
          out += mon;
        } else {
          out += shown.to_string() + "*" + mon;
        }
        first = false;
      }
    }
  }
  return out + " + O(" + std::to_string(order_) + ")";
}

std::ostream& operator<<(std::ostream& os, const TSeries& s) { return os << s.to_string(); }

TSeries graded_divide(const TSeries& num, const TSeries& den, const Reduction* red) {
  if (!num.ring() || !den.ring() || !num.ring()->same_as(*den.ring()) ||
      num.series_vars() != den.series_vars())
    throw VariableMismatch("series over different variable lists");
  TSeries n = red ? num.reduced(*red) : num;
  TSeries d = red ? den.reduced(*red) : den;
  if (d.is_zero()) throw DivisionByZero("denominator is zero to its truncation order");

  int dv = d.valuation();
  int result_order = std::min(n.order(), d.order()) - dv;
  TSeries out = TSeries::zero(num.ring(), num.series_vars(), std::max(result_order, 0));
  if (n.is_zero()) return out;
  if (n.valuation() < dv)
    throw NotDivisible("numerator term " + n.homog(n.valuation()).to_string() +
                       " lies below the denominator valuation " + std::to_string(dv));

  Poly w = d.homog(dv);
  std::map<int, Poly> q;
  for (int e = n.valuation() - dv; e < result_order; ++e) {
    Poly residual = n.homog(dv + e);
    for (const auto& [ep, qp] : q) {
      Poly ds = d.homog(dv + e - ep);
      if (ds.is_zero()) continue;
      Poly prod = qp * ds;
      if (red) prod = reduce_mod_ideal(prod, *red);
      residual -= prod;
    }
    if (red) residual = reduce_mod_ideal(residual, *red);
    if (residual.is_zero()) continue;
    q[e] = divide_exact(residual, w, red);
  }
  for (auto& [e, p] : q)
    if (!p.is_zero()) out += TSeries::from_poly(p, num.series_vars(), out.order());
  return out;
}

TSeries divided_difference(const TSeries& f, RingPtr target, const std::string& var_a,
                           const std::string& var_b) {
  if (f.series_vars().size() != 1)
    throw MathError("divided difference requires a univariate series");
  std::size_t ia = target->index_of(var_a);
  std::size_t ib = target->index_of(var_b);
  if (ia == ib) throw MathError("divided difference requires two distinct variables");

  int result_order = std::max(f.order() - 1, 0);
  TSeries out = TSeries::zero(target, {var_a, var_b}, result_order);

  const PolyRing& src = *f.ring();
  std::size_t sx = src.index_of(f.series_vars()[0]);
  std::vector<int> param_map(src.size(), -1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (i == sx) continue;
    param_map[i] = static_cast<int>(target->index_of(src.name(i)));
  }

  std::map<int, TermMap> buckets;
  for (const auto& [d, p] : f.slices()) {
    if (d == 0) continue;
    for (const auto& [key, c] : p.terms()) {
      unsigned n = expkey::exponent(key, sx);
      std::vector<unsigned> base(target->size(), 0);
      for (std::size_t i = 0; i < src.size(); ++i)
        if (param_map[i] >= 0)
          base[static_cast<std::size_t>(param_map[i])] += expkey::exponent(key, i);
      for (unsigned i = 0; i + 1 <= n; ++i) {
        std::vector<unsigned> exps = base;
        exps[ia] += i;
        exps[ib] += n - 1 - i;
        buckets[static_cast<int>(n) - 1][expkey::pack(exps)] += c;
      }
    }
  }
  for (auto& [d, acc] : buckets) {
    if (d >= result_order) continue;
    Poly p = collect(target, acc);
    if (!p.is_zero()) out += TSeries::from_poly(p, out.series_vars(), result_order);
  }
  return out;
}

}  // namespace cubicalforms
