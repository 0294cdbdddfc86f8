#pragma once

// Sparse multivariate polynomials over the closure. Terms are kept sorted in
// descending graded-lexicographic order with nonzero coefficients, so the
// representation is canonical.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tnorm/error.hpp"
#include "tnorm/finite_field.hpp"

namespace tnorm {

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded lexicographic comparison; variable 0 is the most significant.
inline std::strong_ordering grlex_cmp(const Exponents& a, const Exponents& b) {
  const auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da <=> db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

struct Term {
  Exponents exp;
  ClosureElem coeff;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const ClosureElem& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({Exponents(nvars, 0), c});
    return p;
  }

  static Poly monomial(const Exponents& e, const ClosureElem& c) {
    Poly p(e.size());
    if (!c.is_zero()) p.terms_.push_back({e, c});
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t index, const TowerConfig& tower) {
    Exponents e(nvars, 0);
    e.at(index) = 1;
    return monomial(e, tower.one());
  }

  /// Builds from arbitrary terms: sorts, merges equal monomials, drops zeros.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms, const TowerConfig& tower) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grlex_cmp(a.exp, b.exp) > 0; });
    Poly p(nvars);
    for (auto& t : terms) {
      if (t.exp.size() != nvars) throw DimensionMismatch("monomial arity differs from polynomial arity");
      if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
        p.terms_.back().coeff = tower.add(p.terms_.back().coeff, t.coeff);
        if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      } else if (!t.coeff.is_zero()) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && tnorm::total_degree(terms_[0].exp) == 0); }

  /// Greatest term in grlex order. Precondition: nonzero.
  const Term& leading() const { return terms_.front(); }

  ClosureElem coeff(const Exponents& e) const {
    for (const auto& t : terms_) {
      if (t.exp == e) return t.coeff;
    }
    return {};
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[var]);
    return d;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, tnorm::total_degree(t.exp));
    return d;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    return true;
  }

  // Direct access for the arithmetic below; keeps terms sorted.
  std::vector<Term>& mutable_terms() noexcept { return terms_; }

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

namespace poly {

inline void check_arity(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("polynomials over different variable sets");
}

inline Poly add(const TowerConfig& tower, const Poly& a, const Poly& b) {
  check_arity(a, b);
  Poly out(a.nvars());
  auto& dst = out.mutable_terms();
  const auto& x = a.terms();
  const auto& y = b.terms();
  dst.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && grlex_cmp(x[i].exp, y[j].exp) > 0)) {
      dst.push_back(x[i++]);
    } else if (i == x.size() || grlex_cmp(x[i].exp, y[j].exp) < 0) {
      dst.push_back(y[j++]);
    } else {
      const ClosureElem c = tower.add(x[i].coeff, y[j].coeff);
      if (!c.is_zero()) dst.push_back({x[i].exp, c});
      ++i;
      ++j;
    }
  }
  return out;
}

inline Poly neg(const TowerConfig& tower, Poly a) {
  for (auto& t : a.mutable_terms()) t.coeff = tower.neg(t.coeff);
  return a;
}

inline Poly sub(const TowerConfig& tower, const Poly& a, const Poly& b) { return add(tower, a, neg(tower, b)); }

inline Poly scale(const TowerConfig& tower, Poly a, const ClosureElem& c) {
  if (c.is_zero()) return Poly(a.nvars());
  for (auto& t : a.mutable_terms()) t.coeff = tower.mul(t.coeff, c);
  return a;
}

inline Poly mul_term(const TowerConfig& tower, const Poly& a, const Exponents& e, const ClosureElem& c) {
  Poly out(a.nvars());
  if (c.is_zero()) return out;
  auto& dst = out.mutable_terms();
  dst.reserve(a.size());
  for (const auto& t : a.terms()) {
    Exponents x = t.exp;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += e[k];
    dst.push_back({std::move(x), tower.mul(t.coeff, c)});
  }
  return out;  // monomial multiplication preserves grlex order
}

inline Poly mul(const TowerConfig& tower, const Poly& a, const Poly& b) {
  check_arity(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.nvars());
  if (a.size() > b.size()) return mul(tower, b, a);
  Poly acc(a.nvars());
  for (const auto& t : a.terms()) acc = add(tower, acc, mul_term(tower, b, t.exp, t.coeff));
  return acc;
}

inline bool divides(const Exponents& d, const Exponents& e) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > e[k]) return false;
  }
  return true;
}

struct DivResult {
  Poly quotient;
  Poly remainder;
};

/// Multivariate division by the grlex leading term.
inline DivResult divmod(const TowerConfig& tower, const Poly& a, const Poly& b) {
  check_arity(a, b);
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Term& lb = b.leading();
  const ClosureElem lb_inv = tower.inv(lb.coeff);
  std::vector<Term> quot;
  Poly rem(a.nvars());
  Poly cur = a;
  while (!cur.is_zero()) {
    const Term lt = cur.leading();
    if (divides(lb.exp, lt.exp)) {
      Exponents e = lt.exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] -= lb.exp[k];
      const ClosureElem c = tower.mul(lt.coeff, lb_inv);
      cur = sub(tower, cur, mul_term(tower, b, e, c));
      quot.push_back({std::move(e), c});
    } else {
      rem.mutable_terms().push_back(lt);
      cur.mutable_terms().erase(cur.mutable_terms().begin());
    }
  }
  return {Poly::from_terms(a.nvars(), std::move(quot), tower), std::move(rem)};
}

/// a / b, requiring b | a.
inline Poly exact_div(const TowerConfig& tower, const Poly& a, const Poly& b) {
  auto r = divmod(tower, a, b);
  if (!r.remainder.is_zero()) throw DomainError("inexact polynomial division");
  return std::move(r.quotient);
}

/// Scales so the grlex-leading coefficient is 1.
inline Poly make_monic(const TowerConfig& tower, Poly a) {
  if (a.is_zero()) return a;
  return scale(tower, std::move(a), tower.inv(a.leading().coeff));
}

namespace detail {

// Variables with nonzero exponent somewhere in a or b.
inline std::vector<std::size_t> active_vars(const Poly& a, const Poly& b) {
  std::vector<bool> seen(a.nvars(), false);
  for (const Poly* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      for (std::size_t k = 0; k < t.exp.size(); ++k) {
        if (t.exp[k]) seen[k] = true;
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (seen[k]) out.push_back(k);
  }
  return out;
}

using Dense = std::vector<ClosureElem>;  // low degree first

inline void trim(Dense& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline Dense to_dense(const Poly& a, std::size_t var) {
  Dense d(a.is_zero() ? 0 : a.degree_in(var) + 1);
  for (const auto& t : a.terms()) d[t.exp[var]] = t.coeff;
  return d;
}

inline Poly from_dense(const Dense& d, std::size_t nvars, std::size_t var, const TowerConfig& tower) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].is_zero()) continue;
    Exponents e(nvars, 0);
    e[var] = static_cast<std::uint32_t>(i);
    terms.push_back({std::move(e), d[i]});
  }
  return Poly::from_terms(nvars, std::move(terms), tower);
}

inline Dense dense_rem(const TowerConfig& tower, Dense a, const Dense& b) {
  const ClosureElem inv = tower.inv(b.back());
  const std::size_t db = b.size() - 1;
  trim(a);
  while (a.size() > db) {
    const std::size_t shift = a.size() - 1 - db;
    const ClosureElem c = tower.neg(tower.mul(a.back(), inv));
    for (std::size_t i = 0; i <= db; ++i) {
      if (!b[i].is_zero()) a[shift + i] = tower.add(a[shift + i], tower.mul(c, b[i]));
    }
    a.back() = {};
    trim(a);
  }
  return a;
}

inline Dense dense_gcd(const TowerConfig& tower, Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = dense_rem(tower, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Univariate view in `var` with coefficients free of `var`.
inline std::vector<Poly> split(const Poly& a, std::size_t var, const TowerConfig& tower) {
  std::vector<std::vector<Term>> buckets(a.is_zero() ? 0 : a.degree_in(var) + 1);
  for (const auto& t : a.terms()) {
    Exponents e = t.exp;
    const auto d = e[var];
    e[var] = 0;
    buckets[d].push_back({std::move(e), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(a.nvars(), std::move(b), tower));
  return out;
}

inline Poly join(const std::vector<Poly>& coeffs, std::size_t var, std::size_t nvars, const TowerConfig& tower) {
  std::vector<Term> terms;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    for (const auto& t : coeffs[d].terms()) {
      Exponents e = t.exp;
      e[var] = static_cast<std::uint32_t>(d);
      terms.push_back({std::move(e), t.coeff});
    }
  }
  return Poly::from_terms(nvars, std::move(terms), tower);
}

}  // namespace detail

Poly gcd(const TowerConfig& tower, const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const TowerConfig& tower, const std::vector<Poly>& coeffs, std::size_t nvars) {
  Poly g(nvars);
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(tower, g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline std::vector<Poly> primitive_part(const TowerConfig& tower, std::vector<Poly> coeffs, std::size_t nvars) {
  const Poly c = content_in(tower, coeffs, nvars);
  if (c.is_zero() || c.is_constant()) return coeffs;
  for (auto& x : coeffs) {
    if (!x.is_zero()) x = exact_div(tower, x, c);
  }
  return coeffs;
}

inline void trim_coeffs(std::vector<Poly>& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

// Pseudo-remainder of a by b as polynomials in the split variable.
inline std::vector<Poly> prem(const TowerConfig& tower, std::vector<Poly> a, const std::vector<Poly>& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  trim_coeffs(a);
  while (a.size() > db) {
    const std::size_t shift = a.size() - 1 - db;
    const Poly la = a.back();
    for (auto& c : a) c = mul(tower, c, lb);
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = sub(tower, a[shift + i], mul(tower, la, b[i]));
    }
    trim_coeffs(a);
  }
  return a;
}

}  // namespace detail

/// Greatest common divisor, normalized to grlex-leading coefficient 1;
/// gcd(0, 0) = 0.
inline Poly gcd(const TowerConfig& tower, const Poly& a, const Poly& b) {
  check_arity(a, b);
  const std::size_t n = a.nvars();
  if (a.is_zero()) return make_monic(tower, b);
  if (b.is_zero()) return make_monic(tower, a);
  const auto vars = detail::active_vars(a, b);
  if (vars.empty()) return Poly::constant(n, tower.one());
  if (vars.size() == 1) {
    const std::size_t v = vars.front();
    auto g = detail::dense_gcd(tower, detail::to_dense(a, v), detail::to_dense(b, v));
    return make_monic(tower, detail::from_dense(g, n, v, tower));
  }
  // Primitive PRS in the last active variable over k[remaining variables].
  const std::size_t v = vars.back();
  auto ca = detail::split(a, v, tower);
  auto cb = detail::split(b, v, tower);
  const Poly cont = gcd(tower, detail::content_in(tower, ca, n), detail::content_in(tower, cb, n));
  ca = detail::primitive_part(tower, std::move(ca), n);
  cb = detail::primitive_part(tower, std::move(cb), n);
  if (ca.size() < cb.size()) std::swap(ca, cb);
  while (cb.size() > 1) {
    auto r = detail::prem(tower, ca, cb);
    ca = std::move(cb);
    cb = r.empty() ? std::move(r) : detail::primitive_part(tower, std::move(r), n);
    if (cb.empty()) break;
  }
  Poly g = cb.empty() ? detail::join(ca, v, n, tower) : Poly::constant(n, tower.one());
  return make_monic(tower, mul(tower, cont, g));
}

}  // namespace poly

}  // namespace tnorm
