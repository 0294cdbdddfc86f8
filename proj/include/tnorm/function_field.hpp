#pragma once

// Rational function fields K = F(t_1, ..., t_n) over the base k with the Gauss
// valuation: constants are trivially valued and each variable carries an
// assigned magnitude 2^q. Linear algebra "over k" goes through coordinatize,
// which writes a finite family over a common denominator in a k-basis of
// (constant basis) x (monomials).

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tnorm/error.hpp"
#include "tnorm/finite_field.hpp"
#include "tnorm/linear_algebra.hpp"
#include "tnorm/magnitude.hpp"
#include "tnorm/polynomial.hpp"

namespace tnorm {

enum class Side { K, L };

inline const char* side_name(Side s) { return s == Side::K ? "K" : "L"; }

/// The base field k: the whole closure (level 0) or the finite field of a lattice level.
struct BaseField {
  std::uint32_t level = 0;

  static BaseField closure() { return {0}; }
  static BaseField finite(std::uint32_t level) { return {level}; }
  bool is_closure() const noexcept { return level == 0; }
  friend bool operator==(const BaseField&, const BaseField&) = default;
};

struct Variable {
  std::string name;
  mpq_class exponent;  // |variable| = 2^exponent
};

/// Basis of the constant field of an extension over k, with the trace-dual
/// basis used to read off k-coordinates.
class ConstantBasis {
 public:
  ConstantBasis() = default;

  ConstantBasis(const TowerConfig& tower, BaseField base, std::uint32_t constant_level) : base_(base) {
    if (base.is_closure()) {
      basis_ = {tower.one()};
      dual_ = basis_;
      return;
    }
    if (!tower.is_level(base.level) || !tower.is_level(constant_level) || constant_level % base.level != 0) {
      throw LatticeError("constant level must be a lattice multiple of the base level");
    }
    degree_ = constant_level / base.level;
    const ClosureElem g = tower.generator(constant_level);
    for (std::uint32_t j = 0; j < degree_; ++j) basis_.push_back(tower.pow(g, j));
    if (degree_ == 1) {
      basis_ = {tower.one()};
      dual_ = basis_;
      return;
    }
    // Gram matrix of the trace form; dual basis = G^{-1} basis.
    Matrix gram(degree_, degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) {
      for (std::uint32_t j = 0; j < degree_; ++j) gram(i, j) = trace(tower, tower.mul(basis_[i], basis_[j]));
    }
    dual_.assign(degree_, tower.zero());
    for (std::uint32_t j = 0; j < degree_; ++j) {
      Vector e(degree_, tower.zero());
      e[j] = tower.one();
      const auto sol = ff_solve_linear(tower, gram, e);
      if (!sol.consistent) throw Error("degenerate trace form");
      for (std::uint32_t i = 0; i < degree_; ++i) {
        dual_[j] = tower.add(dual_[j], tower.mul(sol.solution[i], basis_[i]));
      }
    }
  }

  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<ClosureElem>& basis() const noexcept { return basis_; }

  /// k-coordinates of a constant.
  void coordinates(const TowerConfig& tower, const ClosureElem& a, ClosureElem* out) const {
    if (basis_.size() == 1) {
      *out = a;
      return;
    }
    for (std::size_t j = 0; j < basis_.size(); ++j) out[j] = trace(tower, tower.mul(a, dual_[j]));
  }

 private:
  ClosureElem trace(const TowerConfig& tower, const ClosureElem& x) const {
    // Tr_{F_{p^c}/F_{p^b}}(x) = sum_i x^{p^{b i}}
    ClosureElem acc = tower.zero();
    ClosureElem cur = x;
    const std::uint64_t frob = detail::ipow(tower.prime(), base_.level);
    for (std::uint32_t i = 0; i < degree_; ++i) {
      acc = tower.add(acc, cur);
      cur = tower.pow(cur, frob);
    }
    return acc;
  }

  BaseField base_;
  std::uint32_t degree_ = 1;
  std::vector<ClosureElem> basis_;
  std::vector<ClosureElem> dual_;
};

class ExtensionDescriptor {
 public:
  /// constant_level: lattice level of the constant field when the base is
  /// finite; ignored (constants range over the closure) when it is the closure.
  ExtensionDescriptor(std::shared_ptr<const TowerConfig> tower, Side side, std::vector<Variable> variables,
                      BaseField base = BaseField::closure(), std::uint32_t constant_level = 0)
      : tower_(std::move(tower)), side_(side), vars_(std::move(variables)), base_(base) {
    if (!tower_) throw InvalidConfig("descriptor needs a tower");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name.empty()) throw InvalidConfig("empty variable name");
      if (sgn(vars_[i].exponent) == 0) {
        throw InvalidConfig("variable " + vars_[i].name + " needs a nonzero magnitude exponent");
      }
      vars_[i].exponent.canonicalize();
      for (std::size_t j = 0; j < i; ++j) {
        if (vars_[j].name == vars_[i].name) throw InvalidConfig("duplicate variable " + vars_[i].name);
      }
    }
    if (base_.is_closure()) {
      constant_level_ = 0;
    } else {
      if (!tower_->is_level(base_.level)) throw LatticeError("base level not in the lattice");
      constant_level_ = constant_level == 0 ? base_.level : constant_level;
      if (!tower_->is_level(constant_level_) || constant_level_ % base_.level != 0) {
        throw LatticeError("constant level must be a lattice multiple of the base level");
      }
    }
    constants_ = ConstantBasis(*tower_, base_, constant_level_);
    // Integer weights over a common denominator so grades are exact int64 sums.
    mpz_class den = 1;
    for (const auto& v : vars_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.exponent.get_den_mpz_t());
    weight_den_ = den.get_si();
    for (const auto& v : vars_) {
      const mpq_class w = v.exponent * den;
      weights_.push_back(mpz_class(w.get_num()).get_si());
    }
  }

  const TowerConfig& tower() const noexcept { return *tower_; }
  const std::shared_ptr<const TowerConfig>& tower_ptr() const noexcept { return tower_; }
  Side side() const noexcept { return side_; }
  const std::vector<Variable>& variables() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  BaseField base() const noexcept { return base_; }
  /// 0 when constants range over the closure.
  std::uint32_t constant_level() const noexcept { return constant_level_; }
  const ConstantBasis& constants() const noexcept { return constants_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name == name) return i;
    }
    return std::nullopt;
  }

  /// Grade of a monomial: log2 of its magnitude times grade_denominator().
  std::int64_t grade(const Exponents& e) const noexcept {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < e.size(); ++i) g += static_cast<std::int64_t>(e[i]) * weights_[i];
    return g;
  }
  std::int64_t grade_denominator() const noexcept { return weight_den_; }

  Magnitude magnitude_of_grade(std::int64_t g) const { return Magnitude::pow2(mpq_class(g, weight_den_)); }

  bool admits_constant(const ClosureElem& c) const {
    return constant_level_ == 0 || tower_->in_level(c.raw, constant_level_);
  }

 private:
  std::shared_ptr<const TowerConfig> tower_;
  Side side_;
  std::vector<Variable> vars_;
  BaseField base_;
  std::uint32_t constant_level_ = 0;
  ConstantBasis constants_;
  std::vector<std::int64_t> weights_;
  std::int64_t weight_den_ = 1;
};

using DescriptorPtr = std::shared_ptr<const ExtensionDescriptor>;

/// Max grade over the monomials of f (f nonzero).
inline std::int64_t max_grade(const ExtensionDescriptor& desc, const Poly& f) {
  std::int64_t best = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    const auto g = desc.grade(t.exp);
    if (first || g > best) best = g;
    first = false;
  }
  return best;
}

/// Gauss value: the largest monomial magnitude; coefficients are trivially valued.
inline Magnitude gauss_value(const ExtensionDescriptor& desc, const Poly& f) {
  if (f.is_zero()) return Magnitude::zero();
  return desc.magnitude_of_grade(max_grade(desc, f));
}

/// Element of K: numerator/denominator in lowest terms with the denominator's
/// grlex-leading coefficient equal to 1.
class TowerElem {
 public:
  TowerElem() = default;

  static TowerElem zero(DescriptorPtr desc) {
    const auto n = desc->nvars();
    const auto& tower = desc->tower();
    return TowerElem(std::move(desc), Poly(n), Poly::constant(n, tower.one()));
  }

  static TowerElem constant(DescriptorPtr desc, const ClosureElem& c) {
    const auto n = desc->nvars();
    check_constant(*desc, c);
    const auto& tower = desc->tower();
    return TowerElem(std::move(desc), Poly::constant(n, c), Poly::constant(n, tower.one()));
  }

  static TowerElem one(DescriptorPtr desc) {
    const auto& tower = desc->tower();
    return constant(std::move(desc), tower.one());
  }

  static TowerElem variable(DescriptorPtr desc, std::size_t index) {
    const auto n = desc->nvars();
    const auto& tower = desc->tower();
    return TowerElem(desc, Poly::variable(n, index, tower), Poly::constant(n, tower.one()));
  }

  static TowerElem polynomial(DescriptorPtr desc, Poly num) {
    const auto n = desc->nvars();
    const auto& tower = desc->tower();
    return fraction(std::move(desc), std::move(num), Poly::constant(n, tower.one()));
  }

  /// num/den brought to canonical form.
  static TowerElem fraction(DescriptorPtr desc, Poly num, Poly den) {
    if (!desc) throw InvalidConfig("element without descriptor");
    if (num.nvars() != desc->nvars() || den.nvars() != desc->nvars()) {
      throw DimensionMismatch("polynomial arity differs from the descriptor");
    }
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    for (const Poly* p : {&num, &den}) {
      for (const auto& t : p->terms()) check_constant(*desc, t.coeff);
    }
    const auto& tower = desc->tower();
    if (num.is_zero()) return zero(std::move(desc));
    if (!den.is_constant()) {
      const Poly g = poly::gcd(tower, num, den);
      if (!g.is_constant()) {
        num = poly::exact_div(tower, num, g);
        den = poly::exact_div(tower, den, g);
      }
    }
    const ClosureElem lc_inv = tower.inv(den.leading().coeff);
    num = poly::scale(tower, std::move(num), lc_inv);
    den = poly::scale(tower, std::move(den), lc_inv);
    return TowerElem(std::move(desc), std::move(num), std::move(den));
  }

  const DescriptorPtr& descriptor() const noexcept { return desc_; }
  const ExtensionDescriptor& desc() const { return *desc_; }
  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend bool operator==(const TowerElem& a, const TowerElem& b) {
    return a.desc_ == b.desc_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  TowerElem(DescriptorPtr desc, Poly num, Poly den) : desc_(std::move(desc)), num_(std::move(num)), den_(std::move(den)) {}

  static void check_constant(const ExtensionDescriptor& desc, const ClosureElem& c) {
    if (!desc.admits_constant(c)) {
      throw LatticeError("coefficient outside the constant field of side " + std::string(side_name(desc.side())));
    }
  }

  DescriptorPtr desc_;
  Poly num_;
  Poly den_;
};

inline void require_same(const TowerElem& a, const TowerElem& b) {
  if (a.descriptor() != b.descriptor()) throw SideMismatch("elements of different extensions");
}

inline TowerElem operator+(const TowerElem& a, const TowerElem& b) {
  require_same(a, b);
  const auto& tower = a.desc().tower();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.denominator() == b.denominator()) {
    return TowerElem::fraction(a.descriptor(), poly::add(tower, a.numerator(), b.numerator()), a.denominator());
  }
  Poly num = poly::add(tower, poly::mul(tower, a.numerator(), b.denominator()),
                       poly::mul(tower, b.numerator(), a.denominator()));
  return TowerElem::fraction(a.descriptor(), std::move(num), poly::mul(tower, a.denominator(), b.denominator()));
}

inline TowerElem operator-(const TowerElem& a) {
  const auto& tower = a.desc().tower();
  return TowerElem::fraction(a.descriptor(), poly::neg(tower, a.numerator()), a.denominator());
}

inline TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }

inline TowerElem operator*(const TowerElem& a, const TowerElem& b) {
  require_same(a, b);
  const auto& tower = a.desc().tower();
  if (a.is_zero() || b.is_zero()) return TowerElem::zero(a.descriptor());
  return TowerElem::fraction(a.descriptor(), poly::mul(tower, a.numerator(), b.numerator()),
                             poly::mul(tower, a.denominator(), b.denominator()));
}

inline TowerElem inverse(const TowerElem& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of zero in a function field");
  return TowerElem::fraction(a.descriptor(), a.denominator(), a.numerator());
}

inline TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a * inverse(b); }

inline TowerElem scale(const TowerElem& a, const ClosureElem& c) {
  const auto& tower = a.desc().tower();
  return TowerElem::fraction(a.descriptor(), poly::scale(tower, a.numerator(), c), a.denominator());
}

inline TowerElem power(const TowerElem& a, unsigned n) {
  TowerElem r = TowerElem::one(a.descriptor());
  for (unsigned i = 0; i < n; ++i) r = r * a;
  return r;
}

/// |x| under the Gauss valuation.
inline Magnitude value(const TowerElem& x) {
  if (x.is_zero()) return Magnitude::zero();
  const auto& d = x.desc();
  return d.magnitude_of_grade(max_grade(d, x.numerator()) - max_grade(d, x.denominator()));
}

/// A finite family written over a common denominator in a k-basis.
/// Column c stands for constants().basis()[c % s] * monomials[c / s] / denominator,
/// where s is the size of the constant basis.
struct Coordinates {
  Poly denominator;
  std::vector<Exponents> monomials;  // ascending grlex
  std::size_t constant_dim = 1;
  std::vector<std::int64_t> grades;  // per column
  Matrix matrix;                     // one row per element

  std::size_t columns() const noexcept { return matrix.cols(); }
};

inline Poly lcm(const TowerConfig& tower, const Poly& a, const Poly& b) {
  if (a == b) return a;
  const Poly g = poly::gcd(tower, a, b);
  return poly::make_monic(tower, poly::mul(tower, a, poly::exact_div(tower, b, g)));
}

inline Coordinates coordinatize(const std::vector<TowerElem>& xs) {
  if (xs.empty()) throw DimensionMismatch("coordinatize needs at least one element");
  const auto& desc = xs.front().desc();
  const auto& tower = desc.tower();
  for (const auto& x : xs) require_same(xs.front(), x);

  Coordinates out;
  out.denominator = xs.front().denominator();
  for (const auto& x : xs) out.denominator = lcm(tower, out.denominator, x.denominator());

  std::vector<Poly> numerators;
  numerators.reserve(xs.size());
  for (const auto& x : xs) {
    if (x.denominator() == out.denominator) {
      numerators.push_back(x.numerator());
    } else {
      numerators.push_back(
          poly::mul(tower, x.numerator(), poly::exact_div(tower, out.denominator, x.denominator())));
    }
  }
  for (const auto& n : numerators) {
    for (const auto& t : n.terms()) out.monomials.push_back(t.exp);
  }
  const auto less = [](const Exponents& a, const Exponents& b) { return grlex_cmp(a, b) < 0; };
  std::sort(out.monomials.begin(), out.monomials.end(), less);
  out.monomials.erase(std::unique(out.monomials.begin(), out.monomials.end()), out.monomials.end());

  const std::size_t s = desc.constants().size();
  out.constant_dim = s;
  out.matrix = Matrix(xs.size(), out.monomials.size() * s);
  for (const auto& m : out.monomials) {
    for (std::size_t j = 0; j < s; ++j) out.grades.push_back(desc.grade(m));
  }
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    for (const auto& t : numerators[i].terms()) {
      const auto it = std::lower_bound(out.monomials.begin(), out.monomials.end(), t.exp, less);
      const std::size_t col = static_cast<std::size_t>(it - out.monomials.begin()) * s;
      desc.constants().coordinates(tower, t.coeff, &out.matrix(i, col));
    }
  }
  return out;
}

/// Inverse of coordinatize for one row.
inline TowerElem reconstruct(const DescriptorPtr& desc, const Coordinates& coords, const Vector& row) {
  const auto& tower = desc->tower();
  const std::size_t s = coords.constant_dim;
  std::vector<Term> terms;
  for (std::size_t m = 0; m < coords.monomials.size(); ++m) {
    ClosureElem c = tower.zero();
    for (std::size_t j = 0; j < s; ++j) {
      const auto& e = row[m * s + j];
      if (!e.is_zero()) c = tower.add(c, tower.mul(e, desc->constants().basis()[j]));
    }
    if (!c.is_zero()) terms.push_back({coords.monomials[m], c});
  }
  return TowerElem::fraction(desc, Poly::from_terms(desc->nvars(), std::move(terms), tower), coords.denominator);
}

/// Largest grade among nonzero entries of a coordinate row, if any.
inline std::optional<std::int64_t> row_grade(const Coordinates& coords, const Vector& row) {
  std::optional<std::int64_t> best;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (!row[c].is_zero() && (!best || coords.grades[c] > *best)) best = coords.grades[c];
  }
  return best;
}

/// Value of the element a coordinate row stands for.
inline Magnitude row_value(const ExtensionDescriptor& desc, const Coordinates& coords, const Vector& row) {
  const auto g = row_grade(coords, row);
  if (!g) return Magnitude::zero();
  return desc.magnitude_of_grade(*g - max_grade(desc, coords.denominator));
}

struct CosetMinimum {
  Vector coeffs;  // one per span row
  Vector row;     // target + sum coeffs[j] * span[j]
};

/// Least-value representative of target + span over k, in coordinates.
/// Grades are eliminated from the top down; each round asks whether the span
/// can cancel every component of grade >= the current cut.
inline CosetMinimum coset_minimum(const TowerConfig& tower, const Coordinates& coords, const Vector& target,
                                  const std::vector<Vector>& span) {
  const std::size_t n = target.size();
  CosetMinimum best{Vector(span.size(), tower.zero()), target};
  if (span.empty()) return best;

  std::vector<std::int64_t> grades;
  for (std::size_t c = 0; c < n; ++c) {
    bool used = !target[c].is_zero();
    for (const auto& s : span) used = used || !s[c].is_zero();
    if (used) grades.push_back(coords.grades[c]);
  }
  std::sort(grades.begin(), grades.end(), std::greater<>());
  grades.erase(std::unique(grades.begin(), grades.end()), grades.end());

  // Columns enter the system grade by grade, highest first.
  std::vector<std::size_t> order(n);
  for (std::size_t c = 0; c < n; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return coords.grades[a] > coords.grades[b]; });
  IncrementalSolver solver(tower, span.size());
  std::size_t next = 0;
  for (const auto cut : grades) {
    for (; next < n && coords.grades[order[next]] >= cut; ++next) {
      const std::size_t c = order[next];
      Vector eq(span.size());
      bool any = !target[c].is_zero();
      for (std::size_t j = 0; j < span.size(); ++j) {
        eq[j] = span[j][c];
        any = any || !eq[j].is_zero();
      }
      if (any) solver.add_equation(std::move(eq), tower.neg(target[c]));
    }
    if (!solver.consistent()) break;
    best.coeffs = solver.solution();
  }
  for (std::size_t j = 0; j < span.size(); ++j) {
    if (best.coeffs[j].is_zero()) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (!span[j][c].is_zero()) best.row[c] = tower.add(best.row[c], tower.mul(best.coeffs[j], span[j][c]));
    }
  }
  return best;
}

struct CosetResult {
  TowerElem u;
  Vector coeffs;
};

/// u = x + sum coeffs[j] span[j] of least value over all k-combinations.
inline CosetResult min_coset_value(const TowerElem& x, const std::vector<TowerElem>& span) {
  if (span.empty()) return {x, {}};
  std::vector<TowerElem> all{x};
  all.insert(all.end(), span.begin(), span.end());
  const Coordinates coords = coordinatize(all);
  std::vector<Vector> rows;
  for (std::size_t j = 1; j < all.size(); ++j) rows.push_back(coords.matrix.row(j));
  auto m = coset_minimum(x.desc().tower(), coords, coords.matrix.row(0), rows);
  return {reconstruct(x.descriptor(), coords, m.row), std::move(m.coeffs)};
}

}  // namespace tnorm
