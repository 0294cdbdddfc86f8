#pragma once

// Elements of A = K (x)_k L, the reduction pipeline that certifies the
// tensor-product norm, pure decompositions and the value-estimate check.
//
// Everything after eliminate_dependent is carried out on coordinate rows: both
// factor families are written over a common denominator in a k-basis, so
// folding and orthogonalizing are row operations over k. The norm of a
// reduced representation is read off as max |u_i| |v_i|.

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tnorm/error.hpp"
#include "tnorm/format.hpp"
#include "tnorm/function_field.hpp"
#include "tnorm/linear_algebra.hpp"
#include "tnorm/magnitude.hpp"

namespace tnorm {

struct TensorTerm {
  TowerElem x;
  TowerElem y;
};

class TensorElem {
 public:
  TensorElem() = default;

  /// Terms with a zero factor are dropped.
  TensorElem(DescriptorPtr left, DescriptorPtr right, std::vector<TensorTerm> terms = {})
      : left_(std::move(left)), right_(std::move(right)) {
    validate_descriptors(left_, right_);
    terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (t.x.descriptor() != left_ || t.y.descriptor() != right_) {
        throw SideMismatch("tensor term factors on the wrong side");
      }
      if (!t.x.is_zero() && !t.y.is_zero()) terms_.push_back(std::move(t));
    }
  }

  static TensorElem pure_tensor(const TowerElem& x, const TowerElem& y) {
    return TensorElem(x.descriptor(), y.descriptor(), {{x, y}});
  }

  static TensorElem one(DescriptorPtr left, DescriptorPtr right) {
    auto x = TowerElem::one(left);
    auto y = TowerElem::one(right);
    return TensorElem(std::move(left), std::move(right), {{std::move(x), std::move(y)}});
  }

  const DescriptorPtr& left() const noexcept { return left_; }
  const DescriptorPtr& right() const noexcept { return right_; }
  const std::vector<TensorTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Sides swapped and each term transposed; an element of L (x)_k K.
  TensorElem transposed() const {
    TensorElem t;
    t.left_ = right_;
    t.right_ = left_;
    for (const auto& term : terms_) t.terms_.push_back({term.y, term.x});
    return t;
  }

  static void validate_descriptors(const DescriptorPtr& left, const DescriptorPtr& right) {
    if (!left || !right) throw InvalidConfig("tensor element needs both descriptors");
    if (left->side() == right->side()) throw SideMismatch("both factors on the same side");
    if (left->tower_ptr() != right->tower_ptr() && left->tower_ptr().get() != right->tower_ptr().get()) {
      throw SideMismatch("factors over different towers");
    }
    if (!(left->base() == right->base())) throw SideMismatch("factors over different base fields");
    for (const auto& a : left->variables()) {
      if (right->index_of(a.name)) throw InvalidConfig("variable " + a.name + " declared on both sides");
    }
  }

 private:
  DescriptorPtr left_;
  DescriptorPtr right_;
  std::vector<TensorTerm> terms_;
};

inline void require_compatible(const TensorElem& a, const TensorElem& b) {
  if (a.left() != b.left() || a.right() != b.right()) throw SideMismatch("tensor elements over different sides");
}

inline TensorElem t_add(const TensorElem& z, const TensorElem& w) {
  require_compatible(z, w);
  std::vector<TensorTerm> terms = z.terms();
  terms.insert(terms.end(), w.terms().begin(), w.terms().end());
  return TensorElem(z.left(), z.right(), std::move(terms));
}

inline TensorElem t_neg(const TensorElem& z) {
  std::vector<TensorTerm> terms;
  for (const auto& t : z.terms()) terms.push_back({-t.x, t.y});
  return TensorElem(z.left(), z.right(), std::move(terms));
}

inline TensorElem t_sub(const TensorElem& z, const TensorElem& w) { return t_add(z, t_neg(w)); }

inline TensorElem t_mul(const TensorElem& z, const TensorElem& w) {
  require_compatible(z, w);
  std::vector<TensorTerm> terms;
  terms.reserve(z.size() * w.size());
  for (const auto& a : z.terms()) {
    for (const auto& b : w.terms()) terms.push_back({a.x * b.x, a.y * b.y});
  }
  return TensorElem(z.left(), z.right(), std::move(terms));
}

inline std::string format_tensor(const TensorElem& z) {
  if (z.empty()) return "0";
  std::string s;
  for (const auto& t : z.terms()) {
    if (!s.empty()) s += " + ";
    s += format_elem(t.x) + " (x) " + format_elem(t.y);
  }
  return s;
}

/// z = 0 in K (x)_k L iff the coefficient matrix X^T Y vanishes, where X and Y
/// coordinatize the factors in k-bases of K and L. Independent of the norm
/// pipeline.
inline bool is_zero(const TensorElem& z) {
  if (z.empty()) return true;
  std::vector<TowerElem> xs, ys;
  for (const auto& t : z.terms()) {
    xs.push_back(t.x);
    ys.push_back(t.y);
  }
  const auto& tower = z.left()->tower();
  const Coordinates cx = coordinatize(xs);
  const Coordinates cy = coordinatize(ys);
  return mat_mul(tower, cx.matrix.transpose(), cy.matrix).is_zero();
}

namespace detail {

// Both factor families in coordinates; term i is (left.row_i) (x) (right.row_i).
struct RowForm {
  DescriptorPtr left_desc, right_desc;
  Coordinates left, right;
  std::vector<Vector> xs, ys;

  static RowForm from(const TensorElem& z) {
    RowForm f;
    f.left_desc = z.left();
    f.right_desc = z.right();
    if (z.empty()) return f;
    std::vector<TowerElem> xs, ys;
    for (const auto& t : z.terms()) {
      xs.push_back(t.x);
      ys.push_back(t.y);
    }
    f.left = coordinatize(xs);
    f.right = coordinatize(ys);
    for (std::size_t i = 0; i < z.size(); ++i) {
      f.xs.push_back(f.left.matrix.row(i));
      f.ys.push_back(f.right.matrix.row(i));
    }
    return f;
  }

  std::size_t size() const noexcept { return xs.size(); }

  void drop_zero_terms() {
    std::vector<Vector> nx, ny;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (is_zero_row(xs[i]) || is_zero_row(ys[i])) continue;
      nx.push_back(std::move(xs[i]));
      ny.push_back(std::move(ys[i]));
    }
    xs = std::move(nx);
    ys = std::move(ny);
  }

  static bool is_zero_row(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const ClosureElem& e) { return e.is_zero(); });
  }

  TensorElem to_tensor() const {
    std::vector<TensorTerm> terms;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      terms.push_back({reconstruct(left_desc, left, xs[i]), reconstruct(right_desc, right, ys[i])});
    }
    return TensorElem(left_desc, right_desc, std::move(terms));
  }

  void swap_sides() {
    std::swap(left_desc, right_desc);
    std::swap(left, right);
    std::swap(xs, ys);
  }
};

inline void axpy(const TowerConfig& tower, Vector& dst, const ClosureElem& c, const Vector& src) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < dst.size(); ++j) {
    if (!src[j].is_zero()) dst[j] = tower.add(dst[j], tower.mul(c, src[j]));
  }
}

// Makes the right factors independent: whenever y_i = sum c_j y_j over earlier
// independent y_j, term i is folded into x_j += c_j x_i and removed.
inline void fold_right_dependencies(const TowerConfig& tower, RowForm& f) {
  if (f.size() == 0) return;
  EchelonBasis basis(tower, f.ys.front().size());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto dep = basis.insert(f.ys[i]);
    if (!dep) {
      kept.push_back(i);
      continue;
    }
    for (std::size_t j = 0; j < dep->size(); ++j) axpy(tower, f.xs[kept[j]], (*dep)[j], f.xs[i]);
  }
  std::vector<Vector> nx, ny;
  for (auto i : kept) {
    nx.push_back(std::move(f.xs[i]));
    ny.push_back(std::move(f.ys[i]));
  }
  f.xs = std::move(nx);
  f.ys = std::move(ny);
  f.drop_zero_terms();
}

inline void eliminate_rows(const TowerConfig& tower, RowForm& f) {
  f.drop_zero_terms();
  fold_right_dependencies(tower, f);
  f.swap_sides();
  fold_right_dependencies(tower, f);
  f.swap_sides();
}

}  // namespace detail

/// Same element of A with k-independent right factors and k-independent left
/// factors (right side folded first).
inline TensorElem eliminate_dependent(const TensorElem& z) {
  if (z.empty()) return z;
  auto f = detail::RowForm::from(z);
  detail::eliminate_rows(z.left()->tower(), f);
  return f.to_tensor();
}

struct ReducedTerm {
  TowerElem u;
  TowerElem v;
  Magnitude u_value;
  Magnitude v_value;
  Magnitude product;  // u_value * v_value
};

/// Representation with independent right factors and a left family in which
/// each u_i has least value on u_i + span(u_<i); its norm is max |u_i||v_i|.
struct ReducedRep {
  DescriptorPtr left;
  DescriptorPtr right;
  std::vector<ReducedTerm> terms;
  Magnitude norm;

  TensorElem to_tensor() const {
    std::vector<TensorTerm> t;
    for (const auto& r : terms) t.push_back({r.u, r.v});
    return TensorElem(left, right, std::move(t));
  }
};

inline ReducedRep orthogonalize_left(const TensorElem& z) {
  ReducedRep rep{z.left(), z.right(), {}, Magnitude::zero()};
  if (z.empty()) return rep;
  const auto& tower = z.left()->tower();
  auto f = detail::RowForm::from(z);
  detail::eliminate_rows(tower, f);
  const std::size_t m = f.size();

  // u_i = x_i + sum_{j<i} a_ij u_j; the right side absorbs the change:
  // v_j = y_j - sum_{i>j} a_ij y_i.
  std::vector<Vector> us;
  std::vector<Vector> vs = f.ys;
  for (std::size_t i = 0; i < m; ++i) {
    auto best = coset_minimum(tower, f.left, f.xs[i], us);
    for (std::size_t j = 0; j < i; ++j) detail::axpy(tower, vs[j], tower.neg(best.coeffs[j]), f.ys[i]);
    us.push_back(std::move(best.row));
  }

  const ExtensionDescriptor& ld = *z.left();
  const ExtensionDescriptor& rd = *z.right();
  for (std::size_t i = 0; i < m; ++i) {
    ReducedTerm t{reconstruct(f.left_desc, f.left, us[i]), reconstruct(f.right_desc, f.right, vs[i]),
                  row_value(ld, f.left, us[i]), row_value(rd, f.right, vs[i]), Magnitude::zero()};
    t.product = t.u_value * t.v_value;
    if (t.u.is_zero() || t.v.is_zero()) throw Error("orthogonalization produced a zero factor");
    rep.norm = mag_max(rep.norm, t.product);
    rep.terms.push_back(std::move(t));
  }
  return rep;
}

/// The same procedure on the right factors; the result's u's live in L.
inline ReducedRep orthogonalize_right(const TensorElem& z) { return orthogonalize_left(z.transposed()); }

inline Magnitude tensor_norm(const TensorElem& z) { return orthogonalize_left(z).norm; }

inline Magnitude tensor_norm_right(const TensorElem& z) { return orthogonalize_right(z).norm; }

/// Audit text: one line per term with its values, then the certified norm.
inline std::string format_reduced(const ReducedRep& rep) {
  std::string s;
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    const auto& t = rep.terms[i];
    s += "term " + std::to_string(i) + ": " + format_elem(t.u) + " (x) " + format_elem(t.v) + "  |u|=" +
         t.u_value.to_string() + " |v|=" + t.v_value.to_string() + " |u||v|=" + t.product.to_string() + "\n";
  }
  s += "norm: " + rep.norm.to_string() + "\n";
  return s;
}

struct PureDecomposition {
  Magnitude alpha;
  Magnitude beta;
  TensorElem pure_part;
  TensorElem tail;
};

/// z = pure_part + tail with pure_part (alpha, beta)-pure, alpha * beta = ||z||,
/// and every tail term lexicographically below (alpha * beta, alpha).
inline PureDecomposition pure_decompose(const TensorElem& z) {
  const ReducedRep rep = orthogonalize_left(z);
  if (rep.terms.empty()) throw DegenerateInput("pure decomposition of zero");
  Magnitude alpha = Magnitude::zero();
  for (const auto& t : rep.terms) {
    if (t.product == rep.norm) alpha = mag_max(alpha, t.u_value);
  }
  std::vector<TensorTerm> pure, tail;
  for (const auto& t : rep.terms) {
    if (t.product == rep.norm && t.u_value == alpha) {
      pure.push_back({t.u, t.v});
    } else {
      tail.push_back({t.u, t.v});
    }
  }
  const Magnitude beta = rep.norm * mag_pow(alpha, -1);
  return {alpha, beta, TensorElem(z.left(), z.right(), std::move(pure)), TensorElem(z.left(), z.right(), std::move(tail))};
}

/// Checks |sum a_i x_i| * prod r_i >= max |a_i| |x_i| for a family satisfying
/// 0 < |x_i| <= r_i |x| on every x in x_i + span(x_<i). Instances violating
/// the hypothesis raise InvalidInstance.
inline bool value_estimate_check(const std::vector<TowerElem>& xs, const std::vector<mpq_class>& rs,
                                 const Vector& as) {
  if (xs.empty()) throw InvalidInstance("empty family");
  if (rs.size() != xs.size() || as.size() != xs.size()) throw InvalidInstance("family, bounds and scalars differ in length");
  const ExtensionDescriptor& desc = xs.front().desc();
  const auto& tower = desc.tower();
  mpq_class prod = 1;
  for (const auto& r : rs) {
    if (r < 1) throw InvalidInstance("bound below 1");
    prod *= r;
  }
  if (!desc.base().is_closure()) {
    for (const auto& a : as) {
      if (!tower.in_level(a.raw, desc.base().level)) throw InvalidInstance("scalar outside the base field");
    }
  }
  const Coordinates coords = coordinatize(xs);
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back(coords.matrix.row(i));

  std::vector<Vector> prefix;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Magnitude xv = value(xs[i]);
    if (xv.is_zero()) throw InvalidInstance("zero member in the family");
    const Magnitude least = row_value(desc, coords, coset_minimum(tower, coords, rows[i], prefix).row);
    if (least.is_zero()) throw InvalidInstance("member lies in the span of its predecessors");
    if (compare_to_rational(xv * mag_pow(least, -1), rs[i]) > 0) {
      throw InvalidInstance("member " + std::to_string(i) + " exceeds its bound");
    }
    prefix.push_back(rows[i]);
  }

  Magnitude rhs = Magnitude::zero();
  Vector combo(coords.columns(), tower.zero());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (as[i].is_zero()) continue;
    rhs = mag_max(rhs, value(xs[i]));
    detail::axpy(tower, combo, as[i], rows[i]);
  }
  if (rhs.is_zero()) return true;
  const Magnitude lhs = row_value(desc, coords, combo);
  if (lhs.is_zero()) return false;
  return compare_to_rational(rhs * mag_pow(lhs, -1), prod) <= 0;
}

}  // namespace tnorm
