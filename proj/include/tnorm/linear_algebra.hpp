#pragma once

// Dense exact linear algebra over the closure (or any of its subfields: the
// elimination never leaves the field generated by the entries).

#include <cstddef>
#include <optional>
#include <vector>

#include "tnorm/error.hpp"
#include "tnorm/finite_field.hpp"

namespace tnorm {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix from_rows(const std::vector<std::vector<ClosureElem>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  ClosureElem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ClosureElem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<ClosureElem> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  bool is_zero() const noexcept {
    for (const auto& e : data_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ClosureElem> data_;
};

using Vector = std::vector<ClosureElem>;

struct LinearSolution {
  bool consistent = false;
  /// Particular solution with every free variable set to zero.
  Vector solution;
  std::vector<Vector> nullspace;
  /// When inconsistent: y with y^T M = 0 and y^T rhs = 1.
  Vector certificate;
};

inline ClosureElem dot(const TowerConfig& tower, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors of different length");
  ClosureElem acc = tower.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = tower.add(acc, tower.mul(a[i], b[i]));
  return acc;
}

inline Matrix mat_mul(const TowerConfig& tower, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product dimensions");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const ClosureElem aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) c(i, j) = tower.add(c(i, j), tower.mul(aik, b(k, j)));
      }
    }
  }
  return c;
}

namespace detail {

// Gauss-Jordan on a in place over its first `cols` columns; returns pivot columns.
inline std::vector<std::size_t> reduce(const TowerConfig& tower, Matrix& a, std::size_t cols) {
  const std::size_t rows = a.rows(), width = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < width; ++j) std::swap(a(piv, j), a(r, j));
    }
    const ClosureElem inv = tower.inv(a(r, c));
    for (std::size_t j = c; j < width; ++j) a(r, j) = tower.mul(a(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const ClosureElem f = tower.neg(a(i, c));
      for (std::size_t j = c; j < width; ++j) {
        if (!a(r, j).is_zero()) a(i, j) = tower.add(a(i, j), tower.mul(f, a(r, j)));
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace detail

/// Solve M x = rhs exactly by Gauss-Jordan elimination.
inline LinearSolution ff_solve_linear(const TowerConfig& tower, const Matrix& m, const Vector& rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("right-hand side length differs from row count");
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix a(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j);
    a(i, cols) = rhs[i];
  }
  const auto pivot_cols = detail::reduce(tower, a, cols);
  const std::size_t r = pivot_cols.size();

  LinearSolution out;
  for (std::size_t i = r; i < rows; ++i) {
    if (a(i, cols).is_zero()) continue;
    // Inconsistent: redo the elimination on [M | rhs | I] to recover y.
    Matrix aug(rows, cols + 1 + rows);
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t j = 0; j < cols; ++j) aug(k, j) = m(k, j);
      aug(k, cols) = rhs[k];
      aug(k, cols + 1 + k) = tower.one();
    }
    detail::reduce(tower, aug, cols);
    for (std::size_t k = r; k < rows; ++k) {
      if (aug(k, cols).is_zero()) continue;
      const ClosureElem scale = tower.inv(aug(k, cols));
      out.certificate.resize(rows);
      for (std::size_t j = 0; j < rows; ++j) out.certificate[j] = tower.mul(aug(k, cols + 1 + j), scale);
      break;
    }
    return out;
  }
  out.consistent = true;
  out.solution.assign(cols, tower.zero());
  for (std::size_t i = 0; i < r; ++i) out.solution[pivot_cols[i]] = a(i, cols);

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols, tower.zero());
    v[f] = tower.one();
    for (std::size_t i = 0; i < r; ++i) v[pivot_cols[i]] = tower.neg(a(i, f));
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Semi-echelon basis of a growing family of vectors. insert() either adds a
/// vector to the basis or returns its expression in the previously inserted
/// independent vectors.
class EchelonBasis {
 public:
  EchelonBasis(const TowerConfig& tower, std::size_t dim) : tower_(&tower), dim_(dim) {}

  std::size_t rank() const noexcept { return rows_.size(); }

  /// nullopt: v was independent and is now member number rank()-1.
  /// Otherwise: coefficients c with v = sum c[j] * (j-th independent member).
  std::optional<Vector> insert(Vector v) {
    if (v.size() != dim_) throw DimensionMismatch("vector length differs from the ambient dimension");
    const auto& t = *tower_;
    const std::size_t r = rows_.size();
    Vector expr(r + 1, t.zero());
    expr[r] = t.one();  // v itself, if it ends up independent
    for (std::size_t k = 0; k < r; ++k) {
      const ClosureElem c = v[pivots_[k]];
      if (c.is_zero()) continue;
      const ClosureElem f = t.neg(c);
      axpy(v, f, rows_[k]);
      for (std::size_t j = 0; j < exprs_[k].size(); ++j) {
        if (!exprs_[k][j].is_zero()) expr[j] = t.add(expr[j], t.mul(f, exprs_[k][j]));
      }
    }
    std::size_t piv = 0;
    while (piv < dim_ && v[piv].is_zero()) ++piv;
    if (piv == dim_) {
      // 0 = v - sum c_j w_j with expr = (-c, 1)
      Vector coeffs(r);
      for (std::size_t j = 0; j < r; ++j) coeffs[j] = t.neg(expr[j]);
      return coeffs;
    }
    const ClosureElem inv = t.inv(v[piv]);
    for (auto& e : v) e = t.mul(e, inv);
    for (auto& e : expr) e = t.mul(e, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    exprs_.push_back(std::move(expr));
    return std::nullopt;
  }

 private:
  void axpy(Vector& v, const ClosureElem& f, const Vector& row) const {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!row[j].is_zero()) v[j] = tower_->add(v[j], tower_->mul(f, row[j]));
    }
  }

  const TowerConfig* tower_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> exprs_;  // rows_[k] = sum exprs_[k][j] * (independent member j)
};

/// Linear system in a fixed number of unknowns, fed one equation at a time and
/// kept in reduced row echelon form. solution() sets free unknowns to zero, so
/// it agrees with ff_solve_linear on the accumulated system.
class IncrementalSolver {
 public:
  IncrementalSolver(const TowerConfig& tower, std::size_t unknowns) : tower_(&tower), n_(unknowns) {}

  /// Adds sum coeffs[j] x_j = rhs; returns false once the system is inconsistent.
  bool add_equation(Vector coeffs, ClosureElem rhs) {
    if (coeffs.size() != n_) throw DimensionMismatch("equation arity differs from the unknown count");
    if (!consistent_) return false;
    const auto& t = *tower_;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const ClosureElem c = coeffs[pivots_[k]];
      if (c.is_zero()) continue;
      const ClosureElem f = t.neg(c);
      for (std::size_t j = 0; j < n_; ++j) {
        if (!rows_[k][j].is_zero()) coeffs[j] = t.add(coeffs[j], t.mul(f, rows_[k][j]));
      }
      rhs = t.add(rhs, t.mul(f, rhs_[k]));
    }
    std::size_t piv = 0;
    while (piv < n_ && coeffs[piv].is_zero()) ++piv;
    if (piv == n_) {
      if (!rhs.is_zero()) consistent_ = false;
      return consistent_;
    }
    const ClosureElem inv = t.inv(coeffs[piv]);
    for (auto& e : coeffs) e = t.mul(e, inv);
    rhs = t.mul(rhs, inv);
    // keep the echelon form reduced
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const ClosureElem c = rows_[k][piv];
      if (c.is_zero()) continue;
      const ClosureElem f = t.neg(c);
      for (std::size_t j = 0; j < n_; ++j) {
        if (!coeffs[j].is_zero()) rows_[k][j] = t.add(rows_[k][j], t.mul(f, coeffs[j]));
      }
      rhs_[k] = t.add(rhs_[k], t.mul(f, rhs));
    }
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(rhs);
    pivots_.push_back(piv);
    return true;
  }

  bool consistent() const noexcept { return consistent_; }

  Vector solution() const {
    Vector x(n_, tower_->zero());
    for (std::size_t k = 0; k < rows_.size(); ++k) x[pivots_[k]] = rhs_[k];
    return x;
  }

 private:
  const TowerConfig* tower_;
  std::size_t n_;
  bool consistent_ = true;
  std::vector<Vector> rows_;
  Vector rhs_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const TowerConfig& tower, const Matrix& m) {
  const auto sol = ff_solve_linear(tower, m, Vector(m.rows(), tower.zero()));
  return m.cols() - sol.nullspace.size();
}

}  // namespace tnorm
