#pragma once

// Exact integer matrices and the Smith normal form.

#include "cayley/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cayley {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Integer>& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const {
    std::vector<Integer> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
  }
  // col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  /// Row-major nested bracket literal, e.g. `[[2,-1],[-1,2]]`.
  std::string str() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r) s += ",";
      s += "[";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) s += ",";
        s += (*this)(r, c).str();
      }
      s += "]";
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.str(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer det(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// S = U * M * V with U, V unimodular and S diagonal with s_i | s_{i+1}.
struct SnfDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) out.push_back(S(i, i));
    return out;
  }
};

namespace detail {

// Reduces `a` in place to Smith form, mirroring every row operation on `u`
// and every column operation on `v` when they are non-null.
//
// Pivot rule: the nonzero entry of least absolute value in the working minor,
// ties broken in row-major order.
inline void smith_reduce(IntMatrix& a, IntMatrix* u, IntMatrix* v) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t diag = std::min(rows, cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (u) u->swap_rows(i, j);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (v) v->swap_cols(i, j);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row(dst, src, f);
    if (u) u->add_row(dst, src, f);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col(dst, src, f);
    if (v) v->add_col(dst, src, f);
  };

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer mag = abs(a(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pr = i;
            pc = j;
          }
        }
      if (!found) return;  // the remaining minor is zero
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool residue = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        add_row(i, t, -q);
        if (a(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        add_col(j, t, -q);
        if (a(t, j) != 0) residue = true;
      }
      if (residue) continue;

      // Row and column are clear; enforce divisibility of the rest of the minor.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
  }
  for (std::size_t t = 0; t < diag; ++t)
    if (a(t, t) < 0) {
      a.negate_row(t);
      if (u) u->negate_row(t);
    }
}

}  // namespace detail

/// Smith normal form with accumulated unimodular witnesses. Deterministic for
/// a fixed input; singular inputs produce trailing zero invariant factors.
inline SnfDecomposition smith_normal_form(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("smith_normal_form expects a square matrix");
  SnfDecomposition out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  detail::smith_reduce(out.S, &out.U, &out.V);
  return out;
}

/// Invariant factors of an arbitrary rectangular matrix (no witnesses).
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  IntMatrix a = m;
  detail::smith_reduce(a, nullptr, nullptr);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) out.push_back(a(i, i));
  return out;
}

inline IntMatrix scale(const IntMatrix& m, const Integer& t) {
  if (t < 1) throw std::invalid_argument("scale factor must be positive");
  IntMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= t;
  return out;
}

inline bool is_unimodular(const IntMatrix& m) {
  return m.square() && abs(det(m)) == 1;
}

}  // namespace cayley
