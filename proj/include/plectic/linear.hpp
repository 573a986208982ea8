#pragma once
#include <optional>
#include <vector>

#include "plectic/coeffn.hpp"
#include "plectic/scalar.hpp"

namespace plectic {

template <class R>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<R> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  R& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const R& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Fraction-free rank over the scalar ring.  Row operations follow the
// one-step determinant recurrence, so every division is exact in the ring and
// no fraction field is needed.
inline int rank(Matrix<Scalar> m) {
  int rk = 0;
  Scalar prev(1);
  for (int col = 0; col < m.cols && rk < m.rows; ++col) {
    int pivot = -1;
    for (int i = rk; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rk)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rk, j));
    for (int i = rk + 1; i < m.rows; ++i) {
      for (int j = col + 1; j < m.cols; ++j) {
        Scalar num = m.at(rk, col) * m.at(i, j) - m.at(i, col) * m.at(rk, j);
        auto q = num.div_exact(prev);
        // exact by the Sylvester determinant identity
        m.at(i, j) = *q;
      }
      m.at(i, col) = Scalar();
    }
    prev = m.at(rk, col);
    ++rk;
  }
  return rk;
}

namespace detail {

inline Scalar scale(const Scalar& s, const Scalar& x) { return s * x; }
inline CoefFn scale(const Scalar& s, const CoefFn& x) { return s * x; }
inline std::optional<Scalar> div_entry(const Scalar& x, const Scalar& s) {
  return x.div_exact(s);
}
inline std::optional<CoefFn> div_entry(const CoefFn& x, const Scalar& s) {
  CoefFn r(x.chart());
  for (auto& [m, c] : x.terms()) {
    auto q = c.div_exact(s);
    if (!q.has_value()) return std::nullopt;
    r.add_term(m, *q);
  }
  return r;
}

}  // namespace detail

// Exact Gaussian elimination of [A | b] over the fraction field, materialized
// only through exact ring divisions.  Returns one solution (free variables
// pinned to zero) or nullopt when inconsistent.  Throws NotDivisible when a
// solution exists only outside the scalar ring.
template <class V>
std::optional<std::vector<V>> solve(Matrix<Scalar> m, std::vector<V> b) {
  require(static_cast<int>(b.size()) == m.rows, Errc::InvalidArgument,
          "rhs length != row count");
  std::vector<int> pivot_col;
  int rk = 0;
  for (int col = 0; col < m.cols && rk < m.rows; ++col) {
    int pivot = -1;
    for (int i = rk; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        // prefer unit pivots so divisions stay exact
        if (pivot < 0 || m.at(i, col).is_monomial()) pivot = i;
        if (m.at(pivot, col).is_monomial()) break;
      }
    if (pivot < 0) continue;
    if (pivot != rk) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rk, j));
      std::swap(b[pivot], b[rk]);
    }
    for (int i = 0; i < m.rows; ++i) {
      if (i == rk || m.at(i, col).is_zero()) continue;
      // row_i <- a_rc row_i - a_ic row_r, kept exact as cross products; the
      // whole row is scaled so earlier free columns stay consistent
      Scalar f = m.at(i, col);
      Scalar p = m.at(rk, col);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = p * m.at(i, j) - f * m.at(rk, j);
      b[i] = detail::scale(p, b[i]) - detail::scale(f, b[rk]);
    }
    pivot_col.push_back(col);
    ++rk;
  }
  for (int i = rk; i < m.rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<V> x(m.cols, b.empty() ? V() : detail::scale(Scalar(0), b[0]));
  for (int i = 0; i < rk; ++i) {
    auto q = detail::div_entry(b[i], m.at(i, pivot_col[i]));
    require(q.has_value(), Errc::NotDivisible,
            "solution leaves the scalar ring (fraction-field value)");
    x[pivot_col[i]] = *q;
  }
  return x;
}

// Reduced echelon solve over the rational field; the right-hand side may
// carry arbitrary scalar entries.  Division happens at the pivot, so entry
// growth stays polynomial, unlike the cross-product scheme above.  Returns
// one solution with free variables pinned to zero, or nullopt.
inline std::optional<std::vector<Scalar>> solve_field(Matrix<Rational> m,
                                                      std::vector<Scalar> b) {
  require(static_cast<int>(b.size()) == m.rows, Errc::InvalidArgument,
          "rhs length != row count");
  std::vector<int> pivot_col;
  int rk = 0;
  for (int col = 0; col < m.cols && rk < m.rows; ++col) {
    int pivot = -1;
    for (int i = rk; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rk) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rk, j));
      std::swap(b[pivot], b[rk]);
    }
    Rational p = m.at(rk, col);
    for (int j = col; j < m.cols; ++j) m.at(rk, j) /= p;
    b[rk] = Rational(1) / p * b[rk];
    for (int i = 0; i < m.rows; ++i) {
      Rational f = m.at(i, col);
      if (i == rk || f == 0) continue;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(rk, j);
      b[i] -= f * b[rk];
    }
    pivot_col.push_back(col);
    ++rk;
  }
  for (int i = rk; i < m.rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Scalar> x(m.cols);
  for (int i = 0; i < rk; ++i) x[pivot_col[i]] = b[i];
  return x;
}

// Kernel basis over the rational field, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_field(Matrix<Rational> m) {
  std::vector<int> pivot_of_col(m.cols, -1);
  int rk = 0;
  for (int col = 0; col < m.cols && rk < m.rows; ++col) {
    int pivot = -1;
    for (int i = rk; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rk)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rk, j));
    Rational p = m.at(rk, col);
    for (int j = col; j < m.cols; ++j) m.at(rk, j) /= p;
    for (int i = 0; i < m.rows; ++i) {
      Rational f = m.at(i, col);
      if (i == rk || f == 0) continue;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(rk, j);
    }
    pivot_of_col[col] = rk;
    ++rk;
  }
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Rational> v(m.cols, Rational(0));
    v[f] = 1;
    for (int c = 0; c < m.cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -m.at(pivot_of_col[c], f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the right kernel.  Entries are scaled minors, so the basis is
// fraction-free; vectors are not normalized.
inline std::vector<std::vector<Scalar>> kernel_basis(Matrix<Scalar> m) {
  // reduced echelon over exact divisions, tracking pivot columns
  std::vector<int> pivot_of_col(m.cols, -1);
  int rk = 0;
  for (int col = 0; col < m.cols && rk < m.rows; ++col) {
    int pivot = -1;
    for (int i = rk; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        if (pivot < 0 || m.at(i, col).is_monomial()) pivot = i;
        if (m.at(pivot, col).is_monomial()) break;
      }
    if (pivot < 0) continue;
    if (pivot != rk)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rk, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == rk || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      Scalar p = m.at(rk, col);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = p * m.at(i, j) - f * m.at(rk, j);
    }
    pivot_of_col[col] = rk;
    ++rk;
  }
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Scalar> v(m.cols, Scalar());
    // common multiplier keeps entries in the ring
    Scalar mult(1);
    for (int c = 0; c < m.cols; ++c)
      if (pivot_of_col[c] >= 0) mult = mult * m.at(pivot_of_col[c], c);
    v[f] = mult;
    for (int c = 0; c < m.cols; ++c) {
      if (pivot_of_col[c] < 0) continue;
      int r = pivot_of_col[c];
      Scalar num = m.at(r, f) * mult;
      auto q = num.div_exact(m.at(r, c));
      require(q.has_value(), Errc::NotDivisible, "kernel vector leaves the scalar ring");
      v[c] = -*q;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace plectic
