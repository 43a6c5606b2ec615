#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/scalar.hpp"

namespace calogero {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(data_.front()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
    return out;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if (!((*this)(r, c) == (*this)(c, r))) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/*
 * Exact rank over the rationals. Rows are cleared of denominators and the
 * integer matrix is reduced with Bareiss' fraction-free elimination, so every
 * intermediate stays an integer and each division is exact.
 */
inline std::size_t rank_exact(const Matrix<Rat>& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Matrix<mpz_class> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class lcm = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(r, c).get().get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      const mpq_class& q = a(r, c).get();
      m(r, c) = q.get_num() * (lcm / q.get_den());
    }
  }

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_class t = m(rank, col) * m(r, c) - m(r, col) * m(rank, c);
        mpz_divexact(m(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(r, col) = 0;
    }
    prev = m(rank, col);
    ++rank;
  }
  return rank;
}

/// Eigenvalues of a real symmetric matrix by the cyclic Jacobi method, sorted
/// ascending. Converged once every off-diagonal magnitude is below
/// tol·‖A‖_F.
inline std::vector<double> jacobi_eigenvalues(Matrix<double> a, double tol = 1e-10, std::size_t max_sweeps = 100) {
  const std::size_t n = a.rows();
  double norm = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) norm += a(r, c) * a(r, c);
  norm = std::sqrt(norm);
  const double threshold = tol * norm;

  auto converged = [&] {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) >= threshold && a(p, q) != 0.0) return false;
    return true;
  };

  std::size_t sweep = 0;
  for (; sweep <= max_sweeps && !converged(); ++sweep) {
    if (sweep == max_sweeps) throw NoConvergence(max_sweeps);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) eig[k] = a(k, k);
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Solution of a·x = b (one column of x per column of b) in reduced echelon
/// form: pivots are taken column by column in order, free variables are zero.
template <Scalar S>
struct EchelonSolution {
  Matrix<S> x;
  std::vector<S> pivots;
  std::vector<std::size_t> pivot_columns;
  /// Index of the first right-hand side column that admits no solution.
  std::optional<std::size_t> inconsistent_rhs;
};

template <Scalar S>
EchelonSolution<S> solve_echelon(Matrix<S> a, Matrix<S> b) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t nrhs = b.cols();
  EchelonSolution<S> out;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t p = rank;
    while (p < rows && a(p, col).is_zero()) ++p;
    if (p == rows) continue;
    a.swap_rows(rank, p);
    b.swap_rows(rank, p);
    const S pivot = a(rank, col);
    out.pivots.push_back(pivot);
    out.pivot_columns.push_back(col);
    for (std::size_t c = col; c < cols; ++c) a(rank, c) = a(rank, c) / pivot;
    for (std::size_t c = 0; c < nrhs; ++c) b(rank, c) = b(rank, c) / pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a(r, col).is_zero()) continue;
      const S f = a(r, col);
      for (std::size_t c = col; c < cols; ++c)
        if (!a(rank, c).is_zero()) a(r, c) = a(r, c) - f * a(rank, c);
      for (std::size_t c = 0; c < nrhs; ++c)
        if (!b(rank, c).is_zero()) b(r, c) = b(r, c) - f * b(rank, c);
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows && !out.inconsistent_rhs; ++r)
    for (std::size_t c = 0; c < nrhs; ++c)
      if (!b(r, c).is_zero()) {
        out.inconsistent_rhs = c;
        break;
      }
  out.x = Matrix<S>(cols, nrhs, S(0));
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t c = 0; c < nrhs; ++c) out.x(out.pivot_columns[k], c) = b(k, c);
  return out;
}

}  // namespace calogero
