#include "mcct/linalg.hpp"

#include <cmath>
#include <utility>

#include "mcct/errors.hpp"

namespace mcct {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw LengthMismatchError("matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto brow = b.row(k);
      auto orow = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix matrix_power(const Matrix& m, std::uint64_t exponent) {
  Matrix result = Matrix::identity(m.rows());
  Matrix base = m;
  while (exponent > 0) {
    if (exponent & 1) result = matmul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = matmul(base, base);
  }
  return result;
}

Vec row_times_matrix(const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) throw LengthMismatchError("row_times_matrix: size mismatch");
  Vec out(m.cols(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const auto mrow = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * mrow[j];
  }
  return out;
}

double l1_norm(const Vec& v) {
  double sum = 0.0;
  for (double x : v) sum += std::abs(x);
  return sum;
}

double l1_distance(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LengthMismatchError("l1_distance: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LengthMismatchError("dot: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

Vec solve_dense(Matrix a, Vec b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw LengthMismatchError("solve_dense: system must be square");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(a(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < 1e-300)
      throw NoConvergenceError("solve_dense: singular matrix", static_cast<long>(col));
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a(r, col) * inv;
      if (factor == 0.0) continue;
      a(r, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
      b[r] -= factor * b[col];
    }
  }

  Vec x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

}  // namespace mcct
