#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mcct {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything here is sized for desk-scale chains
// (n up to a couple of thousand states).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matrix_power(const Matrix& m, std::uint64_t exponent);

// v^T * m for a row vector v.
Vec row_times_matrix(const Vec& v, const Matrix& m);

double l1_norm(const Vec& v);
double l1_distance(const Vec& a, const Vec& b);
double dot(const Vec& a, const Vec& b);

// Gaussian elimination with partial pivoting. Throws NoConvergenceError on a
// numerically singular system.
Vec solve_dense(Matrix a, Vec b);

}  // namespace mcct
