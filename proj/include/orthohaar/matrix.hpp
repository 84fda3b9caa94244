#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace orthohaar {

/// Dense row-major matrix of doubles. A 0x0 matrix is valid and stands in for
/// the trivial group O_0.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transposed() const;
  double trace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);

/// max |m^T m - I| over all entries.
double orthogonality_residual(const Matrix& m);

/// LU with partial pivoting.
double determinant(const Matrix& m);

/// Largest absolute entrywise difference; dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// A square matrix certified to lie in O_p. Construction fails when the
/// orthogonality residual exceeds the tolerance.
class OrthogonalMatrix {
 public:
  static constexpr double kResidualTolerance = 1e-12;
  static constexpr double kDeterminantTolerance = 1e-10;

  explicit OrthogonalMatrix(Matrix m);

  static OrthogonalMatrix identity(std::size_t n);

  const Matrix& matrix() const { return m_; }
  std::size_t size() const { return m_.rows(); }
  double residual() const { return residual_; }
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix m_;
  double residual_ = 0.0;
};

}  // namespace orthohaar
