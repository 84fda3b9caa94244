#include "orthohaar/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace orthohaar {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::trace() const {
  if (!square()) throw std::invalid_argument("trace: matrix is not square");
  double t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

double orthogonality_residual(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("orthogonality_residual: matrix is not square");
  const std::size_t n = m.rows();
  double worst = 0.0;
  // (m^T m)_{ij} = sum_k m_{ki} m_{kj}; symmetric, so the upper triangle suffices.
  std::vector<double> gram(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto r = m.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = r[i];
      for (std::size_t j = i; j < n; ++j) gram[i * n + j] += ri * r[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      worst = std::max(worst, std::abs(gram[i * n + j] - (i == j ? 1.0 : 0.0)));
  return worst;
}

double determinant(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = m.rows();
  Matrix lu = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
      det = -det;
    }
    const double d = lu(k, k);
    det *= d;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / d;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

OrthogonalMatrix::OrthogonalMatrix(Matrix m) : m_(std::move(m)) {
  residual_ = orthogonality_residual(m_);
  if (!(residual_ <= kResidualTolerance)) {
    throw std::domain_error("OrthogonalMatrix: residual " + std::to_string(residual_) +
                            " exceeds tolerance");
  }
}

OrthogonalMatrix OrthogonalMatrix::identity(std::size_t n) {
  return OrthogonalMatrix(Matrix::identity(n));
}

}  // namespace orthohaar
