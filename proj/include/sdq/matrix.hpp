#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sdq {

/// Dense row-major matrix of doubles: frames, difference operators, duals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::initializer_list<std::initializer_list<double>> init);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  std::vector<double>& entries() { return entries_; }
  const std::vector<double>& entries() const { return entries_; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);
Matrix transpose(const Matrix& a);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);

double norm_l1(std::span<const double> v);
double norm_l2(std::span<const double> v);
double norm_linf(std::span<const double> v);

}  // namespace sdq
