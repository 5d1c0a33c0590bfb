#pragma once

// Dense exact linear algebra over the rationals. Sizes here are tiny (6x6,
// or a few hundred rows by 21 columns), so plain Gaussian elimination is used.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hspace33/rational.hpp"

namespace h33 {

class SingularMatrixError : public std::domain_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::domain_error(what) {}
  // The determinant that was found to vanish (always zero).
  Rational determinant() const { return Rational(0); }
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_symmetric() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// 6x6 matrix of exact values at one point.
using PointMatrix = RationalMatrix;

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix scaled(const RationalMatrix& m, const Rational& s);

Rational determinant(RationalMatrix m);
// Throws SingularMatrixError when det(m) = 0.
RationalMatrix inverse(const RationalMatrix& m);
std::size_t rank(RationalMatrix m);
// Reduced row echelon form; pivot columns are returned through `pivots`.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);
// Basis of {v : m v = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

// Coefficients c[0..n] (ascending powers) of det(m - lambda*I). For even n
// the polynomial is monic.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

// Coefficients (ascending) of the product of linear factors (lambda - r).
std::vector<Rational> polynomial_from_roots(const std::vector<Rational>& roots);

}  // namespace h33
