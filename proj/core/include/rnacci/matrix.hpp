#pragma once

// Dense matrices of exact integers.
//
// Row-major storage of mpz_class values. Only what the r-nacci machinery
// needs is provided: products, powers, and fraction-free (Bareiss)
// determinant / adjugate.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rnacci {

using BigInt = mpz_class;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const BigInt> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const BigInt& scalar, const Matrix& m);
std::vector<BigInt> operator*(const Matrix& m, std::span<const BigInt> v);

/// Square-and-multiply power; exponent 0 gives the identity.
Matrix power(const Matrix& m, std::uint64_t exponent);

/// Determinant by fraction-free Gaussian elimination with row pivoting.
/// Every intermediate quotient is exact, so no rational arithmetic occurs.
BigInt determinant(const Matrix& m);

/// Classical adjugate, adj(M) with M * adj(M) = det(M) * I. Computed from the
/// cofactors, each a Bareiss determinant of the corresponding minor.
Matrix adjugate(const Matrix& m);

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b);

std::string to_string(std::span<const BigInt> v);
std::string to_string(const Matrix& m);

}  // namespace rnacci
