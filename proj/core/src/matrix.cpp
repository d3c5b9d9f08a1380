#include "rnacci/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace rnacci {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const BigInt& x = a(i, l);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), b(l, j).get_mpz_t());
    }
  }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(const BigInt& scalar, const Matrix& m) {
  Matrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = scalar * m(i, j);
  return c;
}

std::vector<BigInt> operator*(const Matrix& m, std::span<const BigInt> v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<BigInt> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

Matrix power(const Matrix& m, std::uint64_t exponent) {
  if (!m.is_square()) throw std::invalid_argument("matrix power: not square");
  Matrix result = Matrix::identity(m.rows());
  Matrix base = m;
  while (exponent != 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

BigInt determinant(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  Matrix a = m;
  BigInt previous_pivot = 1;
  int sign = 1;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (sgn(a(p, p)) == 0) {
      std::size_t swap_row = p + 1;
      while (swap_row < n && sgn(a(swap_row, p)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < n; ++i) {
      for (std::size_t j = p + 1; j < n; ++j) {
        // a_ij <- (a_pp * a_ij - a_ip * a_pj) / previous pivot, exact by Sylvester's identity
        BigInt numer = a(p, p) * a(i, j) - a(i, p) * a(p, j);
        mpz_divexact(a(i, j).get_mpz_t(), numer.get_mpz_t(), previous_pivot.get_mpz_t());
      }
      a(i, p) = 0;
    }
    previous_pivot = a(p, p);
  }
  BigInt det = a(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

Matrix adjugate(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate: not square");
  const std::size_t n = m.rows();
  Matrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  Matrix minor(n - 1, n - 1);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == col) continue;
          minor(mi, mj++) = m(i, j);
        }
        ++mi;
      }
      BigInt cofactor = determinant(minor);
      if ((row + col) % 2 == 1) cofactor = -cofactor;
      adj(col, row) = std::move(cofactor);
    }
  }
  return adj;
}

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  BigInt acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return acc;
}

std::string to_string(std::span<const BigInt> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << to_string(m.row(i));
  os << ']';
  return os.str();
}

}  // namespace rnacci
