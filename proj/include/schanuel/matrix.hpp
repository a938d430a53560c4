#pragma once

// Dense matrices over F_p and the exact linear algebra everything else is
// built on. Zero-row and zero-column matrices are ordinary values.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "schanuel/field.hpp"
#include "schanuel/kernels.hpp"

namespace schanuel {

class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols);

  static Matrix identity(PrimeField field, std::size_t n);
  /// Entries are reduced mod p; all rows must have length `cols`.
  static Matrix from_rows(PrimeField field, std::size_t rows, std::size_t cols,
                          std::initializer_list<std::int64_t> row_major);
  static Matrix from_values(PrimeField field, std::size_t rows, std::size_t cols,
                            std::span<const std::int64_t> row_major);
  static Matrix column(PrimeField field, std::span<const Scalar> values);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v) noexcept { data_[r * cols_ + c] = v % field_.p(); }

  std::span<Scalar> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Scalar> values() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(Scalar c) const;
  Matrix& operator+=(const Matrix& rhs);

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix select_cols(std::span<const std::size_t> cols) const;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept;

 private:
  PrimeField field_;
  kernels::Modulus modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Block-diagonal matrix; an empty list gives a 0x0 matrix over `field`.
Matrix block_diagonal(PrimeField field, std::span<const Matrix> blocks);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of {v : m v = 0}, one column per free variable in
/// ascending order; each column is 1 at its own free variable and 0 at the others.
Matrix kernel_basis(const Matrix& m);

struct KernelBasis {
  Matrix basis;
  std::vector<std::size_t> free_columns;
};
KernelBasis kernel_with_free_columns(const Matrix& m);

/// Some x with a x = b (free variables zero), or nullopt when inconsistent.
/// Throws Error(DimensionMismatch) when rows differ.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

/// A surjection proj : F^rows -> F^dim whose kernel is the column space of m.
/// Coordinates are those complementary to the pivot coordinates of the column
/// space; `section` embeds F^dim back on those coordinates, so proj * section = I.
struct CokernelProjection {
  Matrix proj;
  std::size_t dim = 0;
  Matrix section;
  std::vector<std::size_t> complement;
};

CokernelProjection cokernel_projection(const Matrix& m);

/// Throws Error(NotSquare) for non-square input.
std::optional<Matrix> invert(const Matrix& m);
bool is_invertible(const Matrix& m);

}  // namespace schanuel
