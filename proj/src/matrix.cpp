#include "schanuel/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "schanuel/error.hpp"

namespace schanuel {
namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::DimensionMismatch, "matrices over different fields");
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field),
      modulus_(kernels::Modulus::make(field.p())),
      rows_(rows),
      cols_(cols),
      data_(rows * cols, 0) {}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t rows, std::size_t cols,
                         std::initializer_list<std::int64_t> row_major) {
  return from_values(field, rows, cols, std::span<const std::int64_t>(row_major.begin(), row_major.size()));
}

Matrix Matrix::from_values(PrimeField field, std::size_t rows, std::size_t cols,
                           std::span<const std::int64_t> row_major) {
  if (row_major.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(row_major.size()));
  }
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < row_major.size(); ++i) m.data_[i] = field.reduce(row_major[i]);
  return m;
}

Matrix Matrix::column(PrimeField field, std::span<const Scalar> values) {
  Matrix m(field, values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i] = values[i] % field.p();
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
}

bool Matrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_field(*this, rhs);
  if (cols_ != rhs.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "product " + shape(*this) + " * " + shape(rhs));
  }
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar a = data_[i * cols_ + k];
      if (a != 0) kernels::axpy(dst, rhs.row(k), a, modulus_);
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_field(*this, rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "sum " + shape(*this) + " + " + shape(rhs));
  }
  kernels::axpy(data_, rhs.data_, 1 % field_.p(), modulus_);
  return *this;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix Matrix::operator-() const { return scaled(field_.neg(1 % field_.p())); }

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + (-rhs); }

Matrix Matrix::scaled(Scalar c) const {
  Matrix out = *this;
  kernels::scale(out.data_, c % field_.p(), modulus_);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block out of range of " + shape(*this));
  }
  Matrix out(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
  }
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "set_block out of range of " + shape(*this));
  }
  for (std::size_t r = 0; r < b.rows_; ++r) {
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(r * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
  }
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) out.data_[r * cols.size() + j] = (*this)(r, cols[j]);
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) noexcept {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "hstack " + shape(a) + " | " + shape(b));
  }
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "vstack " + shape(a) + " / " + shape(b));
  }
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

Matrix block_diagonal(PrimeField field, std::span<const Matrix> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(field, rows, cols);
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}, 0};
  Matrix& a = res.reduced;
  const PrimeField& f = m.field();
  const auto mod = kernels::Modulus::make(f.p());
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r) {
      auto x = a.row(piv);
      auto y = a.row(r);
      std::swap_ranges(x.begin() + static_cast<std::ptrdiff_t>(c), x.end(),
                       y.begin() + static_cast<std::ptrdiff_t>(c));
    }
    auto prow = a.row(r).subspan(c);
    kernels::scale(prow, f.inv(a(r, c)), mod);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const Scalar v = a(i, c);
      if (v != 0) kernels::axpy(a.row(i).subspan(c), prow, f.neg(v), mod);
    }
    res.pivot_columns.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) { return kernel_with_free_columns(m).basis; }

KernelBasis kernel_with_free_columns(const Matrix& m) {
  const RrefResult rr = rref(m);
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  Matrix basis(f, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t fc = free_cols[j];
    basis.set(fc, j, 1);
    for (std::size_t k = 0; k < rr.rank; ++k) {
      basis.set(rr.pivot_columns[k], j, f.neg(rr.reduced(k, fc)));
    }
  }
  return KernelBasis{std::move(basis), std::move(free_cols)};
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_right " + shape(a) + " x = " + shape(b));
  }
  require_same_field(a, b);
  const RrefResult rr = rref(hstack(a, b));
  Matrix x(a.field(), a.cols(), b.cols());
  for (std::size_t k = 0; k < rr.rank; ++k) {
    const std::size_t pc = rr.pivot_columns[k];
    if (pc >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(pc, j, rr.reduced(k, a.cols() + j));
  }
  return x;
}

CokernelProjection cokernel_projection(const Matrix& m) {
  const PrimeField& f = m.field();
  // Rows of rref(m^T) are a basis of the column space, in unit form on the pivots.
  const RrefResult rr = rref(m.transpose());
  const std::size_t n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (auto c : rr.pivot_columns) is_pivot[c] = true;
  CokernelProjection out{Matrix(f, 0, n), 0, Matrix(f, n, 0), {}};
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) out.complement.push_back(c);
  }
  out.dim = out.complement.size();
  out.proj = Matrix(f, out.dim, n);
  out.section = Matrix(f, n, out.dim);
  for (std::size_t j = 0; j < out.dim; ++j) {
    const std::size_t q = out.complement[j];
    out.proj.set(j, q, 1);
    out.section.set(q, j, 1);
    for (std::size_t k = 0; k < rr.rank; ++k) {
      out.proj.set(j, rr.pivot_columns[k], f.neg(rr.reduced(k, q)));
    }
  }
  return out;
}

std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "invert " + shape(m));
  const RrefResult rr = rref(hstack(m, Matrix::identity(m.field(), m.rows())));
  const std::size_t n = m.rows();
  if (n > 0 && (rr.rank < n || rr.pivot_columns[n - 1] != n - 1)) return std::nullopt;
  return rr.reduced.block(0, n, n, n);
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace schanuel
