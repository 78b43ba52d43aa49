#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lgsing/ring.hpp"

namespace lgsing {

/// Dense matrix of field elements, used after specializing at a point.
class ScalarMatrix {
 public:
  ScalarMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols) {}

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

/// Rank by Gaussian elimination with exact pivoting over the matrix's field.
std::size_t rank(const ScalarMatrix& m);
/// Dimension of the kernel of the map given by m (acting on column vectors).
inline std::size_t nullity(const ScalarMatrix& m) { return m.cols() - rank(m); }

/// Dense row-major matrix of polynomials over a common ring; acts on column vectors.
class PolyMatrix {
 public:
  PolyMatrix(Ring ring, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(Ring ring, std::size_t n);
  /// c * identity.
  static PolyMatrix scalar(const Poly& c, std::size_t n);
  /// Builds a matrix from rows of entries; all rows must have equal length.
  static PolyMatrix from_rows(Ring ring, const std::vector<std::vector<Poly>>& rows, std::size_t cols = 0);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Poly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Poly value);

  bool is_zero() const;
  bool same_shape(const PolyMatrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  PolyMatrix operator-() const;
  PolyMatrix times(const Poly& c) const;

  /// Sub-matrix of the given shape starting at (row, col).
  PolyMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
  /// Copies `b` into this matrix with its top-left corner at (row, col).
  void set_block(std::size_t row, std::size_t col, const PolyMatrix& b);
  /// Picks the listed rows and columns, in the listed order.
  PolyMatrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;

  PolyMatrix lift(const Ring& target, const std::vector<std::size_t>& var_map) const;
  ScalarMatrix evaluate(const Point& pt) const;

  /// First entry (row-major) that is nonzero, if any.
  bool first_nonzero(std::size_t& r, std::size_t& c) const;

  bool operator==(const PolyMatrix& other) const;
  bool operator!=(const PolyMatrix& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> entries_;
};

/// Kronecker product; basis of the result indexed by (i, j) -> i * b.rows() + j.
PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace lgsing
