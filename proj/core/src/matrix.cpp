#include "lgsing/matrix.hpp"

#include <sstream>

#include "lgsing/error.hpp"

namespace lgsing {

std::size_t rank(const ScalarMatrix& m) {
  const Field& field = m.field();
  ScalarMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a.at(pivot, c) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != r) {
      for (std::size_t k = c; k < a.cols(); ++k) std::swap(a.at(pivot, k), a.at(r, k));
    }
    Scalar inv = field.inv(a.at(r, c));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a.at(i, c) == 0) continue;
      Scalar factor = field.mul(a.at(i, c), inv);
      for (std::size_t k = c; k < a.cols(); ++k) {
        if (a.at(r, k) == 0) continue;
        a.at(i, k) = field.sub(a.at(i, k), field.mul(factor, a.at(r, k)));
      }
    }
    ++r;
  }
  return r;
}

PolyMatrix::PolyMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring_)) {}

PolyMatrix PolyMatrix::identity(Ring ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  Poly one = Poly::constant(ring, 1);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = one;
  return m;
}

PolyMatrix PolyMatrix::scalar(const Poly& c, std::size_t n) {
  PolyMatrix m(c.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = c;
  return m;
}

PolyMatrix PolyMatrix::from_rows(Ring ring, const std::vector<std::vector<Poly>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  PolyMatrix m(ring, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ParseError("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void PolyMatrix::set(std::size_t r, std::size_t c, Poly value) {
  if (!same_ring(value.ring(), ring_)) throw PreconditionError("matrix entry from a different ring");
  entries_[r * cols_ + c] = std::move(value);
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool PolyMatrix::first_nonzero(std::size_t& r, std::size_t& c) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].is_zero()) {
      r = i / cols_;
      c = i % cols_;
      return true;
    }
  }
  return false;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (cols_ != other.rows_) {
    throw PreconditionError("matrix shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                            " times " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
  }
  if (!same_ring(ring_, other.ring_)) throw PreconditionError("matrix ring mismatch in product");
  PolyMatrix out(ring_, rows_, other.cols_);
  // Sparse pattern of the right factor.
  std::vector<std::vector<std::size_t>> nz(other.rows_);
  for (std::size_t k = 0; k < other.rows_; ++k) {
    for (std::size_t j = 0; j < other.cols_; ++j) {
      if (!other.at(k, j).is_zero()) nz[k].push_back(j);
    }
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j : nz[k]) out.entries_[i * out.cols_ + j] += a * other.at(k, j);
    }
  }
  return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  if (!same_shape(other)) throw PreconditionError("matrix shape mismatch in sum");
  PolyMatrix out(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += other.entries_[i];
  return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
  if (!same_shape(other)) throw PreconditionError("matrix shape mismatch in difference");
  PolyMatrix out(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= other.entries_[i];
  return out;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out(*this);
  for (auto& e : out.entries_) {
    if (!e.is_zero()) e = -e;
  }
  return out;
}

PolyMatrix PolyMatrix::times(const Poly& c) const {
  PolyMatrix out(*this);
  for (auto& e : out.entries_) {
    if (!e.is_zero()) e = e * c;
  }
  return out;
}

PolyMatrix PolyMatrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const {
  if (row + rows > rows_ || col + cols > cols_) throw PreconditionError("block out of range");
  PolyMatrix out(ring_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.entries_[r * cols + c] = at(row + r, col + c);
  }
  return out;
}

void PolyMatrix::set_block(std::size_t row, std::size_t col, const PolyMatrix& b) {
  if (row + b.rows_ > rows_ || col + b.cols_ > cols_) throw PreconditionError("set_block out of range");
  if (!same_ring(b.ring_, ring_)) throw PreconditionError("set_block ring mismatch");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) entries_[(row + r) * cols_ + col + c] = b.at(r, c);
  }
}

PolyMatrix PolyMatrix::select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
  PolyMatrix out(ring_, row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r) {
    for (std::size_t c = 0; c < col_idx.size(); ++c) out.entries_[r * col_idx.size() + c] = at(row_idx[r], col_idx[c]);
  }
  return out;
}

PolyMatrix PolyMatrix::lift(const Ring& target, const std::vector<std::size_t>& var_map) const {
  PolyMatrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].is_zero()) out.entries_[i] = entries_[i].lift(target, var_map);
  }
  return out;
}

ScalarMatrix PolyMatrix::evaluate(const Point& pt) const {
  ScalarMatrix out(ring_->base(), rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Poly& e = at(r, c);
      if (!e.is_zero()) out.at(r, c) = lgsing::evaluate(e, pt);
    }
  }
  return out;
}

bool PolyMatrix::operator==(const PolyMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && same_ring(ring_, other.ring_) &&
         entries_ == other.entries_;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << at(r, c).to_string();
    }
  }
  os << "]";
  return os.str();
}

PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
  if (!same_ring(a.ring(), b.ring())) throw PreconditionError("kron ring mismatch");
  PolyMatrix out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Poly& x = a.at(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Poly& y = b.at(k, l);
          if (!y.is_zero()) out.set(i * b.rows() + k, j * b.cols() + l, x * y);
        }
      }
    }
  }
  return out;
}

}  // namespace lgsing
