#include "fcunits/linalg.hpp"

#include <algorithm>

namespace fcu {

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = f.one();
  return v;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec axpy(const Scalar& a, const Vec& x, const Vec& y) {
  Vec out = y;
  if (a.is_zero()) return out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out[i] += a * x[i];
  return out;
}

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  Matrix out(*field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

Vec Matrix::apply(const Vec& v) const {
  Vec out = zero_vec(*field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(*field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Vec Matrix::column(std::size_t j) const {
  Vec out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && (*this)(sel, col).is_zero()) ++sel;
    if (sel == rows_) continue;
    if (sel != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
    const Scalar inv = (*this)(row, col).inv();
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || (*this)(i, col).is_zero()) continue;
      const Scalar factor = (*this)(i, col);
      for (std::size_t j = col; j < cols_; ++j)
        if (!(*this)(row, j).is_zero()) (*this)(i, j) -= factor * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.rref().size();
}

Scalar Matrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::Schema, "determinant of a non-square matrix");
  Matrix m = *this;
  Scalar det = field_->one();
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t sel = col;
    while (sel < rows_ && m(sel, col).is_zero()) ++sel;
    if (sel == rows_) return field_->zero();
    if (sel != col) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(sel, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = m(col, col).inv();
    for (std::size_t i = col + 1; i < rows_; ++i) {
      if (m(i, col).is_zero()) continue;
      const Scalar factor = m(i, col) * inv;
      for (std::size_t j = col; j < cols_; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Matrix aug(*field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = field_->one();
  }
  auto piv = aug.rref();
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix out(*field_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::vector<Vec> Matrix::kernel() const {
  Matrix m = *this;
  auto piv = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(*field_, cols_);
    v[free] = field_->one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar Matrix::trace() const {
  Scalar t = field_->zero();
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  const std::size_t n = m.cols();
  Matrix aug(m.field(), m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  auto piv = aug.rref();
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  Vec x = zero_vec(m.field(), n);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, n);
  return x;
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(const Field& f, std::size_t n, const std::vector<Vec>& vs) {
  Subspace s(f, n);
  for (const auto& v : vs) s.insert(v);
  return s;
}

Vec Subspace::reduce(Vec v) const {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const Scalar c = v[pivots_[r]];
    if (!c.is_zero()) v = axpy(-c, basis_[r], v);
  }
  return v;
}

bool Subspace::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < n_ && v[p].is_zero()) ++p;
  if (p == n_) return false;
  const Scalar inv = v[p].inv();
  for (auto& x : v) x *= inv;
  // Keep the basis fully reduced.
  for (auto& b : basis_) {
    const Scalar c = b[p];
    if (!c.is_zero()) b = axpy(-c, v, b);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  basis_.insert(basis_.begin() + pos, std::move(v));
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec c;
  c.reserve(basis_.size());
  for (auto p : pivots_) c.push_back(v[p]);
  return c;
}

std::vector<std::size_t> Subspace::complement_indices() const {
  std::vector<std::size_t> out;
  std::size_t r = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (r < pivots_.size() && pivots_[r] == i) {
      ++r;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Solve sum a_i b_i = sum c_j o_j; the left sides span the intersection.
  const std::size_t m = basis_.size(), k = other.basis_.size();
  Matrix sys(*field_, n_, m + k);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < m; ++j) sys(i, j) = basis_[j][i];
    for (std::size_t j = 0; j < k; ++j) sys(i, m + j) = -other.basis_[j][i];
  }
  Subspace out(*field_, n_);
  for (const auto& sol : sys.kernel()) {
    Vec v = zero_vec(*field_, n_);
    for (std::size_t j = 0; j < m; ++j) v = axpy(sol[j], basis_[j], v);
    out.insert(std::move(v));
  }
  return out;
}

}  // namespace fcu
