#pragma once

// Dense exact linear algebra over a Field. Sizes here never exceed a few
// hundred, so everything is plain Gaussian elimination.

#include <cstddef>
#include <optional>
#include <vector>

#include "fcunits/scalars.hpp"

namespace fcu {

using Vec = std::vector<Scalar>;

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec axpy(const Scalar& a, const Vec& x, const Vec& y);  // a*x + y

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  /// Columns are the given vectors.
  static Matrix from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows);

  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  bool operator==(const Matrix& rhs) const;
  Vec apply(const Vec& v) const;
  Matrix transpose() const;
  Vec column(std::size_t j) const;

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  Scalar determinant() const;
  std::optional<Matrix> inverse() const;
  /// Basis of {v : M v = 0}.
  std::vector<Vec> kernel() const;
  Scalar trace() const;

 private:
  const Field* field_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// A subspace of K^n kept as a reduced row echelon basis, so that the
/// coordinates of a member are read off at the pivot columns.
class Subspace {
 public:
  Subspace(const Field& f, std::size_t n) : field_(&f), n_(n) {}
  static Subspace span(const Field& f, std::size_t n, const std::vector<Vec>& vs);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Adds v to the span; returns false if it was already contained.
  bool insert(Vec v);
  /// v minus its projection along the pivots; zero iff v is a member.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  /// Coordinates of a member with respect to basis().
  Vec coordinates(const Vec& v) const;
  /// Standard basis vectors completing this subspace to K^n.
  std::vector<std::size_t> complement_indices() const;
  Subspace intersect(const Subspace& other) const;

 private:
  const Field* field_;
  std::size_t n_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace fcu
