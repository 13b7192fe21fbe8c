#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ff/field.hpp"
#include "ff/vector.hpp"

namespace vc2::ff {

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, const std::vector<std::vector<std::int64_t>>& rows);
  /// Stacks the vectors as rows; `cols` is used when the list is empty.
  static Matrix from_row_vectors(Field field, const std::vector<Vector>& rows, std::size_t cols);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }
  std::span<const Residue> row_span(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector row(std::size_t r) const;

  Matrix transpose() const;
  bool is_symmetric() const;

  Matrix& operator+=(const Matrix& other);
  Matrix scaled(Residue c) const;
  /// this += c * other
  void add_scaled(Residue c, const Matrix& other);

  Vector apply(const Vector& x) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

/// x^T M y.
Residue bilinear(const Vector& x, const Matrix& m, const Vector& y);

/// Rank over F_p by row reduction.
std::size_t rank(const Matrix& m);

/// Rank of a list of vectors of common length n.
std::size_t rank(const std::vector<Vector>& vectors, std::size_t n);

/// Reduced row echelon form (leftmost pivot, first nonzero row as pivot).
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};
Echelon row_reduce(Matrix m);

/// Parametrization {particular + sum_i t_i * null_basis[i]} of {x : Ax = b}.
struct AffineSolution {
  Vector particular;
  std::vector<Vector> null_basis;

  std::size_t dimension() const noexcept { return null_basis.size(); }
};

/// Solves Ax = b. Returns nullopt when the system is inconsistent; throws
/// Error(invalid_argument) on a dimension mismatch. Free variables are set to
/// zero in the particular solution; each null-basis vector has leading
/// coordinate 1.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);

/// Basis of {x : Mx = 0}, one vector per free column in ascending order,
/// normalized to leading coordinate 1.
std::vector<Vector> null_space(const Matrix& m);

/// Basis of {u : <u, v> = 0 for all v in V} inside F_p^n.
std::vector<Vector> orth_complement(Field field, const std::vector<Vector>& vectors, std::size_t n);

}  // namespace vc2::ff
