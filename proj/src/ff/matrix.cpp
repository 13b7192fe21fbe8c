#include "ff/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "util/error.hpp"

namespace vc2::ff {

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_row_vectors(Field field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "vector length does not match column count");
    require(rows[r].field() == field, "vector field differs from matrix field");
    for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  auto s = row_span(r);
  return Vector(field_, std::vector<Residue>(s.begin(), s.end()));
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if (at(r, c) != at(c, r)) return false;
    }
  }
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  add_scaled(1, other);
  return *this;
}

Matrix Matrix::scaled(Residue c) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = field_.mul(x, c);
  return m;
}

void Matrix::add_scaled(Residue c, const Matrix& other) {
  require(field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_, "matrix shapes differ");
  if (c == 0) return;
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], field_.mul(c, other.data_[i]));
}

Vector Matrix::apply(const Vector& x) const {
  require(x.size() == cols_ && x.field() == field_, "matrix-vector shape mismatch");
  const std::uint64_t p = field_.p();
  std::vector<Residue> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const Residue* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + static_cast<std::uint64_t>(row[c]) * x[c]) % p;
    out[r] = static_cast<Residue>(acc);
  }
  return Vector(field_, std::move(out));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.field_ == b.field_ && a.cols_ == b.rows_, "matrix product shape mismatch");
  const std::uint64_t p = a.field_.p();
  Matrix m(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) acc = (acc + static_cast<std::uint64_t>(a.at(r, k)) * b.at(k, c)) % p;
      m.data_[r * m.cols_ + c] = static_cast<Residue>(acc);
    }
  }
  return m;
}

Residue bilinear(const Vector& x, const Matrix& m, const Vector& y) {
  require(x.size() == m.rows() && y.size() == m.cols(), "bilinear form shape mismatch");
  return dot(x, m.apply(y));
}

Echelon row_reduce(Matrix m) {
  const Field f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && m.at(r, c) == 0) ++r;
    if (r == rows) continue;
    if (r != pivot_row) {
      for (std::size_t k = 0; k < cols; ++k) {
        const Residue tmp = m.at(r, k);
        m.set(r, k, m.at(pivot_row, k));
        m.set(pivot_row, k, tmp);
      }
    }
    const Residue inv = f.inverse(m.at(pivot_row, c));
    for (std::size_t k = c; k < cols; ++k) m.set(pivot_row, k, f.mul(m.at(pivot_row, k), inv));
    for (std::size_t other = 0; other < rows; ++other) {
      if (other == pivot_row) continue;
      const Residue factor = m.at(other, c);
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        m.set(other, k, f.sub(m.at(other, k), f.mul(factor, m.at(pivot_row, k))));
      }
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  // Forward elimination only; cheaper than a full reduction.
  const Field f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Residue> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto s = m.row_span(r);
    std::copy(s.begin(), s.end(), a.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  const std::uint64_t p = f.p();
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t r = rk;
    while (r < rows && a[r * cols + c] == 0) ++r;
    if (r == rows) continue;
    if (r != rk) {
      for (std::size_t k = c; k < cols; ++k) std::swap(a[r * cols + k], a[rk * cols + k]);
    }
    const Residue inv = f.inverse(a[rk * cols + c]);
    for (std::size_t below = rk + 1; below < rows; ++below) {
      const Residue lead = a[below * cols + c];
      if (lead == 0) continue;
      const std::uint64_t factor = p - static_cast<std::uint64_t>(f.mul(lead, inv));
      for (std::size_t k = c; k < cols; ++k) {
        a[below * cols + k] = static_cast<Residue>((a[below * cols + k] + factor * a[rk * cols + k]) % p);
      }
    }
    ++rk;
  }
  return rk;
}

std::size_t rank(const std::vector<Vector>& vectors, std::size_t n) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_row_vectors(vectors.front().field(), vectors, n));
}

namespace {

void normalize_leading(Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      v = v.scaled(v.field().inverse(v[i]));
      return;
    }
  }
}

std::vector<Vector> null_basis_from(const Echelon& e) {
  const Field f = e.reduced.field();
  const std::size_t cols = e.reduced.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(f, cols);
    v.set(free, 1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      v.set(e.pivot_cols[i], f.neg(e.reduced.at(i, free)));
    }
    normalize_leading(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
  require(a.rows() == b.size(), "solve_affine: A has " + std::to_string(a.rows()) + " rows but b has " +
                                    std::to_string(b.size()) + " coordinates");
  require(a.field() == b.field(), "solve_affine: field mismatch");
  const Field f = a.field();
  const std::size_t cols = a.cols();
  Matrix augmented(f, a.rows(), cols + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) augmented.set(r, c, a.at(r, c));
    augmented.set(r, cols, b[r]);
  }
  Echelon e = row_reduce(std::move(augmented));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == cols) return std::nullopt;

  Vector particular(f, cols);
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) particular.set(e.pivot_cols[i], e.reduced.at(i, cols));

  // Null space of A: drop the augmented column from the echelon form.
  Matrix reduced(f, e.reduced.rows(), cols);
  for (std::size_t r = 0; r < e.reduced.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) reduced.set(r, c, e.reduced.at(r, c));
  }
  Echelon homogeneous{std::move(reduced), e.pivot_cols};
  return AffineSolution{std::move(particular), null_basis_from(homogeneous)};
}

std::vector<Vector> null_space(const Matrix& m) { return null_basis_from(row_reduce(m)); }

std::vector<Vector> orth_complement(Field field, const std::vector<Vector>& vectors, std::size_t n) {
  for (const auto& v : vectors) require(v.size() == n, "orth_complement: vectors must all have length n");
  if (vectors.empty()) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(Vector::unit(field, n, i));
    return basis;
  }
  return null_space(Matrix::from_row_vectors(field, vectors, n));
}

}  // namespace vc2::ff
