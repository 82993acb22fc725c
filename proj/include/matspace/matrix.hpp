#pragma once

// Dense exact matrices and column vectors over a single Field.

#include <cstddef>
#include <string>
#include <vector>

#include "matspace/field.hpp"
#include "matspace/poly.hpp"

namespace matspace {

/// Column vector.
class Vector {
 public:
  Vector(const Field& field, std::size_t dim);
  Vector(const Field& field, std::vector<Scalar> entries);

  /// Standard basis vector e_i (0-based).
  static Vector unit(const Field& field, std::size_t dim, std::size_t i);
  static Vector from_ints(const Field& field, const std::vector<long long>& v);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return e_.size(); }
  const Scalar& operator[](std::size_t i) const { return e_[i]; }
  Scalar& operator[](std::size_t i) { return e_[i]; }
  const std::vector<Scalar>& entries() const noexcept { return e_; }
  bool is_zero() const;

  friend bool operator==(const Vector& a, const Vector& b) { return a.field_ == b.field_ && a.e_ == b.e_; }

  std::string to_string() const;

 private:
  Field field_;
  std::vector<Scalar> e_;
};

class Matrix {
 public:
  Matrix(const Field& field, std::size_t rows, std::size_t cols);

  static Matrix zero(const Field& field, std::size_t rows, std::size_t cols) { return Matrix(field, rows, cols); }
  static Matrix identity(const Field& field, std::size_t n);
  /// E_{i,j}: a single 1 at (i, j), 0-based.
  static Matrix unit(const Field& field, std::size_t n, std::size_t i, std::size_t j);
  static Matrix diagonal(const std::vector<Scalar>& d);
  static Matrix from_rows(const Field& field, const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_ints(const Field& field, const std::vector<std::vector<long long>>& rows);
  /// Stack vectors as rows.
  static Matrix from_row_vectors(const Field& field, std::size_t cols, const std::vector<Vector>& rows);
  /// Inverse of vectorize(): n x n matrix from a row-major n^2 vector.
  static Matrix unvectorize(const Vector& v, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  /// Row-major n^2 coordinate vector.
  Vector vectorize() const;

  Matrix transpose() const;
  Scalar trace() const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_diagonal() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix a);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. GF(2) inputs with at most 64 columns take the
/// bit-packed route; everything else uses the generic elimination below.
RrefResult rref(const Matrix& m);
RrefResult rref_generic(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {X : M X = 0}: one vector per free column, with a 1 in that
/// column and zeros in the other free columns.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Throws Singular when rank < n.
Matrix invert(const Matrix& m);
bool is_invertible(const Matrix& m);
Scalar determinant(const Matrix& m);

/// det(tI - M), division-free (Berkowitz).
Poly char_poly(const Matrix& m);
/// First linear dependency among I, M, M^2, ...
Poly min_poly(const Matrix& m);
/// p(M)
Matrix eval(const Poly& p, const Matrix& m);

/// Distinct roots of the characteristic polynomial lying in the field,
/// in canonical order.
std::vector<Scalar> eigenvalues_in_field(const Matrix& m);
/// Distinct roots of p lying in the field, in canonical order.
std::vector<Scalar> roots_in_field(const Poly& p);

/// Diagonalizable over the ground field: the minimal polynomial is
/// squarefree and splits into linear factors.
bool is_diagonalizable(const Matrix& m);

/// Largest field size for which roots are found by scanning every element.
inline constexpr std::uint64_t kRootScanLimit = 10'000;

}  // namespace matspace
