#pragma once

// Linear subspaces of F^n and of Mat_n(F), kept in canonical RREF form so
// that subspace equality is equality of bases.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "matspace/matrix.hpp"

namespace matspace {

/// Subspace of F^n; basis rows are the nonzero rows of an RREF.
class VecSpace {
 public:
  static VecSpace span(const Field& field, std::size_t n, const std::vector<Vector>& vectors);
  static VecSpace zero(const Field& field, std::size_t n);
  static VecSpace full(const Field& field, std::size_t n);

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<Vector> vectors() const;

  bool contains(const Vector& v) const;

  friend bool operator==(const VecSpace& a, const VecSpace& b) { return a.basis_ == b.basis_; }

 private:
  explicit VecSpace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Subspace of Mat_n(F). Matrices are vectorized row-major into F^{n^2};
/// the canonical basis is the RREF of those coordinate rows.
class MatSpace {
 public:
  /// Throws ShapeMismatch / FieldMismatch on inconsistent inputs.
  static MatSpace span(const Field& field, std::size_t n, const std::vector<Matrix>& mats);
  static MatSpace zero(const Field& field, std::size_t n);
  /// Rows are row-major n^2 coordinate vectors; need not be reduced.
  static MatSpace from_coordinates(const Field& field, std::size_t n, const Matrix& rows);

  const Field& field() const noexcept { return coords_.field(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return coords_.rows(); }
  /// dim x n^2, in RREF.
  const Matrix& coordinates() const noexcept { return coords_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Matrix basis_matrix(std::size_t k) const;
  std::vector<Matrix> basis() const;

  bool contains(const Matrix& m) const;
  /// Coefficients of m over the canonical basis; m must lie in the space.
  Vector coordinates_of(const Matrix& m) const;

  friend bool operator==(const MatSpace& a, const MatSpace& b) { return a.n_ == b.n_ && a.coords_ == b.coords_; }

  std::string to_string() const;

 private:
  MatSpace(std::size_t n, Matrix coords, std::vector<std::size_t> pivots)
      : n_(n), coords_(std::move(coords)), pivots_(std::move(pivots)) {}

  std::size_t n_;
  Matrix coords_;
  std::vector<std::size_t> pivots_;
};

MatSpace sum(const MatSpace& v, const MatSpace& u);
MatSpace intersect(const MatSpace& v, const MatSpace& u);

/// tr(AB) = sum_{i,j} A_ij B_ji
Scalar trace_form(const Matrix& a, const Matrix& b);

/// {B : tr(AB) = 0 for all A in V}. Built as the kernel of the rows
/// vec(A^T), since vec(A^T) . vec(B) = tr(AB) in row-major coordinates.
MatSpace orth_complement(const MatSpace& v);

enum class TransformMode { conjugate, left, right };

/// conjugate: P V P^-1 (throws Singular), left: P V, right: V P.
MatSpace transform(const MatSpace& v, const Matrix& p, TransformMode mode);

enum class StandardKind { sym, alt, strict_upper, diagonal, scalar, full };

/// Alternating means A^T = -A with zero diagonal in every characteristic.
MatSpace standard_space(StandardKind kind, std::size_t n, const Field& field);
StandardKind parse_standard_kind(std::string_view name);

/// q^dim, saturating at UINT64_MAX. Throws InfiniteField over Q.
std::uint64_t element_count(const MatSpace& v);

/// Visits every element once (coefficient tuples over the canonical basis,
/// first coefficient fastest). The visitor returns false to stop early;
/// the function returns false iff it was stopped. Throws InfiniteField,
/// or BudgetExceeded when q^dim > budget.
bool for_each_element(const MatSpace& v, std::uint64_t budget, const std::function<bool(const Matrix&)>& visit);
std::vector<Matrix> elements(const MatSpace& v, std::uint64_t budget);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

}  // namespace matspace
