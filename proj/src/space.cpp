#include "matspace/space.hpp"

#include <sstream>

namespace matspace {

namespace {

Matrix nonzero_rows(const RrefResult& r) {
  Matrix out(r.reduced.field(), r.rank, r.reduced.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < r.reduced.cols(); ++j) out(i, j) = r.reduced(i, j);
  return out;
}

Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

void require_compatible(const MatSpace& v, const MatSpace& u) {
  if (v.n() != u.n()) throw Error(ErrorCode::shape_mismatch, "subspaces of different Mat_n");
  if (!(v.field() == u.field())) throw Error(ErrorCode::field_mismatch, "subspaces over different fields");
}

}  // namespace

// ---------------------------------------------------------------- VecSpace

VecSpace VecSpace::span(const Field& field, std::size_t n, const std::vector<Vector>& vectors) {
  Matrix rows = Matrix::from_row_vectors(field, n, vectors);
  return VecSpace(nonzero_rows(rref(rows)));
}

VecSpace VecSpace::zero(const Field& field, std::size_t n) { return VecSpace(Matrix(field, 0, n)); }

VecSpace VecSpace::full(const Field& field, std::size_t n) { return VecSpace(Matrix::identity(field, n)); }

std::vector<Vector> VecSpace::vectors() const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
  return out;
}

bool VecSpace::contains(const Vector& v) const {
  if (v.dim() != ambient_dim()) throw Error(ErrorCode::shape_mismatch, "vector length");
  std::vector<Vector> rows = vectors();
  rows.push_back(v);
  return rank(Matrix::from_row_vectors(field(), ambient_dim(), rows)) == dim();
}

// ---------------------------------------------------------------- MatSpace

MatSpace MatSpace::span(const Field& field, std::size_t n, const std::vector<Matrix>& mats) {
  std::vector<Vector> rows;
  rows.reserve(mats.size());
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::shape_mismatch, "expected " + std::to_string(n) + "x" + std::to_string(n));
    if (!(m.field() == field)) throw Error(ErrorCode::field_mismatch, m.field().name() + " vs " + field.name());
    rows.push_back(m.vectorize());
  }
  return from_coordinates(field, n, Matrix::from_row_vectors(field, n * n, rows));
}

MatSpace MatSpace::zero(const Field& field, std::size_t n) { return MatSpace(n, Matrix(field, 0, n * n), {}); }

MatSpace MatSpace::from_coordinates(const Field& field, std::size_t n, const Matrix& rows) {
  if (rows.cols() != n * n) throw Error(ErrorCode::shape_mismatch, "coordinate rows must have n^2 entries");
  if (!(rows.field() == field)) throw Error(ErrorCode::field_mismatch, "coordinate rows");
  RrefResult r = rref(rows);
  return MatSpace(n, nonzero_rows(r), std::move(r.pivots));
}

Matrix MatSpace::basis_matrix(std::size_t k) const { return Matrix::unvectorize(coords_.row(k), n_); }

std::vector<Matrix> MatSpace::basis() const {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_matrix(k));
  return out;
}

bool MatSpace::contains(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorCode::shape_mismatch, "membership test");
  // residual elimination against the canonical basis
  Vector residual = m.vectorize();
  for (std::size_t k = 0; k < dim(); ++k) {
    Scalar c = residual[pivots_[k]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < coords_.cols(); ++j) residual[j] -= c * coords_(k, j);
  }
  return residual.is_zero();
}

Vector MatSpace::coordinates_of(const Matrix& m) const {
  if (!contains(m)) throw Error(ErrorCode::shape_mismatch, "matrix is not in the subspace");
  // the RREF basis has a 1 at its pivot and zeros at every other pivot
  Vector v = m.vectorize();
  Vector c(field(), dim());
  for (std::size_t k = 0; k < dim(); ++k) c[k] = v[pivots_[k]];
  return c;
}

std::string MatSpace::to_string() const {
  std::ostringstream os;
  os << "span{";
  for (std::size_t k = 0; k < dim(); ++k) os << (k ? ", " : "") << basis_matrix(k).to_string();
  os << "} over " << field().name();
  return os.str();
}

// ---------------------------------------------------------------- lattice

MatSpace sum(const MatSpace& v, const MatSpace& u) {
  require_compatible(v, u);
  return MatSpace::from_coordinates(v.field(), v.n(), stack(v.coordinates(), u.coordinates()));
}

MatSpace intersect(const MatSpace& v, const MatSpace& u) {
  require_compatible(v, u);
  // (a, b) with a.V + b.U = 0 gives a.V in V ∩ U
  Matrix both = stack(v.coordinates(), u.coordinates());
  std::vector<Vector> rel = kernel_basis(both.transpose());
  std::vector<Vector> rows;
  for (const auto& r : rel) {
    Vector x(v.field(), v.n() * v.n());
    for (std::size_t k = 0; k < v.dim(); ++k)
      for (std::size_t j = 0; j < x.dim(); ++j) x[j] += r[k] * v.coordinates()(k, j);
    rows.push_back(std::move(x));
  }
  MatSpace out = MatSpace::from_coordinates(v.field(), v.n(), Matrix::from_row_vectors(v.field(), v.n() * v.n(), rows));
  if (out.dim() + sum(v, u).dim() != v.dim() + u.dim())
    throw Error(ErrorCode::unsupported, "intersection failed the dimension identity");
  return out;
}

Scalar trace_form(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || b.rows() != b.cols())
    throw Error(ErrorCode::shape_mismatch, "trace form");
  Scalar s = a.field().zero();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  return s;
}

MatSpace orth_complement(const MatSpace& v) {
  const std::size_t n = v.n();
  std::vector<Vector> rows;
  for (std::size_t k = 0; k < v.dim(); ++k) rows.push_back(v.basis_matrix(k).transpose().vectorize());
  Matrix system = Matrix::from_row_vectors(v.field(), n * n, rows);
  std::vector<Vector> ker = kernel_basis(system);
  return MatSpace::from_coordinates(v.field(), n, Matrix::from_row_vectors(v.field(), n * n, ker));
}

MatSpace transform(const MatSpace& v, const Matrix& p, TransformMode mode) {
  if (!p.is_square() || p.rows() != v.n()) throw Error(ErrorCode::shape_mismatch, "transform matrix");
  if (!(p.field() == v.field())) throw Error(ErrorCode::field_mismatch, "transform matrix");
  std::vector<Matrix> mats;
  switch (mode) {
    case TransformMode::conjugate: {
      Matrix pinv = invert(p);
      for (const auto& m : v.basis()) mats.push_back(p * m * pinv);
      break;
    }
    case TransformMode::left:
      for (const auto& m : v.basis()) mats.push_back(p * m);
      break;
    case TransformMode::right:
      for (const auto& m : v.basis()) mats.push_back(m * p);
      break;
  }
  return MatSpace::span(v.field(), v.n(), mats);
}

// ---------------------------------------------------------------- standard spaces

MatSpace standard_space(StandardKind kind, std::size_t n, const Field& f) {
  if (n == 0) throw Error(ErrorCode::shape_mismatch, "n must be positive");
  std::vector<Matrix> gens;
  auto e = [&](std::size_t i, std::size_t j) { return Matrix::unit(f, n, i, j); };
  switch (kind) {
    case StandardKind::sym:
      for (std::size_t i = 0; i < n; ++i) {
        gens.push_back(e(i, i));
        for (std::size_t j = i + 1; j < n; ++j) gens.push_back(e(i, j) + e(j, i));
      }
      break;
    case StandardKind::alt:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) gens.push_back(e(i, j) - e(j, i));
      break;
    case StandardKind::strict_upper:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) gens.push_back(e(i, j));
      break;
    case StandardKind::diagonal:
      for (std::size_t i = 0; i < n; ++i) gens.push_back(e(i, i));
      break;
    case StandardKind::scalar:
      gens.push_back(Matrix::identity(f, n));
      break;
    case StandardKind::full:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gens.push_back(e(i, j));
      break;
  }
  return MatSpace::span(f, n, gens);
}

StandardKind parse_standard_kind(std::string_view name) {
  if (name == "sym") return StandardKind::sym;
  if (name == "alt") return StandardKind::alt;
  if (name == "strict_upper") return StandardKind::strict_upper;
  if (name == "diagonal") return StandardKind::diagonal;
  if (name == "scalar") return StandardKind::scalar;
  if (name == "full") return StandardKind::full;
  throw Error(ErrorCode::parse_error, "unknown standard space '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- elements

std::uint64_t element_count(const MatSpace& v) {
  if (!v.field().is_finite()) throw Error(ErrorCode::infinite_field, "Q has infinitely many elements");
  const std::uint64_t q = v.field().modulus();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (total > UINT64_MAX / q) return UINT64_MAX;
    total *= q;
  }
  return total;
}

bool for_each_element(const MatSpace& v, std::uint64_t budget, const std::function<bool(const Matrix&)>& visit) {
  const std::uint64_t total = element_count(v);
  if (total > budget)
    throw Error(ErrorCode::budget_exceeded, std::to_string(v.field().modulus()) + "^" + std::to_string(v.dim()) +
                                                " elements exceed budget " + std::to_string(budget));
  const Field& f = v.field();
  const std::size_t d = v.dim();
  const std::vector<Matrix> basis = v.basis();
  std::vector<std::uint64_t> coeff(d, 0);
  Matrix current(f, v.n(), v.n());
  for (std::uint64_t step = 0; step < total; ++step) {
    if (!visit(current)) return false;
    // odometer, first coefficient fastest; each digit bump adds one basis matrix
    for (std::size_t k = 0; k < d; ++k) {
      current += basis[k];
      if (++coeff[k] < f.modulus()) break;
      coeff[k] = 0;  // q * basis[k] = 0, so current is already consistent
    }
  }
  return true;
}

std::vector<Matrix> elements(const MatSpace& v, std::uint64_t budget) {
  std::vector<Matrix> out;
  for_each_element(v, budget, [&](const Matrix& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace matspace
