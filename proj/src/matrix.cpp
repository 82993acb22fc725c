#include "matspace/matrix.hpp"

#include <sstream>
#include <utility>

#include "matspace/gf2.hpp"

namespace matspace {

namespace {

void require_field(const Field& a, const Field& b, const char* what) {
  if (!(a == b)) throw Error(ErrorCode::field_mismatch, std::string(what) + ": " + a.name() + " vs " + b.name());
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::shape_mismatch, std::string(what) + " needs a square matrix");
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(const Field& field, std::size_t dim) : field_(field), e_(dim, field.zero()) {}

Vector::Vector(const Field& field, std::vector<Scalar> entries) : field_(field), e_(std::move(entries)) {
  for (const auto& s : e_) require_field(field_, s.field(), "vector entry");
}

Vector Vector::unit(const Field& field, std::size_t dim, std::size_t i) {
  Vector v(field, dim);
  v[i] = field.one();
  return v;
}

Vector Vector::from_ints(const Field& field, const std::vector<long long>& v) {
  std::vector<Scalar> e;
  e.reserve(v.size());
  for (long long x : v) e.push_back(field.from_int(x));
  return Vector(field, std::move(e));
}

bool Vector::is_zero() const {
  for (const auto& s : e_)
    if (!s.is_zero()) return false;
  return true;
}

std::string Vector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i].to_string();
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::unit(const Field& field, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(field, n, n);
  m(i, j) = field.one();
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& d) {
  if (d.empty()) throw Error(ErrorCode::shape_mismatch, "empty diagonal");
  Matrix m(d.front().field(), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::shape_mismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      require_field(field, rows[i][j].field(), "matrix entry");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::from_ints(const Field& field, const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::shape_mismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_row_vectors(const Field& field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].dim() != cols) throw Error(ErrorCode::shape_mismatch, "row length");
    require_field(field, rows[i].field(), "row vector");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::unvectorize(const Vector& v, std::size_t n) {
  if (v.dim() != n * n) throw Error(ErrorCode::shape_mismatch, "vector length is not n^2");
  Matrix m(v.field(), n, n);
  m.a_ = v.entries();
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(field_, std::vector<Scalar>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                            a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
}

Vector Matrix::col(std::size_t j) const {
  Vector v(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::vectorize() const { return Vector(field_, a_); }

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Scalar Matrix::trace() const {
  require_square(*this, "trace");
  Scalar s = field_.zero();
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

bool Matrix::is_zero() const {
  for (const auto& s : a_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (!((*this)(i, j) == (*this)(j, i))) return false;
  return true;
}

bool Matrix::is_diagonal() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_field(field_, o.field_, "matrix sum");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::shape_mismatch, "matrix sum");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_field(field_, o.field_, "matrix difference");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::shape_mismatch, "matrix difference");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_field(a.field_, b.field_, "matrix product");
  if (a.cols_ != b.rows_) throw Error(ErrorCode::shape_mismatch, "matrix product");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator*(const Scalar& s, Matrix a) {
  require_field(s.field(), a.field_, "scalar multiple");
  for (auto& x : a.a_) x *= s;
  return a;
}

Vector operator*(const Matrix& a, const Vector& v) {
  require_field(a.field_, v.field(), "matrix-vector product");
  if (a.cols_ != v.dim()) throw Error(ErrorCode::shape_mismatch, "matrix-vector product");
  Vector out(a.field_, a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "," : "") << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- elimination

RrefResult rref_generic(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, c).is_zero()) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
    Scalar inv = r(row, c).inv();
    for (std::size_t j = c; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, c).is_zero()) continue;
      Scalar factor = r(i, c);
      for (std::size_t j = c; j < r.cols(); ++j) r(i, j) -= factor * r(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return RrefResult{std::move(r), pivots.size(), std::move(pivots)};
}

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  if (f.is_prime() && f.modulus() == 2 && m.cols() <= gf2::kMaxCols) {
    gf2::BitRref b = gf2::rref(gf2::pack(m), m.cols());
    return RrefResult{gf2::unpack(b.rows, m.cols(), f), b.rank, std::move(b.pivots)};
  }
  return rref_generic(m);
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vector> kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(f, m.cols());
    v[free] = f.one();
    for (std::size_t k = 0; k < r.rank; ++k) v[r.pivots[k]] = -r.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix invert(const Matrix& m) {
  require_square(m, "invert");
  const std::size_t n = m.rows();
  const Field& f = m.field();
  Matrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  RrefResult r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw Error(ErrorCode::singular, "matrix is not invertible");
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

Scalar determinant(const Matrix& m) {
  require_square(m, "determinant");
  Poly chi = char_poly(m);
  Scalar c0 = chi.coeff(0);
  return m.rows() % 2 == 0 ? c0 : -c0;
}

// ---------------------------------------------------------------- polynomials of a matrix

Poly char_poly(const Matrix& m) {
  require_square(m, "char_poly");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  // Coefficients high to low; det(tI - A_r) for the leading r x r block.
  std::vector<Scalar> vect{f.one()};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column [1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C]
    std::vector<Scalar> col;
    col.reserve(r + 2);
    col.push_back(f.one());
    col.push_back(-m(r, r));
    std::vector<Scalar> v(r, f.zero());  // A^k C, starting with C
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Scalar dot = f.zero();
      for (std::size_t i = 0; i < r; ++i) dot += m(r, i) * v[i];
      col.push_back(-dot);
      if (k + 1 == r) break;
      std::vector<Scalar> next(r, f.zero());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += m(i, j) * v[j];
      v = std::move(next);
    }
    std::vector<Scalar> out(r + 2, f.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += col[i - j] * vect[j];
    vect = std::move(out);
  }
  std::vector<Scalar> low_to_high(vect.rbegin(), vect.rend());
  return Poly(f, std::move(low_to_high));
}

Poly min_poly(const Matrix& m) {
  require_square(m, "min_poly");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Vector> powers{Matrix::identity(f, n).vectorize()};
  Matrix power = Matrix::identity(f, n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * m;
    powers.push_back(power.vectorize());
    // columns are vec(M^0), ..., vec(M^k)
    Matrix system = Matrix::from_row_vectors(f, n * n, powers).transpose();
    std::vector<Vector> ker = kernel_basis(system);
    if (!ker.empty()) {
      // M^0..M^{k-1} are independent, so the sole free column is k and the
      // kernel vector is already monic.
      return Poly(f, ker.front().entries());
    }
  }
  throw Error(ErrorCode::unsupported, "no dependency found among matrix powers");
}

Matrix eval(const Poly& p, const Matrix& m) {
  require_square(m, "eval");
  const Field& f = m.field();
  Matrix acc(f, m.rows(), m.cols());
  const Matrix id = Matrix::identity(f, m.rows());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * m + (*it) * id;
  return acc;
}

std::vector<Scalar> eigenvalues_in_field(const Matrix& m) { return roots_in_field(char_poly(m)); }

bool is_diagonalizable(const Matrix& m) {
  require_square(m, "is_diagonalizable");
  const Field& f = m.field();
  Poly mp = min_poly(m);
  const Poly t = Poly::monomial(f.one(), 1);
  if (f.is_finite()) {
    // squarefree and split  <=>  mp divides t^q - t
    return powmod(t, mpz_class(static_cast<unsigned long>(f.modulus())), mp) == t % mp;
  }
  if (!gcd(mp, mp.derivative()).is_constant()) return false;
  Poly residual = mp;
  for (const Scalar& r : roots_in_field(mp)) residual = divmod(residual, Poly::linear_root(r)).first;
  return residual.is_constant();
}

}  // namespace matspace
