#include "matspace/predicates.hpp"

#include <random>

namespace matspace {

namespace {

// Incremental echelon form: rows stay reduced against each other's pivots.
class Echelon {
 public:
  Echelon(const Field& f, std::size_t n) : field_(f), n_(n) {}

  // Adds v if independent; returns whether it was added.
  bool add(const Vector& v) {
    Vector r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p].is_zero()) ++p;
    if (p == n_) return false;
    Scalar inv = r[p].inv();
    for (std::size_t j = 0; j < n_; ++j) r[j] *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const Vector& v) const { return reduce(v).is_zero(); }
  std::size_t dim() const { return rows_.size(); }

 private:
  Vector reduce(Vector v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar c = v[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] -= c * rows_[k][j];
    }
    return v;
  }

  Field field_;
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

std::uint64_t projective_count(std::uint64_t q, std::size_t n) {
  // (q^n - 1)/(q - 1) = 1 + q + ... + q^{n-1}, saturating
  std::uint64_t total = 0, power = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > UINT64_MAX - power) return UINT64_MAX;
    total += power;
    if (k + 1 < n) {
      if (power > UINT64_MAX / q) return UINT64_MAX;
      power *= q;
    }
  }
  return total;
}

// Integer combination of the basis with coefficients in [-3, 3].
Matrix random_member(const MatSpace& v, const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  Matrix m(v.field(), v.n(), v.n());
  for (const auto& b : basis) {
    long long c = static_cast<long long>(rng() % 7) - 3;
    if (c != 0) m += v.field().from_int(c) * b;
  }
  return m;
}

// Basis members first, then seeded pseudorandom combinations.
std::vector<Matrix> rational_samples(const MatSpace& v, std::size_t count, std::uint64_t seed) {
  const std::vector<Matrix> basis = v.basis();
  std::vector<Matrix> out = basis;
  if (basis.empty()) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_member(v, basis, rng));
  return out;
}

Verdict spin_search(const MatSpace& v, const std::vector<Vector>& starts) {
  for (const auto& s : starts) {
    if (s.is_zero()) continue;
    VecSpace w = spin(v, s);
    if (w.dim() < v.n()) {
      Witness wit;
      wit.subspace = w;
      return Verdict::fails(std::move(wit), "proper stable subspace");
    }
  }
  return Verdict::holds();
}

bool is_nilpotent(const Matrix& m) {
  Matrix power = m;
  for (std::size_t k = 1; k < m.rows(); ++k) power = power * m;
  return power.is_zero();
}

}  // namespace

std::size_t generated_algebra_dim(const MatSpace& v) {
  // saturate span{I} + V under right multiplication by the basis of V
  const std::size_t n = v.n();
  const std::vector<Matrix> basis = v.basis();
  Echelon ech(v.field(), n * n);
  std::vector<Matrix> found{Matrix::identity(v.field(), n)};
  ech.add(found[0].vectorize());
  for (std::size_t next = 0; next < found.size() && ech.dim() < n * n; ++next)
    for (const auto& m : basis) {
      Matrix prod = found[next] * m;
      if (ech.add(prod.vectorize())) found.push_back(std::move(prod));
    }
  return ech.dim();
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds: return "Holds";
    case Status::fails: return "Fails";
    case Status::unknown: return "Unknown";
  }
  return "?";
}

std::vector<Vector> spin_sequence(const MatSpace& v, const Vector& start) {
  if (start.dim() != v.n()) throw Error(ErrorCode::shape_mismatch, "spin vector length");
  if (start.is_zero()) throw Error(ErrorCode::zero_vector, "spin needs a nonzero vector");
  const std::vector<Matrix> basis = v.basis();
  Echelon ech(v.field(), v.n());
  std::vector<Vector> seq{start};
  ech.add(start);
  for (std::size_t next = 0; next < seq.size() && ech.dim() < v.n(); ++next) {
    for (const auto& m : basis) {
      Vector img = m * seq[next];
      if (ech.add(img)) seq.push_back(std::move(img));
    }
  }
  return seq;
}

VecSpace spin(const MatSpace& v, const Vector& start) {
  return VecSpace::span(v.field(), v.n(), spin_sequence(v, start));
}

bool is_stable(const MatSpace& v, const VecSpace& w) {
  for (const auto& m : v.basis())
    for (const auto& x : w.vectors())
      if (!w.contains(m * x)) return false;
  return true;
}

void for_each_projective_point(const Field& field, std::size_t n, std::uint64_t budget,
                               const std::function<bool(const Vector&)>& visit) {
  if (!field.is_finite()) throw Error(ErrorCode::infinite_field, "projective points of Q^n");
  const std::uint64_t q = field.modulus();
  const std::uint64_t total = projective_count(q, n);
  if (total > budget)
    throw Error(ErrorCode::budget_exceeded, std::to_string(total) + " projective points exceed budget " + std::to_string(budget));
  // lead = index of the leading 1; entries after it run over an odometer
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::vector<std::uint64_t> digits(n - lead - 1, 0);
    while (true) {
      Vector x(field, n);
      x[lead] = field.one();
      for (std::size_t k = 0; k < digits.size(); ++k) x[lead + 1 + k] = field.from_int(static_cast<long long>(digits[k]));
      if (!visit(x)) return;
      std::size_t k = digits.size();
      while (k > 0) {
        if (++digits[k - 1] < q) break;
        digits[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
}

Verdict irreducible(const MatSpace& v, const PredicateOptions& opts) {
  const std::size_t n = v.n();
  const Field& f = v.field();
  if (f.is_finite()) {
    Verdict out = Verdict::holds();
    for_each_projective_point(f, n, opts.budget, [&](const Vector& x) {
      out = spin_search(v, {x});
      return out.is_holds();
    });
    return out;
  }
  if (generated_algebra_dim(v) == n * n) return Verdict::holds();
  std::vector<Vector> starts;
  for (std::size_t i = 0; i < n; ++i) starts.push_back(Vector::unit(f, n, i));
  Verdict out = spin_search(v, starts);
  if (!out.is_holds()) return out;
  // kernels of members and of their shifts by rational eigenvalues
  for (const auto& m : rational_samples(v, opts.rational_spin_samples, opts.seed)) {
    std::vector<Vector> ks = kernel_basis(m);
    for (const auto& lam : eigenvalues_in_field(m)) {
      auto more = kernel_basis(m - lam * Matrix::identity(f, n));
      ks.insert(ks.end(), more.begin(), more.end());
    }
    out = spin_search(v, ks);
    if (!out.is_holds()) return out;
  }
  if (n == 1) return Verdict::holds();
  return Verdict::unknown("infinite field: irreducibility not decided");
}

Verdict all_diagonalizable(const MatSpace& v, const PredicateOptions& opts) {
  auto fail_with = [](const Matrix& m) {
    Witness w;
    w.matrix = m;
    return Verdict::fails(std::move(w), "member is not diagonalizable");
  };
  if (v.field().is_finite()) {
    // prefer a nonzero nilpotent witness, else the first failure in order
    std::optional<Matrix> first;
    for_each_element(v, opts.budget, [&](const Matrix& m) {
      if (is_diagonalizable(m)) return true;
      if (is_nilpotent(m)) {
        first = m;
        return false;
      }
      if (!first) first = m;
      return true;
    });
    return first ? fail_with(*first) : Verdict::holds();
  }
  for (const auto& m : rational_samples(v, opts.rational_samples, opts.seed))
    if (!is_diagonalizable(m)) return fail_with(m);
  if (v.dim() <= 1) return Verdict::holds();  // scalar multiples of a diagonalizable matrix
  return Verdict::unknown("infinite field: diagonalizability sampled, not decided");
}

Verdict trivial_spectrum(const MatSpace& v, const PredicateOptions& opts) {
  Verdict out = Verdict::holds();
  auto check = [&](const Matrix& m) {
    for (const auto& lam : eigenvalues_in_field(m)) {
      if (lam.is_zero()) continue;
      Witness w;
      w.matrix = m;
      w.eigenvalue = lam;
      out = Verdict::fails(std::move(w), "member has a nonzero eigenvalue");
      return false;
    }
    return true;
  };
  if (v.field().is_finite()) {
    for_each_element(v, opts.budget, check);
    return out;
  }
  for (const auto& m : rational_samples(v, opts.rational_samples, opts.seed))
    if (!check(m)) return out;
  if (v.dim() <= 1) return Verdict::holds();  // eigenvalues scale with the member
  return Verdict::unknown("sampled");
}

Scalar quadratic_form(const Matrix& p, const Vector& x) {
  if (!p.is_square() || p.rows() != x.dim()) throw Error(ErrorCode::shape_mismatch, "quadratic form");
  Scalar s = p.field().zero();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < p.cols(); ++j) s += x[i] * p(i, j) * x[j];
  }
  return s;
}

Verdict non_isotropic(const Matrix& p, const PredicateOptions& opts) {
  if (!p.is_square()) throw Error(ErrorCode::shape_mismatch, "non_isotropic needs a square matrix");
  const Field& f = p.field();
  const std::size_t n = p.rows();
  auto fail_with = [](const Vector& x) {
    Witness w;
    w.vector = x;
    return Verdict::fails(std::move(w), "isotropic vector");
  };
  if (f.is_finite()) {
    Verdict out = Verdict::holds();
    for_each_projective_point(f, n, opts.budget, [&](const Vector& x) {
      if (!quadratic_form(p, x).is_zero()) return true;
      out = fail_with(x);
      return false;
    });
    return out;
  }
  // X^T P X only sees the symmetric part
  Matrix s = f.from_fraction(1, 2) * (p + p.transpose());
  bool positive = true, negative = true;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix lead(f, k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = s(i, j);
    const mpq_class minor = determinant(lead).rational();
    if (sgn(minor) <= 0) positive = false;
    if (sgn(minor) == 0 || (sgn(minor) > 0) != (k % 2 == 0)) negative = false;
  }
  if (positive || negative) return Verdict::holds();
  // small integer vectors, first nonzero coordinate positive
  const long long r = opts.isotropy_search_radius;
  std::vector<long long> x(n, -r);
  std::uint64_t tested = 0;
  while (true) {
    std::size_t lead = 0;
    while (lead < n && x[lead] == 0) ++lead;
    if (lead < n && x[lead] > 0) {
      if (++tested > opts.budget) break;
      Vector vx = Vector::from_ints(f, x);
      if (quadratic_form(p, vx).is_zero()) return fail_with(vx);
    }
    std::size_t k = n;
    while (k > 0) {
      if (++x[k - 1] <= r) break;
      x[k - 1] = -r;
      --k;
    }
    if (k == 0) break;
  }
  return Verdict::unknown("infinite field: indefinite form, no small isotropic vector found");
}

bool reverify_irreducible_witness(const MatSpace& v, const Verdict& verdict) {
  const auto& w = verdict.witness.subspace;
  return verdict.is_fails() && w && w->dim() > 0 && w->dim() < v.n() && is_stable(v, *w);
}

bool reverify_diagonalizable_witness(const MatSpace& v, const Verdict& verdict) {
  const auto& m = verdict.witness.matrix;
  return verdict.is_fails() && m && v.contains(*m) && !is_diagonalizable(*m);
}

bool reverify_spectrum_witness(const MatSpace& v, const Verdict& verdict) {
  const auto& m = verdict.witness.matrix;
  const auto& lam = verdict.witness.eigenvalue;
  if (!verdict.is_fails() || !m || !lam || lam->is_zero() || !v.contains(*m)) return false;
  return !is_invertible(*m - *lam * Matrix::identity(v.field(), v.n()));
}

bool reverify_isotropy_witness(const Matrix& p, const Verdict& verdict) {
  const auto& x = verdict.witness.vector;
  return verdict.is_fails() && x && !x->is_zero() && quadratic_form(p, *x).is_zero();
}

}  // namespace matspace
