#include "matspace/recovery.hpp"

namespace matspace {

namespace {

Matrix unit_sym(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  return Matrix::unit(f, n, i, j) + Matrix::unit(f, n, j, i);
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row a += s * row b
void add_row(Matrix& m, std::size_t a, std::size_t b, const Scalar& s) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) += s * m(b, j);
}

void add_col(Matrix& m, std::size_t a, std::size_t b, const Scalar& s) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) += s * m(i, b);
}

std::vector<Scalar> diagonal_of(const Matrix& d) {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < d.rows(); ++i) out.push_back(d(i, i));
  return out;
}

// Q^-1 (E_{1,i} + E_{i,1}) D^-1 Q lies in V = Q^-1 Sym_n D^-1 Q.
Matrix witness_in_v(const Congruence& cg, std::size_t i) {
  Matrix qinv = invert(cg.q);
  return qinv * nondiag_witness(cg.d, i) * cg.q;
}

Verdict holds_if(bool ok, std::string reason_if_not) {
  return ok ? Verdict::holds() : Verdict::fails({}, std::move(reason_if_not));
}

}  // namespace

// ---------------------------------------------------------------- symmetrizer

MatSpace symmetrizer_space(const MatSpace& v) {
  const std::size_t n = v.n();
  const Field& f = v.field();
  // unknown P_{kb} sits at coordinate k*n + b
  std::vector<Vector> rows;
  for (const auto& m : v.basis())
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        // (MP)_{ab} - (MP)_{ba}
        Vector row(f, n * n);
        for (std::size_t k = 0; k < n; ++k) {
          row[k * n + b] += m(a, k);
          row[k * n + a] -= m(b, k);
        }
        rows.push_back(std::move(row));
      }
  std::vector<Vector> ker = kernel_basis(Matrix::from_row_vectors(f, n * n, rows));
  return MatSpace::from_coordinates(f, n, Matrix::from_row_vectors(f, n * n, ker));
}

SymmetrizerResult solve_symmetrizer(const MatSpace& v, std::uint64_t budget) {
  MatSpace sol = symmetrizer_space(v);
  for (const auto& m : sol.basis())
    if (is_invertible(m)) return {sol, m};
  std::optional<Matrix> found;
  if (sol.dim() > 0) {
    if (v.field().is_finite()) {
      for_each_element(sol, budget, [&](const Matrix& m) {
        if (!is_invertible(m)) return true;
        found = m;
        return false;
      });
    } else {
      const std::vector<Matrix> basis = sol.basis();
      std::vector<long long> coeff(basis.size(), -3);
      std::uint64_t tested = 0;
      while (!found && tested++ < budget) {
        Matrix m(v.field(), v.n(), v.n());
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (coeff[k] != 0) m += v.field().from_int(coeff[k]) * basis[k];
        if (is_invertible(m)) found = m;
        std::size_t k = 0;
        while (k < coeff.size() && ++coeff[k] > 3) coeff[k++] = -3;
        if (k == coeff.size()) break;
      }
    }
  }
  if (!found)
    throw Error(ErrorCode::no_invertible_solution,
                "symmetrizer space of dimension " + std::to_string(sol.dim()) + " has no invertible member found");
  return {sol, *found};
}

// ---------------------------------------------------------------- congruence

Congruence congruence_diagonalize(const Matrix& p) {
  if (!p.is_square() || !p.is_symmetric()) throw Error(ErrorCode::not_symmetric, "congruence needs a symmetric matrix");
  const Field& f = p.field();
  const std::size_t n = p.rows();
  Matrix a = p, q = Matrix::identity(f, n);
  for (std::size_t k = 0; k < n; ++k) {
    bool column_clear = true;
    for (std::size_t r = k + 1; r < n; ++r) column_clear = column_clear && a(r, k).is_zero();
    if (column_clear) continue;  // already split off, whatever a(k, k) is
    std::size_t piv = k;
    while (piv < n && a(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      // zero diagonal on the residual block
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // residual block is zero
      if (f.characteristic() == 2)
        throw Error(ErrorCode::char2_alternating_residual, "residual block is alternating and nonzero");
      // e_i <- e_i + e_j makes the (i,i) entry 2 a_ij
      add_row(a, pi, pj, f.one());
      add_col(a, pi, pj, f.one());
      add_row(q, pi, pj, f.one());
      piv = pi;
    }
    if (piv != k) {
      swap_rows(a, piv, k);
      swap_cols(a, piv, k);
      swap_rows(q, piv, k);
    }
    const Scalar inv = a(k, k).inv();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k).is_zero()) continue;
      Scalar s = -(a(r, k) * inv);
      add_row(a, r, k, s);
      add_col(a, r, k, s);
      add_row(q, r, k, s);
    }
  }
  return {q, a};
}

// ---------------------------------------------------------------- square classes

SquareClassResult square_class_normalize(const Matrix& d) {
  std::vector<Scalar> diag = diagonal_of(d);
  for (const auto& x : diag)
    if (x.is_zero()) throw Error(ErrorCode::zero_diagonal_entry, "diagonal entry is zero");
  SquareClassResult out;
  std::vector<Scalar> scales;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    auto mu = sqrt(diag[0] / diag[i]);
    if (!mu) {
      out.offending = i + 1;
      return out;
    }
    scales.push_back(*mu);
  }
  out.scales = std::move(scales);
  out.c = diag[0];
  return out;
}

Rebalanced rebalance_square_classes(const Congruence& greedy) {
  Matrix q = greedy.q, d = greedy.d;
  const Field& f = d.field();
  const std::size_t n = d.rows();
  std::vector<Scalar> diag = diagonal_of(d);
  for (const auto& x : diag)
    if (x.is_zero()) throw Error(ErrorCode::zero_diagonal_entry, "diagonal entry is zero");
  Scalar c = diag[0];
  if (!f.is_finite() || f.characteristic() == 2) {
    std::optional<std::size_t> off = square_class_normalize(d).offending;
    return {{q, d}, c, off};
  }
  if (n % 2 == 1) {
    // c must share the class of det D
    Scalar det = f.one();
    for (const auto& x : diag) det *= x;
    if (!is_square(c / det)) {
      c = det;
      for (const auto& x : diag)
        if (is_square(x / det)) {
          c = x;
          break;
        }
    }
  }
  std::vector<std::size_t> off;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_square(diag[i] / c)) off.push_back(i);
  for (std::size_t k = 0; k + 1 < off.size(); k += 2) {
    const std::size_t i = off[k], j = off[k + 1];
    const Scalar di = diag[i], dj = diag[j];
    // d_i x^2 + d_j y^2 = c
    std::optional<Scalar> x, y;
    for (std::uint64_t t = 0; t < f.modulus() && !y; ++t) {
      Scalar xt = f.from_int(static_cast<long long>(t));
      if (auto r = sqrt((c - di * xt * xt) / dj)) {
        x = xt;
        y = *r;
      }
    }
    if (!y) throw Error(ErrorCode::unsupported, "binary form does not represent c");
    Vector qi = q.row(i), qj = q.row(j);
    for (std::size_t col = 0; col < n; ++col) {
      q(i, col) = *x * qi[col] + *y * qj[col];
      q(j, col) = -(dj * *y) * qi[col] + di * *x * qj[col];
    }
    diag[i] = c;
    diag[j] = di * dj * c;
    d(i, i) = diag[i];
    d(j, j) = diag[j];
  }
  std::optional<std::size_t> leftover;
  if (off.size() % 2 == 1) leftover = off.back() + 1;
  return {{q, d}, c, leftover};
}

Matrix nondiag_witness(const Matrix& d, std::size_t i) {
  const std::size_t n = d.rows();
  if (!d.is_square() || !d.is_diagonal()) throw Error(ErrorCode::shape_mismatch, "expected a diagonal matrix");
  if (i < 2 || i > n) throw Error(ErrorCode::shape_mismatch, "index must satisfy 2 <= i <= n");
  if (d(0, 0).is_zero() || d(i - 1, i - 1).is_zero()) throw Error(ErrorCode::zero_diagonal_entry, "diagonal entry is zero");
  Scalar r = (d(i - 1, i - 1) * d(0, 0)).inv();
  if (is_square(r))
    throw Error(ErrorCode::square_class_not_violated, "d_i^-1 d_1^-1 = " + r.to_string() + " is a square");
  return unit_sym(d.field(), n, 0, i - 1) * invert(d);
}

// ---------------------------------------------------------------- blocks

Blocks blocks_of(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Blocks b{m(0, 0), Vector(f, n - 1), Vector(f, n - 1), Matrix(f, n - 1, n - 1)};
  for (std::size_t i = 1; i < n; ++i) {
    b.c[i - 1] = m(i, 0);
    b.r[i - 1] = m(0, i);
    for (std::size_t j = 1; j < n; ++j) b.k(i - 1, j - 1) = m(i, j);
  }
  return b;
}

Matrix reassemble(const Blocks& b) {
  const std::size_t n = b.c.dim() + 1;
  Matrix m(b.a.field(), n, n);
  m(0, 0) = b.a;
  for (std::size_t i = 1; i < n; ++i) {
    m(i, 0) = b.c[i - 1];
    m(0, i) = b.r[i - 1];
    for (std::size_t j = 1; j < n; ++j) m(i, j) = b.k(i - 1, j - 1);
  }
  return m;
}

BlockMaps block_decompose(const MatSpace& v) {
  const std::size_t n = v.n();
  if (n < 2) throw Error(ErrorCode::shape_mismatch, "block decomposition needs n >= 2");
  const Field& f = v.field();
  const std::size_t d = v.dim(), m = n - 1;
  const std::vector<Matrix> basis = v.basis();
  Matrix a(f, 1, d), c(f, m, d), r(f, m, d), k(f, m * m, d);
  for (std::size_t col = 0; col < d; ++col) {
    Blocks b = blocks_of(basis[col]);
    a(0, col) = b.a;
    for (std::size_t i = 0; i < m; ++i) {
      c(i, col) = b.c[i];
      r(i, col) = b.r[i];
      for (std::size_t j = 0; j < m; ++j) k(i * m + j, col) = b.k(i, j);
    }
  }
  auto combine = [&](const std::vector<Vector>& coeffs) {
    std::vector<Matrix> mats;
    for (const auto& x : coeffs) {
      Matrix s(f, n, n);
      for (std::size_t col = 0; col < d; ++col)
        if (!x[col].is_zero()) s += x[col] * basis[col];
      mats.push_back(std::move(s));
    }
    return MatSpace::span(f, n, mats);
  };
  std::vector<Vector> w_coeffs = d ? kernel_basis(c) : std::vector<Vector>{};
  // K restricted to W
  std::vector<Vector> k_images;
  for (const auto& x : w_coeffs) k_images.push_back(k * x);
  Matrix ckA(f, m + m * m + 1, d);
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t i = 0; i < m; ++i) ckA(i, col) = c(i, col);
    for (std::size_t i = 0; i < m * m; ++i) ckA(m + i, col) = k(i, col);
    ckA(m + m * m, col) = a(0, col);
  }
  std::vector<Vector> inter = d ? kernel_basis(ckA) : std::vector<Vector>{};
  BlockMaps out{n, 1, a, c, r, k, combine(w_coeffs), combine(inter)};
  out.dim_c_image = d ? rank(c) : 0;
  out.dim_w = out.w.dim();
  out.dim_k_of_w = k_images.empty() ? 0 : rank(Matrix::from_row_vectors(f, m * m, k_images));
  out.dim_w_ker_k_ker_a = out.w_ker_k_ker_a.dim();
  return out;
}

// ---------------------------------------------------------------- pipeline

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::success: return "success";
    case Outcome::conditional_success: return "conditional_success";
    case Outcome::square_class_failure: return "square_class_failure";
    case Outcome::normalization_uncertified: return "normalization_uncertified";
    case Outcome::failure: return "failure";
  }
  return "?";
}

const Stage* RecoveryReport::stage(std::string_view name) const {
  for (const auto& s : stages)
    if (s.name == name) return &s;
  return nullptr;
}

Matrix final_congruence(const RecoveryReport& r) { return r.q_balanced ? *r.q_balanced : *r.q; }

RecoveryReport recover(const MatSpace& v, const PredicateOptions& opts) {
  const std::size_t n = v.n();
  const Field& f = v.field();
  RecoveryReport rep(v);
  auto record = [&](std::string name, Verdict verdict, bool blocking) {
    const bool stop = blocking && !verdict.is_holds();
    if (!blocking && verdict.is_fails()) rep.hypotheses_refuted = true;
    rep.stages.push_back({name, std::move(verdict), blocking});
    if (stop) {
      rep.outcome = Outcome::failure;
      rep.failed_stage = name;
    }
    return !stop;
  };
  auto finish = [&]() {
    bool unknown = false;
    for (const auto& s : rep.stages) unknown = unknown || s.verdict.is_unknown();
    rep.outcome = unknown ? Outcome::conditional_success : Outcome::success;
    return rep;
  };

  const std::size_t target = n * (n + 1) / 2;
  if (!record("dimension",
              holds_if(v.dim() == target, "dim V = " + std::to_string(v.dim()) + ", expected " + std::to_string(target)),
              true))
    return rep;
  if (n == 1) {
    rep.s = Matrix::identity(f, 1);
    record("similarity", Verdict::holds(), true);
    return finish();
  }

  Verdict id = holds_if(v.contains(Matrix::identity(f, n)), "I_n is not in V");
  if (id.is_fails()) id.witness.matrix = Matrix::identity(f, n);
  if (!record("identity", std::move(id), true)) return rep;

  rep.orth = orth_complement(v);
  if (!record("orth_dimension", holds_if(rep.orth->dim() == n * (n - 1) / 2, "unexpected dim V^perp"), true)) return rep;
  record("irreducible_orth", irreducible(*rep.orth, opts), false);
  record("trivial_spectrum_orth", trivial_spectrum(*rep.orth, opts), false);

  try {
    SymmetrizerResult sym = solve_symmetrizer(v, opts.budget);
    rep.symmetrizers = sym.solutions;
    rep.p = sym.p;
    record("symmetrizer", Verdict::holds(), true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_invertible_solution) throw;
    rep.symmetrizers = symmetrizer_space(v);
    record("symmetrizer", Verdict::fails({}, e.what()), true);
    return rep;
  }
  const Matrix& p = *rep.p;
  const MatSpace sym = standard_space(StandardKind::sym, n, f);
  const bool sym_ok = p.is_symmetric() && is_invertible(p) && transform(v, p, TransformMode::right) == sym;
  if (!record("symmetrizer_check", holds_if(sym_ok, "V P is not Sym_n for a symmetric invertible P"), true)) return rep;
  record("non_isotropic", non_isotropic(p, opts), false);

  Congruence cg{p, p};
  try {
    cg = congruence_diagonalize(p);
  } catch (const Error& e) {
    record("congruence", Verdict::fails({}, e.what()), true);
    return rep;
  }
  rep.q = cg.q;
  rep.d = cg.d;
  const bool exact = cg.q * p * cg.q.transpose() == cg.d && cg.d.is_diagonal();
  if (!record("congruence", holds_if(exact, "Q P Q^T differs from D"), true)) return rep;

  SquareClassResult greedy = square_class_normalize(cg.d);
  Congruence used = cg;
  if (greedy.scales) {
    record("square_class", Verdict::holds(), false);
    rep.scales = greedy.scales;
    rep.c = greedy.c;
  } else {
    Witness w;
    w.matrix = witness_in_v(cg, *greedy.offending);
    rep.witness = w.matrix;
    rep.offending = greedy.offending;
    record("square_class", Verdict::fails(std::move(w), "d_i / d_1 is not a square"), false);
    if (!f.is_finite()) {
      rep.outcome = Outcome::normalization_uncertified;
      rep.failed_stage = "square_class";
      return rep;
    }
    Rebalanced bal = rebalance_square_classes(cg);
    used = bal.congruence;
    rep.q_balanced = used.q;
    rep.d_balanced = used.d;
    if (bal.offending) {
      Witness bw;
      bw.matrix = witness_in_v(used, *bal.offending);
      rep.witness = bw.matrix;
      rep.offending = bal.offending;
      record("square_class_rebalance", Verdict::fails(std::move(bw), "no scalar matrix is congruent to P"), false);
      rep.outcome = Outcome::square_class_failure;
      rep.failed_stage = "square_class_rebalance";
      return rep;
    }
    std::vector<Scalar> scales;
    for (std::size_t i = 0; i < n; ++i) scales.push_back(*sqrt(bal.c / used.d(i, i)));
    rep.scales = std::move(scales);
    rep.c = bal.c;
    const bool balanced = used.q * p * used.q.transpose() == used.d;
    if (!record("square_class_rebalance", holds_if(balanced, "rebalanced congruence is inexact"), true)) return rep;
  }

  Matrix m = Matrix::diagonal(*rep.scales) * used.q;
  const bool scalar_form = m * p * m.transpose() == *rep.c * Matrix::identity(f, n);
  rep.s = invert(m);
  const bool similar = scalar_form && transform(sym, *rep.s, TransformMode::conjugate) == v;
  if (!record("similarity", holds_if(similar, "S Sym_n S^-1 differs from V"), true)) return rep;
  return finish();
}

}  // namespace matspace
