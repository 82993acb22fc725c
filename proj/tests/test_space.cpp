#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "matspace/space.hpp"
#include "oracles.hpp"

using namespace matspace;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);
const Field F7 = Field::prime(7);
const Field QQ = Field::rational();

MatSpace random_span(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::size_t count = rng() % (n * n + 1);
  return MatSpace::span(f, n, oracle::random_matrices(f, n, count, rng));
}

}  // namespace

TEST_CASE("span examples") {
  CHECK(MatSpace::span(F5, 2, {Matrix::identity(F5, 2), F5.from_int(2) * Matrix::identity(F5, 2)}).dim() == 1);
  CHECK(MatSpace::span(F5, 2, {}).dim() == 0);
  CHECK(MatSpace::span(F5, 2, {}) == MatSpace::zero(F5, 2));
  MatSpace d = MatSpace::span(QQ, 2, {Matrix::unit(QQ, 2, 0, 0), Matrix::unit(QQ, 2, 1, 1)});
  CHECK(d.dim() == 2);
  CHECK(d == standard_space(StandardKind::diagonal, 2, QQ));

  try {
    MatSpace::span(F5, 2, {Matrix::identity(F5, 3)});
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shape_mismatch);
  }
  try {
    MatSpace::span(F5, 2, {Matrix::identity(F7, 2)});
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::field_mismatch);
  }
}

TEST_CASE("canonical bases make span order irrelevant") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto gens = oracle::random_matrices(F7, 3, 4, rng);
    MatSpace a = MatSpace::span(F7, 3, gens);
    std::reverse(gens.begin(), gens.end());
    gens.push_back(gens[0] + F7.from_int(3) * gens[1]);
    CHECK(MatSpace::span(F7, 3, gens) == a);
  }
}

TEST_CASE("contains examples") {
  CHECK(standard_space(StandardKind::sym, 2, F7).contains(Matrix::identity(F7, 2)));
  CHECK(standard_space(StandardKind::strict_upper, 2, F7).contains(Matrix::unit(F7, 2, 0, 1)));
  MatSpace alt = standard_space(StandardKind::alt, 2, F3);
  CHECK_FALSE(alt.contains(Matrix::identity(F3, 2)));
  CHECK(alt.contains(Matrix::from_ints(F3, {{0, 2}, {1, 0}})));
  CHECK_THROWS_AS(alt.contains(Matrix::identity(F3, 3)), Error);
}

TEST_CASE("coordinates_of reconstructs the element") {
  MatSpace sym = standard_space(StandardKind::sym, 3, QQ);
  Matrix m = Matrix::from_ints(QQ, {{1, 2, 3}, {2, 5, -1}, {3, -1, 0}});
  Vector c = sym.coordinates_of(m);
  Matrix rebuilt(QQ, 3, 3);
  for (std::size_t k = 0; k < sym.dim(); ++k) rebuilt += c[k] * sym.basis_matrix(k);
  CHECK(rebuilt == m);
}

TEST_CASE("lattice examples") {
  MatSpace sym7 = standard_space(StandardKind::sym, 2, F7), alt7 = standard_space(StandardKind::alt, 2, F7);
  CHECK(sum(sym7, alt7) == standard_space(StandardKind::full, 2, F7));
  CHECK(intersect(sym7, alt7).dim() == 0);
  MatSpace sym2 = standard_space(StandardKind::sym, 2, F2), alt2 = standard_space(StandardKind::alt, 2, F2);
  CHECK(intersect(sym2, alt2) == alt2);
  CHECK_FALSE(sym7 == alt7);
  CHECK_THROWS_AS(sum(sym7, sym2), Error);
}

TEST_CASE("intersection satisfies the dimension identity and membership") {
  std::mt19937_64 rng(22);
  for (const Field& f : {F2, F3, QQ}) {
    for (int trial = 0; trial < 20; ++trial) {
      MatSpace v = random_span(f, 2, rng), u = random_span(f, 2, rng);
      MatSpace i = intersect(v, u);
      CHECK(i.dim() + sum(v, u).dim() == v.dim() + u.dim());
      for (const auto& m : i.basis()) {
        CHECK(v.contains(m));
        CHECK(u.contains(m));
      }
    }
  }
}

TEST_CASE("orth_complement examples") {
  for (const Field& f : {F2, F3, F7, QQ})
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(orth_complement(standard_space(StandardKind::sym, n, f)) == standard_space(StandardKind::alt, n, f));
      CHECK(orth_complement(MatSpace::zero(f, n)) == standard_space(StandardKind::full, n, f));
    }
  // (strict-upper)^perp = upper triangular
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Matrix> upper;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) upper.push_back(Matrix::unit(F5, n, i, j));
    MatSpace up = MatSpace::span(F5, n, upper);
    CHECK(up.dim() == n * (n + 1) / 2);
    CHECK(orth_complement(standard_space(StandardKind::strict_upper, n, F5)) == up);
  }
}

TEST_CASE("orthogonality kernel agrees with direct trace evaluation") {
  std::mt19937_64 rng(23);
  for (const Field& f : {F2, F3, QQ}) {
    for (int trial = 0; trial < 15; ++trial) {
      MatSpace v = random_span(f, 3, rng);
      MatSpace perp = orth_complement(v);
      CHECK(v.dim() + perp.dim() == 9);
      for (const auto& a : v.basis())
        for (const auto& b : perp.basis()) CHECK(trace_form(a, b).is_zero());
      Matrix a = oracle::random_matrix(f, 3, rng), b = oracle::random_matrix(f, 3, rng);
      CHECK(trace_form(a, b) == (a * b).trace());
    }
  }
}

TEST_CASE("biduality and conjugation identity") {
  std::mt19937_64 rng(24);
  for (const Field& f : {F2, F3, F7, QQ}) {
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t n = 2 + rng() % 2;
      MatSpace v = random_span(f, n, rng);
      CHECK(orth_complement(orth_complement(v)) == v);
      Matrix p = oracle::random_invertible(f, n, rng);
      CHECK(orth_complement(transform(v, p, TransformMode::conjugate)) ==
            transform(orth_complement(v), p, TransformMode::conjugate));
      for (auto mode : {TransformMode::conjugate, TransformMode::left, TransformMode::right})
        CHECK(transform(v, p, mode).dim() == v.dim());
    }
  }
}

TEST_CASE("transform examples") {
  MatSpace sym = standard_space(StandardKind::sym, 2, F3);
  CHECK(transform(sym, Matrix::identity(F3, 2), TransformMode::conjugate) == sym);
  MatSpace alt = standard_space(StandardKind::alt, 2, F3);
  CHECK(transform(alt, Matrix::identity(F3, 2), TransformMode::left) == alt);
  Matrix dinv = invert(Matrix::diagonal({F3.from_int(1), F3.from_int(2)}));
  MatSpace v = transform(sym, dinv, TransformMode::right);
  CHECK(v.dim() == 3);
  CHECK(v.contains(Matrix::from_ints(F3, {{0, 2}, {1, 0}})));
  try {
    transform(sym, Matrix::from_ints(F3, {{1, 1}, {1, 1}}), TransformMode::conjugate);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular);
  }
}

TEST_CASE("standard space dimensions in every characteristic") {
  for (const Field& f : {F2, F3, QQ})
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(standard_space(StandardKind::sym, n, f).dim() == n * (n + 1) / 2);
      CHECK(standard_space(StandardKind::alt, n, f).dim() == n * (n - 1) / 2);
      CHECK(standard_space(StandardKind::strict_upper, n, f).dim() == n * (n - 1) / 2);
      CHECK(standard_space(StandardKind::diagonal, n, f).dim() == n);
      CHECK(standard_space(StandardKind::scalar, n, f).dim() == 1);
      CHECK(standard_space(StandardKind::full, n, f).dim() == n * n);
    }
  CHECK(standard_space(StandardKind::sym, 3, F7).dim() == 6);
  CHECK(standard_space(StandardKind::alt, 3, F2).dim() == 3);
  CHECK(standard_space(StandardKind::scalar, 5, F3) == MatSpace::span(F3, 5, {Matrix::identity(F3, 5)}));
  // alternating matrices have zero diagonal even in characteristic 2
  for (const auto& m : standard_space(StandardKind::alt, 3, F2).basis())
    for (std::size_t i = 0; i < 3; ++i) CHECK(m(i, i).is_zero());
}

TEST_CASE("elements examples") {
  auto alt = elements(standard_space(StandardKind::alt, 2, F3), 100);
  REQUIRE(alt.size() == 3);
  Matrix j = standard_space(StandardKind::alt, 2, F3).basis_matrix(0);
  CHECK(alt[0].is_zero());
  CHECK(alt[1] == j);
  CHECK(alt[2] == F3.from_int(2) * j);
  CHECK(elements(standard_space(StandardKind::sym, 2, F2), 100).size() == 8);

  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j2 = 0; j2 < 5; ++j2) gens.push_back(Matrix::unit(F3, 6, i, j2));
  MatSpace big = MatSpace::span(F3, 6, gens);
  REQUIRE(big.dim() == 30);
  try {
    elements(big, 10'000'000);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
  CHECK_THROWS_AS(elements(standard_space(StandardKind::sym, 2, QQ), 100), Error);
}

TEST_CASE("element stream visits each member exactly once") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    MatSpace v = random_span(F3, 2, rng);
    auto el = elements(v, 1000);
    std::set<std::string> seen;
    for (const auto& m : el) {
      CHECK(v.contains(m));
      seen.insert(m.to_string());
    }
    CHECK(seen.size() == el.size());
    CHECK(el.size() == element_count(v));
    CHECK(seen.size() == oracle::span_elements(v.basis(), F3, 2).size());
  }
}
