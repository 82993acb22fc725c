#include <doctest.h>

#include <random>

#include "matspace/gf2.hpp"
#include "matspace/matrix.hpp"
#include "oracles.hpp"

using namespace matspace;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);
const Field F7 = Field::prime(7);
const Field QQ = Field::rational();

Poly poly(const Field& f, std::vector<long long> c) { return Poly::from_ints(f, c); }

}  // namespace

TEST_CASE("rref examples") {
  auto r = rref(Matrix::from_ints(F2, {{1, 1}, {1, 1}}));
  CHECK(r.reduced == Matrix::from_ints(F2, {{1, 1}, {0, 0}}));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});

  auto id = rref(Matrix::identity(QQ, 3));
  CHECK(id.reduced == Matrix::identity(QQ, 3));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});

  auto z = rref(Matrix::zero(F7, 2, 2));
  CHECK(z.rank == 0);
  CHECK(z.pivots.empty());
  CHECK(z.reduced.is_zero());
}

TEST_CASE("rref over Q with fractions") {
  auto r = rref(Matrix::from_ints(QQ, {{2, 4, 1}, {1, 2, 3}}));
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<std::size_t>{0, 2});
  CHECK(r.reduced == Matrix::from_ints(QQ, {{1, 2, 0}, {0, 0, 1}}));
}

TEST_CASE("bit-packed GF(2) elimination is identical to the generic path") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 20;
    Matrix m(F2, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = F2.from_int(static_cast<long long>(rng() % 2));
    auto a = rref_generic(m);
    auto packed = gf2::rref(gf2::pack(m), cols);
    CHECK(gf2::unpack(packed.rows, cols, F2) == a.reduced);
    CHECK(packed.rank == a.rank);
    CHECK(packed.pivots == a.pivots);
    CHECK(rref(m).reduced == a.reduced);
  }
}

TEST_CASE("kernel_basis examples") {
  auto k = kernel_basis(Matrix::unit(F7, 2, 0, 1));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vector::unit(F7, 2, 0));

  CHECK(kernel_basis(Matrix::from_ints(F7, {{1, 2}, {3, 4}})).empty());

  auto z = kernel_basis(Matrix::zero(QQ, 2, 2));
  REQUIRE(z.size() == 2);
  CHECK(z[0] == Vector::unit(QQ, 2, 0));
  CHECK(z[1] == Vector::unit(QQ, 2, 1));
}

TEST_CASE("kernel vectors are annihilated and counted by rank-nullity") {
  std::mt19937_64 rng(3);
  for (const Field& f : {F2, F3, F7, QQ}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
      Matrix m(f, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = oracle::random_scalar(f, rng);
      auto ker = kernel_basis(m);
      CHECK(ker.size() == cols - rank(m));
      for (const auto& v : ker) CHECK((m * v).is_zero());
    }
  }
}

TEST_CASE("invert examples") {
  Matrix a = Matrix::from_ints(QQ, {{3, 4}, {-4, 3}});
  Matrix expected = QQ.from_fraction(1, 25) * Matrix::from_ints(QQ, {{3, -4}, {4, 3}});
  CHECK(invert(a) == expected);
  CHECK(a * invert(a) == Matrix::identity(QQ, 2));

  Matrix d = Matrix::diagonal({F3.from_int(1), F3.from_int(2)});
  CHECK(invert(d) == d);

  try {
    invert(Matrix::from_ints(F2, {{1, 1}, {1, 1}}));
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular);
  }
  CHECK_THROWS_AS(invert(Matrix::zero(F7, 2, 3)), Error);
}

TEST_CASE("char_poly examples") {
  // (E12 + E21) diag(1,2)^-1 over GF(7): t^2 - 2^-1 = t^2 - 4
  Matrix sym = Matrix::unit(F7, 2, 0, 1) + Matrix::unit(F7, 2, 1, 0);
  Matrix m = sym * invert(Matrix::diagonal({F7.from_int(1), F7.from_int(2)}));
  CHECK(char_poly(m) == poly(F7, {-4, 0, 1}));
  for (const Field& f : {F2, F3, QQ}) CHECK(char_poly(Matrix::unit(f, 2, 0, 1)) == poly(f, {0, 0, 1}));
  CHECK(char_poly(Matrix::identity(QQ, 2)) == poly(QQ, {1, -2, 1}));
  CHECK(char_poly(Matrix::from_ints(QQ, {{2, 1, 0}, {0, 3, 4}, {5, 0, 1}})) == poly(QQ, {-26, 11, -6, 1}));
}

TEST_CASE("Cayley-Hamilton and characteristic/minimal polynomial relations") {
  std::mt19937_64 rng(4);
  for (const Field& f : {F7, QQ}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 6; ++trial) {
        Matrix m = oracle::random_matrix(f, n, rng);
        Poly chi = char_poly(m);
        CHECK(chi.degree() == static_cast<int>(n));
        CHECK(chi.leading().is_one());
        CHECK(eval(chi, m).is_zero());
        Poly mp = min_poly(m);
        CHECK(eval(mp, m).is_zero());
        CHECK((chi % mp).is_zero());
        Matrix p = oracle::random_invertible(f, n, rng);
        Matrix conj = p * m * invert(p);
        CHECK(char_poly(conj) == chi);
        CHECK(min_poly(conj) == mp);
        CHECK(determinant(m * p) == determinant(m) * determinant(p));
      }
    }
  }
}

TEST_CASE("min_poly examples") {
  for (const Field& f : {F2, F3, QQ}) CHECK(min_poly(Matrix::identity(f, 3)) == poly(f, {-1, 1}));
  CHECK(min_poly(Matrix::diagonal({F7.from_int(1), F7.from_int(2)})) == poly(F7, {2, 4, 1}));
  CHECK(min_poly(Matrix::from_ints(F2, {{1, 1}, {1, 1}})) == poly(F2, {0, 0, 1}));
  CHECK(min_poly(Matrix::zero(F5, 3, 3)) == poly(F5, {0, 1}));
}

TEST_CASE("eigenvalues_in_field examples") {
  auto ev = eigenvalues_in_field(Matrix::diagonal({F3.from_int(1), F3.from_int(2)}));
  CHECK(ev == std::vector<Scalar>{F3.from_int(1), F3.from_int(2)});
  CHECK(eigenvalues_in_field(Matrix::from_ints(F3, {{0, 1}, {2, 0}})).empty());
  CHECK(eigenvalues_in_field(Matrix::from_ints(QQ, {{0, 1}, {1, 1}})).empty());
  auto rq = eigenvalues_in_field(Matrix::from_ints(QQ, {{1, 2}, {0, -3}}));
  CHECK(rq == std::vector<Scalar>{QQ.from_int(-3), QQ.from_int(1)});
  auto frac = eigenvalues_in_field(Matrix::diagonal({QQ.from_fraction(2, 3), QQ.from_fraction(-5, 7), QQ.zero()}));
  CHECK(frac == std::vector<Scalar>{QQ.from_fraction(-5, 7), QQ.zero(), QQ.from_fraction(2, 3)});
}

TEST_CASE("eigenvalues agree with the singularity scan for q <= 11") {
  std::mt19937_64 rng(6);
  for (std::uint64_t q : {2, 3, 5, 7, 11}) {
    Field f = Field::prime(q);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 25; ++trial) {
        Matrix m = oracle::random_matrix(f, n, rng);
        CHECK(eigenvalues_in_field(m) == oracle::eigenvalues_by_scan(m));
      }
  }
}

TEST_CASE("large prime roots go through equal-degree splitting") {
  Field f = Field::prime(1000003);  // beyond the scan threshold
  std::vector<Scalar> d{f.from_int(17), f.from_int(999999), f.from_int(17), f.from_int(123456)};
  Matrix diag = Matrix::diagonal(d);
  Matrix p = Matrix::from_ints(f, {{1, 2, 0, 1}, {0, 1, 5, 0}, {3, 0, 1, 0}, {0, 0, 2, 1}});
  auto ev = eigenvalues_in_field(p * diag * invert(p));
  CHECK(ev == std::vector<Scalar>{f.from_int(17), f.from_int(123456), f.from_int(999999)});
  CHECK(is_diagonalizable(p * diag * invert(p)));
  // t^2 + 1 has no roots since 1000003 = 3 mod 4
  CHECK(roots_in_field(poly(f, {1, 0, 1})).empty());
}

TEST_CASE("is_diagonalizable examples") {
  CHECK_FALSE(is_diagonalizable(Matrix::from_ints(F2, {{1, 1}, {1, 1}})));
  CHECK_FALSE(is_diagonalizable(Matrix::from_ints(F3, {{1, 1}, {1, 0}})));
  for (const Field& f : {F2, F3, F7, QQ}) {
    CHECK(is_diagonalizable(Matrix::identity(f, 3)));
    CHECK(is_diagonalizable(Matrix::zero(f, 3, 3)));
    CHECK_FALSE(is_diagonalizable(Matrix::unit(f, 3, 0, 2)));
  }
  CHECK(is_diagonalizable(Matrix::from_ints(QQ, {{1, 2}, {2, 1}})));   // eigenvalues 3, -1
  CHECK_FALSE(is_diagonalizable(Matrix::from_ints(QQ, {{1, 1}, {1, 0}})));  // golden ratio
  CHECK_FALSE(is_diagonalizable(Matrix::from_ints(QQ, {{0, -1}, {1, 0}})));
}

TEST_CASE("is_diagonalizable agrees with the eigenbasis oracle (q <= 5, n <= 3)") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 3, 5}) {
    Field f = Field::prime(q);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 60; ++trial) {
        Matrix m = oracle::random_matrix(f, n, rng);
        CHECK(is_diagonalizable(m) == oracle::diagonalizable_by_eigenbasis(m));
      }
  }
}

TEST_CASE("polynomial arithmetic") {
  Poly a = poly(F7, {1, 2, 3}), b = poly(F7, {6, 1});
  auto [qt, r] = divmod(a, b);
  CHECK(qt * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK(gcd(poly(QQ, {-1, 0, 1}), poly(QQ, {1, 1})) == poly(QQ, {1, 1}));
  CHECK(poly(QQ, {0, 0, 3}).derivative() == poly(QQ, {0, 6}));
  CHECK(powmod(poly(F3, {0, 1}), 3, poly(F3, {1, 0, 1})) == poly(F3, {0, 2}));
  CHECK(poly(F7, {-4, 0, 1}).to_string() == "t^2 + 3");
}
