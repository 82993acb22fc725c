#include <doctest.h>

#include <random>
#include <set>

#include "matspace/census.hpp"
#include "oracles.hpp"

using namespace matspace;

namespace {

using ElementSet = std::set<std::vector<std::uint64_t>>;

// All d-dimensional subspaces of Mat_2(F_q) as element sets, from spans of
// every d-tuple of matrices.
std::set<ElementSet> subspaces_by_tuples(std::uint64_t q, std::size_t d) {
  const Field f = Field::prime(q);
  std::vector<Matrix> all;
  for (const auto& v : oracle::all_vectors(f, 4)) all.push_back(Matrix::unvectorize(v, 2));
  std::set<ElementSet> out;
  std::vector<std::size_t> idx(d, 0);
  std::uint64_t size = 1;
  for (std::size_t k = 0; k < d; ++k) size *= q;
  while (true) {
    std::vector<Matrix> gens;
    for (auto i : idx) gens.push_back(all[i]);
    ElementSet e = oracle::span_elements(gens, f, 2);
    if (e.size() == size) out.insert(std::move(e));
    std::size_t k = 0;
    while (k < d && ++idx[k] == all.size()) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

// Predicate bits from brute-force per-element oracles.
unsigned oracle_bits(const MatSpace& v) {
  const Field& f = v.field();
  unsigned bits = kDiag | kTrivialSpectrum;
  for (const auto& m : elements(v, 1'000'000)) {
    if (!oracle::diagonalizable_by_eigenbasis(m)) bits &= ~kDiag;
    for (const auto& lam : oracle::eigenvalues_by_scan(m))
      if (!lam.is_zero()) bits &= ~kTrivialSpectrum;
  }
  if (oracle::irreducible_2x2(v.basis(), f)) bits |= kIrreducible;
  return bits;
}

}  // namespace

TEST_CASE("gaussian binomial") {
  CHECK(gaussian_binomial(4, 3, 2) == 15);
  CHECK(gaussian_binomial(4, 1, 3) == 40);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(9, 6, 2) == 788035);
  CHECK(gaussian_binomial(9, 4, 2) == 3309747);
  for (unsigned m = 0; m <= 9; ++m)
    for (unsigned d = 0; d <= m; ++d)
      for (std::uint64_t q : {2, 3, 5}) CHECK(gaussian_binomial(m, d, q) == oracle::gaussian_binomial(m, d, q));
  CHECK(gaussian_binomial(3, 4, 2) == 0);
}

TEST_CASE("subspace stream examples") {
  auto count = [](std::size_t n, std::uint64_t q, std::size_t d) {
    std::uint64_t c = 0;
    subspace_stream(n, q, d, kDefaultCap, false, [&](const MatSpace& v) {
      CHECK(v.dim() == d);
      ++c;
      return true;
    });
    return c;
  };
  CHECK(count(2, 2, 3) == 15);
  CHECK(count(2, 3, 1) == 40);
  CHECK(count(2, 3, 2) == 130);
  CHECK(count(1, 5, 1) == 1);
  CHECK(count(2, 5, 0) == 1);
}

TEST_CASE("subspace stream matches the span-of-tuples oracle") {
  for (std::uint64_t q : {2, 3})
    for (std::size_t d = 0; d <= (q == 2 ? 4u : 2u); ++d) {
      std::set<ElementSet> expected = subspaces_by_tuples(q, d);
      std::set<ElementSet> streamed;
      std::uint64_t visits = 0;
      subspace_stream(2, q, d, kDefaultCap, false, [&](const MatSpace& v) {
        ++visits;
        streamed.insert(oracle::span_elements(v.basis(), v.field(), 2));
        return true;
      });
      CHECK(visits == streamed.size());
      CHECK(streamed == expected);
    }
}

TEST_CASE("census examples") {
  CensusOptions diag;
  diag.predicates = kDiag;
  CensusReport a = census(2, 2, 3, diag);
  CHECK(a.total == 15);
  CHECK(a.counts.at(kDiag) == 0);
  CensusReport b = census(2, 3, 3, diag);
  CHECK(b.total == 40);
  CHECK(b.counts.at(kDiag) == 0);
  CensusOptions ti;
  ti.predicates = kTrivialSpectrum | kIrreducible;
  CensusReport c = census(2, 3, 2, ti);
  CHECK(c.total == 130);
  CHECK(c.counts.at(kTrivialSpectrum | kIrreducible) == 0);
}

TEST_CASE("census counts agree with per-element oracles") {
  for (std::uint64_t q : {2, 3})
    for (std::size_t d = 0; d <= 4; ++d) {
      CensusReport r = census(2, q, d);
      std::array<std::uint64_t, 8> expect{};
      subspace_stream(2, q, d, kDefaultCap, false, [&](const MatSpace& v) {
        unsigned bits = oracle_bits(v);
        for (unsigned key = 1; key < 8; ++key)
          if ((bits & key) == key) ++expect[key];
        return true;
      });
      for (unsigned key = 1; key < 8; ++key) CHECK(r.counts.at(key) == expect[key]);
      CHECK(r.total == r.expected_total);
    }
}

TEST_CASE("fast and generic engines give identical reports") {
  CensusOptions fast, generic;
  generic.engine = Engine::generic;
  std::vector<std::array<std::size_t, 3>> configs{{2, 2, 0}, {2, 2, 1}, {2, 2, 2}, {2, 2, 3}, {2, 2, 4},
                                                  {2, 3, 1}, {2, 3, 2}, {2, 5, 1}, {3, 2, 1}, {3, 2, 8}};
  for (auto [n, q, d] : configs) {
    CensusReport a = census(n, q, d, fast), b = census(n, q, d, generic);
    CHECK(a.engine == Engine::fast);
    CHECK(b.engine == Engine::generic);
    CHECK(a.total == b.total);
    CHECK(a.counts == b.counts);
    CHECK(a.witnesses == b.witnesses);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  for (unsigned workers : {1u, 4u, 8u}) {
    CensusOptions o;
    o.workers = workers;
    CensusReport base = census(2, 3, 2), r = census(2, 3, 2, o);
    CHECK(r.counts == base.counts);
    CHECK(r.witnesses == base.witnesses);
    CHECK(r.workers == workers);
  }
}

TEST_CASE("size limits") {
  try {
    census(3, 2, 6);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
    CHECK(std::string(e.what()).find("788035") != std::string::npos);
  }
  CensusOptions small;
  small.cap = 10;
  CHECK_THROWS_AS(census(2, 3, 1, small), Error);
  CHECK_THROWS_AS(census(2, 7, 1), Error);
}

TEST_CASE("census predicates are conjugation invariant on witnesses") {
  std::mt19937_64 rng(51);
  CensusReport r = census(2, 3, 2);
  const Field f = Field::prime(3);
  for (const auto& [key, list] : r.witnesses)
    for (const auto& v : list) {
      MatSpace c = transform(v, oracle::random_invertible(f, 2, rng), TransformMode::conjugate);
      if (key & kDiag) CHECK(all_diagonalizable(c).is_holds());
      if (key & kTrivialSpectrum) CHECK(trivial_spectrum(c).is_holds());
      if (key & kIrreducible) CHECK(irreducible(c).is_holds());
    }
}

TEST_CASE("max_diag_dim examples") {
  MaxDiagResult a = max_diag_dim(2, 2);
  CHECK(a.d_max == 2);
  CHECK(*a.witness == standard_space(StandardKind::diagonal, 2, Field::prime(2)));
  CHECK(a.counts.at(3) == 0);
  CHECK(max_diag_dim(2, 3).d_max == 2);
  CHECK(max_diag_dim(1, 2).d_max == 1);
}

TEST_CASE("verify_classification examples") {
  for (std::uint64_t q : {2, 3}) {
    ClassificationReport r = verify_classification(2, q);
    CHECK(r.dim == 1);
    CHECK_FALSE(r.entries.empty());
    CHECK(r.all_expressible());
    CHECK(r.above_bound == 0);
    const Field f = Field::prime(q);
    for (const auto& e : r.entries) {
      CHECK(transform(standard_space(StandardKind::alt, 2, f), *e.p, TransformMode::left) == e.v);
      CHECK(non_isotropic(*e.p).is_holds());
    }
    CHECK(r.maximal_diag.empty());
    CHECK(r.maximal_diag_consistent());
  }
  CHECK_THROWS_AS(verify_classification(3, 2), Error);
}

TEST_CASE("csv tally") {
  CensusOptions o;
  o.predicates = kDiag;
  CHECK(census_csv(census(2, 2, 3, o)) == "predicates,count,total\ndiag,0,15\n");
  CHECK(parse_predicates("diag,ts") == (kDiag | kTrivialSpectrum));
  CHECK(parse_predicates("all") == kAllPredicates);
  CHECK(predicate_key(kDiag | kIrreducible) == "diag+irr");
  CHECK_THROWS_AS(parse_predicates("nope"), Error);
}
