#pragma once

// Exhaustive enumeration of d-dimensional subspaces of Mat_n(F_q) in RREF
// canonical form, filtered by the subspace predicates.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matspace/recovery.hpp"

namespace matspace {

/// Predicate bits; a census counts every nonempty subset of the selected bits.
enum PredicateBit : unsigned { kDiag = 1, kTrivialSpectrum = 2, kIrreducible = 4 };
inline constexpr unsigned kAllPredicates = kDiag | kTrivialSpectrum | kIrreducible;

/// "diag", "ts", "irr" joined by '+', in bit order.
std::string predicate_key(unsigned mask);
/// Parses a comma- or plus-separated list such as "diag,ts". Throws ParseError.
unsigned parse_predicates(std::string_view text);

enum class Engine { fast, generic };
std::string_view to_string(Engine e);

/// Number of d-dimensional subspaces of F_q^m, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(unsigned m, unsigned d, std::uint64_t q);

/// Subspace totals above this need an explicit heavy opt-in.
inline constexpr std::uint64_t kHeavyThreshold = 100'000;
inline constexpr std::uint64_t kDefaultCap = 10'000'000;

struct CensusOptions {
  unsigned predicates = kAllPredicates;
  std::uint64_t cap = kDefaultCap;
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
  bool heavy = false;
  std::size_t witness_limit = 5;
  /// Subset key whose witnesses are all kept regardless of witness_limit.
  unsigned keep_all_witnesses_for = 0;
  Engine engine = Engine::fast;
};

struct CensusReport {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t d = 0;
  unsigned predicates = 0;
  Engine engine = Engine::fast;
  std::uint64_t cap = 0;
  bool heavy = false;
  std::uint64_t total = 0;
  std::uint64_t expected_total = 0;
  /// subset mask -> number of subspaces on which every predicate in it holds
  std::map<unsigned, std::uint64_t> counts;
  /// subset mask -> first witnesses in stream order
  std::map<unsigned, std::vector<MatSpace>> witnesses;
  // runtime, excluded from the canonical report body
  double elapsed_seconds = 0;
  unsigned workers = 1;
  std::size_t tasks = 0;
};

/// Throws CapExceeded (with the exact total) when the total exceeds the cap,
/// or when it exceeds kHeavyThreshold without heavy.
void check_census_size(std::size_t n, std::uint64_t q, std::size_t d, std::uint64_t cap, bool heavy);

/// Every d-dimensional subspace of Mat_n(F_q) once: pivot patterns in
/// lexicographic order, then free entries with the last one fastest.
/// The visitor returns false to stop.
void subspace_stream(std::size_t n, std::uint64_t q, std::size_t d, std::uint64_t cap, bool heavy,
                     const std::function<bool(const MatSpace&)>& visit);

/// q in {2, 3, 5}. Throws CapExceeded, BudgetExceeded, Unsupported.
CensusReport census(std::size_t n, std::uint64_t q, std::size_t d, const CensusOptions& opts = {});

struct MaxDiagResult {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t d_max = 0;
  std::optional<MatSpace> witness;
  /// d -> number of all-diagonalizable subspaces, for every d searched
  std::map<std::size_t, std::uint64_t> counts;
};

/// Searches d = n(n+1)/2 down to n + 1; below that the diagonal space is a witness.
MaxDiagResult max_diag_dim(std::size_t n, std::uint64_t q, const CensusOptions& opts = {});

struct ClassificationEntry {
  MatSpace v;
  /// Non-isotropic P with V = P Alt_n, when the search finds one.
  std::optional<Matrix> p;
};

struct MaximalDiagEntry {
  MatSpace v;
  Outcome outcome;
  bool similar_to_sym = false;
};

struct ClassificationReport {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t dim = 0;  // n(n-1)/2
  /// Irreducible trivial-spectrum subspaces of dimension above n(n-1)/2.
  std::uint64_t above_bound = 0;
  std::vector<ClassificationEntry> entries;
  std::vector<MaximalDiagEntry> maximal_diag;
  bool all_expressible() const;
  bool maximal_diag_consistent() const;
};

/// n = 2 only unless heavy. Searches GL_n(F_q) exhaustively for each entry.
ClassificationReport verify_classification(std::size_t n, std::uint64_t q, const CensusOptions& opts = {});

/// One row per subset: key,count,total.
std::string census_csv(const CensusReport& r);

}  // namespace matspace
