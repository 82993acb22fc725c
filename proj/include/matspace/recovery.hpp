#pragma once

// Recovery of a similarity S with V = S Sym_n S^-1 for a subspace V of
// dimension n(n+1)/2, staged so that each failure carries a checkable reason.

#include <optional>
#include <string>
#include <vector>

#include "matspace/predicates.hpp"

namespace matspace {

struct SymmetrizerResult {
  /// {P : M P symmetric for every M in V}
  MatSpace solutions;
  /// Invertible member chosen from the solutions.
  Matrix p;
};

/// Throws NoInvertibleSolution when the search finds no invertible member;
/// the search is exhaustive over a finite field (within budget) and bounded
/// to integer combinations with coefficients in [-3, 3] over Q.
SymmetrizerResult solve_symmetrizer(const MatSpace& v, std::uint64_t budget = kDefaultBudget);
/// Solution space only.
MatSpace symmetrizer_space(const MatSpace& v);

struct Congruence {
  Matrix q;  // invertible
  Matrix d;  // diagonal, q p q^T = d
};

/// Symmetric elimination. Throws NotSymmetric, or Char2AlternatingResidual
/// when a nonzero residual block has zero diagonal in characteristic 2.
Congruence congruence_diagonalize(const Matrix& p);

struct SquareClassResult {
  /// mu_i with mu_i^2 d_i = d_1; present iff every d_i / d_1 is a square.
  std::optional<std::vector<Scalar>> scales;
  std::optional<Scalar> c;
  /// First index (1-based) whose ratio is not a square.
  std::optional<std::size_t> offending;
};

/// Throws ZeroDiagonalEntry.
SquareClassResult square_class_normalize(const Matrix& d);

struct Rebalanced {
  Congruence congruence;  // q p q^T = d with every d_i in the class of c, unless offending
  Scalar c;
  std::optional<std::size_t> offending;  // 1-based leftover index when no c I_n is congruent
};

/// Finite fields of odd characteristic: re-diagonalizes pairs of entries
/// outside the class of c, using that binary forms over F_q represent every
/// nonzero value. For odd n c is taken in the class of det d; for even n
/// c = d_1 and a single leftover entry proves that no c I_n is congruent.
Rebalanced rebalance_square_classes(const Congruence& greedy);

/// (E_{1,i} + E_{i,1}) d^-1 for diagonal invertible d, 2 <= i <= n (1-based).
/// Throws SquareClassNotViolated when d_i^-1 d_1^-1 is a square.
Matrix nondiag_witness(const Matrix& d, std::size_t i);

struct BlockMaps {
  std::size_t n = 0;
  std::size_t split = 1;
  /// Linear maps as matrices acting on coordinates over the canonical basis of V.
  Matrix a;  // 1 x dim V
  Matrix c;  // (n-1) x dim V, first column below the corner
  Matrix r;  // (n-1) x dim V, first row right of the corner
  Matrix k;  // (n-1)^2 x dim V, lower-right block row-major
  MatSpace w;                // Ker C inside V
  MatSpace w_ker_k_ker_a;    // W ∩ Ker K ∩ Ker a
  std::size_t dim_c_image = 0;
  std::size_t dim_w = 0;
  std::size_t dim_k_of_w = 0;
  std::size_t dim_w_ker_k_ker_a = 0;
};

struct Blocks {
  Scalar a;
  Vector c;  // column
  Vector r;  // row
  Matrix k;
};

Blocks blocks_of(const Matrix& m);
Matrix reassemble(const Blocks& b);

/// Throws ShapeMismatch for n < 2.
BlockMaps block_decompose(const MatSpace& v);

enum class Outcome { success, conditional_success, square_class_failure, normalization_uncertified, failure };
std::string_view to_string(Outcome o);

struct Stage {
  std::string name;
  Verdict verdict;
  bool blocking = true;
};

struct RecoveryReport {
  explicit RecoveryReport(MatSpace v) : input(std::move(v)) {}

  MatSpace input;
  std::vector<Stage> stages;
  Outcome outcome = Outcome::failure;
  std::string failed_stage;
  std::optional<MatSpace> orth;
  std::optional<MatSpace> symmetrizers;
  std::optional<Matrix> p;
  std::optional<Matrix> q;  // greedy congruence
  std::optional<Matrix> d;
  std::optional<Matrix> q_balanced;  // after square-class rebalancing
  std::optional<Matrix> d_balanced;
  std::optional<std::vector<Scalar>> scales;
  std::optional<Scalar> c;
  std::optional<Matrix> s;
  std::optional<Matrix> witness;
  std::optional<std::size_t> offending;  // 1-based
  /// A non-blocking hypothesis check failed with a witness.
  bool hypotheses_refuted = false;

  bool succeeded() const { return outcome == Outcome::success || outcome == Outcome::conditional_success; }
  const Stage* stage(std::string_view name) const;
};

/// Runs every stage in order; blocking failures stop the pipeline. Budget
/// errors from the exhaustive hypothesis checks propagate.
RecoveryReport recover(const MatSpace& v, const PredicateOptions& opts = {});

/// Final congruence in use: the rebalanced one when present.
Matrix final_congruence(const RecoveryReport& r);

}  // namespace matspace
