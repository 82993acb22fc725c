#pragma once

// Decision procedures on subspaces of Mat_n(F). Each returns a Verdict whose
// Fails witness can be re-checked independently of the procedure that found it.

#include <functional>
#include <optional>
#include <string>

#include "matspace/space.hpp"

namespace matspace {

enum class Status { holds, fails, unknown };
std::string_view to_string(Status s);

struct Witness {
  std::optional<Matrix> matrix;      // non-diagonalizable member, or a member with a nonzero eigenvalue
  std::optional<Scalar> eigenvalue;  // paired with matrix for trivial-spectrum failures
  std::optional<Vector> vector;      // isotropic vector
  std::optional<VecSpace> subspace;  // proper stable subspace of F^n

  bool empty() const { return !matrix && !eigenvalue && !vector && !subspace; }
};

struct Verdict {
  Status status = Status::holds;
  Witness witness;
  std::string reason;

  static Verdict holds() { return {}; }
  static Verdict fails(Witness w, std::string reason = {}) { return {Status::fails, std::move(w), std::move(reason)}; }
  static Verdict unknown(std::string reason) { return {Status::unknown, {}, std::move(reason)}; }

  bool is_holds() const { return status == Status::holds; }
  bool is_fails() const { return status == Status::fails; }
  bool is_unknown() const { return status == Status::unknown; }
};

struct PredicateOptions {
  std::uint64_t budget = kDefaultBudget;
  /// Seed for the pseudorandom sampling used over Q.
  std::uint64_t seed = 0;
  std::size_t rational_samples = 1000;
  std::size_t rational_spin_samples = 100;
  /// Coordinates of the small integer vectors searched for isotropy over Q.
  long long isotropy_search_radius = 5;
};

/// Vectors added while saturating span{v} under left multiplication by the
/// basis of V, in the order they were added (v first).
std::vector<Vector> spin_sequence(const MatSpace& v, const Vector& start);

/// Smallest V-stable subspace of F^n containing start. Throws ZeroVector.
VecSpace spin(const MatSpace& v, const Vector& start);

/// Whether M w lies in W for every basis matrix M of V and basis vector w of W.
bool is_stable(const MatSpace& v, const VecSpace& w);

/// One representative per point of P(F^n): first nonzero coordinate is 1,
/// in lexicographic order. The visitor returns false to stop.
void for_each_projective_point(const Field& field, std::size_t n, std::uint64_t budget,
                               const std::function<bool(const Vector&)>& visit);

/// Dimension of the unital associative algebra generated by V. When it is
/// n^2 no proper nonzero subspace of F^n is V-stable.
std::size_t generated_algebra_dim(const MatSpace& v);

/// Finite field: exhaustive spin from every projective point. Over Q a full
/// generated algebra certifies Holds; otherwise spins from sampled kernels
/// either find a stable subspace or the verdict is Unknown.
Verdict irreducible(const MatSpace& v, const PredicateOptions& opts = {});
/// Finite field Fails witness: a nonzero nilpotent member when one exists,
/// else the first non-diagonalizable member in enumeration order.
Verdict all_diagonalizable(const MatSpace& v, const PredicateOptions& opts = {});
Verdict trivial_spectrum(const MatSpace& v, const PredicateOptions& opts = {});
Verdict non_isotropic(const Matrix& p, const PredicateOptions& opts = {});

/// Re-checks a Fails witness from the corresponding predicate above.
bool reverify_irreducible_witness(const MatSpace& v, const Verdict& verdict);
bool reverify_diagonalizable_witness(const MatSpace& v, const Verdict& verdict);
bool reverify_spectrum_witness(const MatSpace& v, const Verdict& verdict);
bool reverify_isotropy_witness(const Matrix& p, const Verdict& verdict);

/// X^T P X
Scalar quadratic_form(const Matrix& p, const Vector& x);

}  // namespace matspace
