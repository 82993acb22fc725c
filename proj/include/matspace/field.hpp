#pragma once

// Exact scalar arithmetic over GF(p) (word-size p) and the rationals.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "matspace/error.hpp"

namespace matspace {

class Scalar;

enum class FieldKind { prime, rational };

/// Descriptor of the ground field. A cheap value type; two Field objects are
/// the same field iff they compare equal.
class Field {
 public:
  /// Validates 2 <= p < 2^31 and primality.
  static Field prime(std::uint64_t p);
  static Field rational();

  /// Accepts "prime 7", "gf7", "GF(7)", "rational", "Q".
  static Field parse(std::string_view descriptor);

  FieldKind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == FieldKind::prime; }
  bool is_finite() const noexcept { return kind_ == FieldKind::prime; }
  std::uint64_t characteristic() const noexcept { return kind_ == FieldKind::prime ? p_ : 0; }
  /// Number of elements, absent for Q.
  std::optional<std::uint64_t> cardinality() const;
  /// Only meaningful for prime kind.
  std::uint64_t modulus() const noexcept { return p_; }

  std::string name() const;  // "GF(7)" or "Q"
  std::string cli_name() const;  // "gf7" or "rational"

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_mpz(const mpz_class& v) const;
  /// Rational kind: num/den. Prime kind: num * den^-1.
  Scalar from_fraction(const mpz_class& num, const mpz_class& den) const;

  /// 0, 1, ..., p-1. Throws InfiniteField for Q.
  std::vector<Scalar> elements() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Field(FieldKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

/// Element of a Field in canonical form: residue in [0,p) or a reduced
/// fraction with positive denominator.
class Scalar {
 public:
  Scalar(const Field& field, std::uint64_t residue);
  Scalar(const Field& field, mpq_class value);

  const Field& field() const noexcept { return field_; }

  bool is_zero() const;
  bool is_one() const;

  /// Prime kind only.
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
  /// Rational kind only.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  Scalar operator-() const;
  Scalar inv() const;
  Scalar pow(long long k) const;
  Scalar pow(const mpz_class& k) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Total order on canonical values (residues, or rationals by magnitude).
  friend bool canonical_less(const Scalar& a, const Scalar& b);

  /// "3" for GF(p); "a/b" for Q.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;

  Field field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

bool is_square(const Scalar& x);

/// A square root r with r^2 = x, choosing the smaller canonical value of
/// {r, -r}; absent when x is not a square.
std::optional<Scalar> sqrt(const Scalar& x);

}  // namespace matspace
