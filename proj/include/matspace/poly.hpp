#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matspace/field.hpp"

namespace matspace {

/// Univariate polynomial over a Field. Coefficients are stored low to high
/// with no trailing zeros; the zero polynomial has no coefficients.
class Poly {
 public:
  explicit Poly(const Field& field) : field_(field) {}
  Poly(const Field& field, std::vector<Scalar> coeffs);

  static Poly constant(const Scalar& c);
  /// c * t^k
  static Poly monomial(const Scalar& c, std::size_t k);
  /// t - a
  static Poly linear_root(const Scalar& a);
  /// From small integer coefficients, low to high.
  static Poly from_ints(const Field& field, const std::vector<long long>& coeffs);

  const Field& field() const noexcept { return field_; }
  const std::vector<Scalar>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  Scalar coeff(std::size_t k) const;
  Scalar leading() const;

  Poly monic() const;
  Poly derivative() const;
  Scalar eval(const Scalar& x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();

  Field field_;
  std::vector<Scalar> c_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly a, Poly b);

/// base^e mod m for e >= 0.
Poly powmod(Poly base, mpz_class e, const Poly& m);

}  // namespace matspace
