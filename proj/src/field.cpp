#include "matspace/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <tuple>
#include <utility>

namespace matspace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::unsupported: return "Unsupported";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::infinite_field: return "InfiniteField";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::singular: return "Singular";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::char2_alternating_residual: return "Char2AlternatingResidual";
    case ErrorCode::zero_diagonal_entry: return "ZeroDiagonalEntry";
    case ErrorCode::square_class_not_violated: return "SquareClassNotViolated";
    case ErrorCode::no_invertible_solution: return "NoInvertibleSolution";
    case ErrorCode::zero_vector: return "ZeroVector";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace {

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 31;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 64-bit; p < 2^31 keeps everything in range
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

// Tonelli-Shanks for odd prime p; x must be a nonzero quadratic residue.
std::uint64_t tonelli_shanks(std::uint64_t x, std::uint64_t p) {
  if (p % 4 == 3) return powmod(x, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(x, q, p);
  std::uint64_t r = powmod(x, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= kMaxPrime)
    throw Error(ErrorCode::unsupported, "prime must satisfy 2 <= p < 2^31, got " + std::to_string(p));
  if (!is_prime_u64(p)) throw Error(ErrorCode::not_prime, std::to_string(p) + " is composite");
  return Field(FieldKind::prime, p);
}

Field Field::rational() { return Field(FieldKind::rational, 0); }

Field Field::parse(std::string_view descriptor) {
  std::string s = lower(descriptor);
  if (s == "rational" || s == "q" || s == "rationals") return rational();
  std::string_view digits;
  for (std::string_view prefix : {"prime", "gf(", "gf", "f"}) {
    if (s.rfind(prefix, 0) == 0) {
      digits = std::string_view(s).substr(prefix.size());
      break;
    }
  }
  if (!digits.empty() && digits.back() == ')') digits.remove_suffix(1);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw Error(ErrorCode::parse_error, "unrecognised field descriptor '" + std::string(descriptor) + "'");
  return prime(p);
}

std::optional<std::uint64_t> Field::cardinality() const {
  if (kind_ == FieldKind::prime) return p_;
  return std::nullopt;
}

std::string Field::name() const {
  return kind_ == FieldKind::prime ? "GF(" + std::to_string(p_) + ")" : "Q";
}

std::string Field::cli_name() const {
  return kind_ == FieldKind::prime ? "gf" + std::to_string(p_) : "rational";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (kind_ == FieldKind::rational) return Scalar(*this, mpq_class(mpz_class(static_cast<long>(v))));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar(*this, static_cast<std::uint64_t>(r));
}

Scalar Field::from_mpz(const mpz_class& v) const {
  if (kind_ == FieldKind::rational) return Scalar(*this, mpq_class(v));
  return Scalar(*this, reduce_mpz(v, p_));
}

Scalar Field::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator");
  if (kind_ == FieldKind::rational) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(*this, q);
  }
  return from_mpz(num) / from_mpz(den);
}

std::vector<Scalar> Field::elements() const {
  if (!is_finite()) throw Error(ErrorCode::infinite_field, "cannot enumerate Q");
  std::vector<Scalar> out;
  out.reserve(p_);
  for (std::uint64_t v = 0; v < p_; ++v) out.emplace_back(*this, v);
  return out;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Field& field, std::uint64_t residue) : field_(field), value_(std::uint64_t{0}) {
  if (field.is_prime())
    value_ = residue % field.modulus();
  else
    value_ = mpq_class(static_cast<unsigned long>(residue));
}

Scalar::Scalar(const Field& field, mpq_class value) : field_(field), value_(std::uint64_t{0}) {
  if (field.is_prime()) {
    value.canonicalize();
    std::uint64_t num = reduce_mpz(value.get_num(), field.modulus());
    std::uint64_t den = reduce_mpz(value.get_den(), field.modulus());
    if (den == 0) throw Error(ErrorCode::division_by_zero, "denominator vanishes mod p");
    value_ = mulmod(num, invmod(den, field.modulus()), field.modulus());
  } else {
    value.canonicalize();
    value_ = std::move(value);
  }
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw Error(ErrorCode::field_mismatch, field_.name() + " vs " + o.field_.name());
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return residue() == 0;
  return sgn(rational()) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return residue() == 1 % field_.modulus();
  return rational() == 1;
}

Scalar Scalar::operator-() const {
  if (field_.is_prime()) {
    std::uint64_t r = residue();
    return Scalar(field_, r == 0 ? 0 : field_.modulus() - r);
  }
  return Scalar(field_, mpq_class(-rational()));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  if (field_.is_prime()) return Scalar(field_, invmod(residue(), field_.modulus()));
  return Scalar(field_, mpq_class(1 / rational()));
}

Scalar Scalar::pow(long long k) const { return pow(mpz_class(static_cast<long>(k))); }

Scalar Scalar::pow(const mpz_class& k) const {
  if (k < 0) return inv().pow(mpz_class(-k));
  if (field_.is_prime()) {
    // exponent reduction by Fermat is valid for nonzero bases only
    if (is_zero()) return k == 0 ? field_.one() : *this;
    mpz_class e = k % mpz_class(static_cast<unsigned long>(field_.modulus() - 1));
    return Scalar(field_, powmod(residue(), e.get_ui(), field_.modulus()));
  }
  mpq_class r(1);
  mpz_class e = k;
  mpq_class base = rational();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r *= base;
    base *= base;
    e >>= 1;
  }
  return Scalar(field_, r);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t s = residue() + o.residue();
    if (s >= field_.modulus()) s -= field_.modulus();
    value_ = s;
  } else {
    std::get<mpq_class>(value_) += o.rational();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t a = residue(), b = o.residue();
    value_ = a >= b ? a - b : a + field_.modulus() - b;
  } else {
    std::get<mpq_class>(value_) -= o.rational();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime())
    value_ = mulmod(residue(), o.residue(), field_.modulus());
  else
    std::get<mpq_class>(value_) *= o.rational();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inv();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.field_.is_prime()) return a.residue() == b.residue();
  return a.rational() == b.rational();
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (a.field_.is_prime()) return a.residue() < b.residue();
  return a.rational() < b.rational();
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue());
  return rational().get_num().get_str() + "/" + rational().get_den().get_str();
}

// ---------------------------------------------------------------- squares

bool is_square(const Scalar& x) {
  const Field& f = x.field();
  if (f.is_prime()) {
    std::uint64_t p = f.modulus();
    if (p == 2 || x.is_zero()) return true;
    return powmod(x.residue(), (p - 1) / 2, p) == 1;
  }
  const mpq_class& q = x.rational();
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

std::optional<Scalar> sqrt(const Scalar& x) {
  if (!is_square(x)) return std::nullopt;
  const Field& f = x.field();
  if (f.is_prime()) {
    std::uint64_t p = f.modulus();
    if (p == 2 || x.is_zero()) return x;
    std::uint64_t r = tonelli_shanks(x.residue(), p);
    return Scalar(f, std::min(r, p - r));
  }
  // rationals: the nonnegative root
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), x.rational().get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), x.rational().get_den_mpz_t());
  return f.from_fraction(num, den);
}

}  // namespace matspace
