#include "matspace/poly.hpp"

#include <sstream>

namespace matspace {

Poly::Poly(const Field& field, std::vector<Scalar> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (!(c.field() == field_)) throw Error(ErrorCode::field_mismatch, "polynomial coefficient");
  trim();
}

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const Scalar& c, std::size_t k) {
  std::vector<Scalar> v(k + 1, c.field().zero());
  v[k] = c;
  return Poly(c.field(), std::move(v));
}

Poly Poly::linear_root(const Scalar& a) { return Poly(a.field(), {-a, a.field().one()}); }

Poly Poly::from_ints(const Field& field, const std::vector<long long>& coeffs) {
  std::vector<Scalar> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.push_back(field.from_int(c));
  return Poly(field, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_.zero(); }

Scalar Poly::leading() const { return c_.empty() ? field_.zero() : c_.back(); }

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Scalar inv = c_.back().inv();
  Poly out(*this);
  for (auto& c : out.c_) c *= inv;
  return out;
}

Poly Poly::derivative() const {
  std::vector<Scalar> v;
  for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(field_.from_int(static_cast<long long>(k)) * c_[k]);
  return Poly(field_, std::move(v));
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!(field_ == o.field_)) throw Error(ErrorCode::field_mismatch, "polynomial addition");
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!(field_ == o.field_)) throw Error(ErrorCode::field_mismatch, "polynomial subtraction");
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (!(a.field_ == b.field_)) throw Error(ErrorCode::field_mismatch, "polynomial product");
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(a.field_, std::move(v));
}

Poly operator*(const Scalar& s, const Poly& a) {
  std::vector<Scalar> v = a.c_;
  for (auto& c : v) c *= s;
  return Poly(a.field_, std::move(v));
}

bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c_[k].is_one();
    if (!unit || k == 0) os << c_[k].to_string();
    if (k >= 1) os << (unit ? "" : "*") << "t";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "polynomial division by zero");
  const Field& f = a.field();
  std::vector<Scalar> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Poly(f), a};
  std::vector<Scalar> quot(static_cast<std::size_t>(da - db + 1), f.zero());
  Scalar lead_inv = b.leading().inv();
  for (int k = da; k >= db; --k) {
    Scalar c = rem[static_cast<std::size_t>(k)] * lead_inv;
    quot[static_cast<std::size_t>(k - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.erase(rem.begin() + db, rem.end());
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(Poly base, mpz_class e, const Poly& m) {
  Poly result = Poly::constant(m.field().one()) % m;
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return result;
}

}  // namespace matspace
