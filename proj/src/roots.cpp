#include <algorithm>
#include <map>

#include "matspace/matrix.hpp"

namespace matspace {

namespace {

// ---- integer factoring for the rational root sieve

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  for (unsigned long p = 2; p < 10'000 && p * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::map<mpz_class, unsigned> fac;
  factor_into(abs(n), fac);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : fac) {
    std::size_t cur = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

std::vector<Scalar> rational_roots(const Poly& p) {
  const Field& f = p.field();
  std::vector<Scalar> roots;
  // strip the root 0
  std::size_t low = 0;
  while (low < p.coeffs().size() && p.coeffs()[low].is_zero()) ++low;
  if (low > 0) roots.push_back(f.zero());
  std::vector<mpq_class> c;
  for (std::size_t k = low; k < p.coeffs().size(); ++k) c.push_back(p.coeffs()[k].rational());
  if (c.size() <= 1) return roots;
  // primitive integer form
  mpz_class l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& x : c) z.push_back(mpz_class(x * l));
  const mpz_class a0 = z.front(), an = z.back();
  auto is_root = [&](const mpq_class& r) {
    mpq_class acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = acc * r + *it;
    return sgn(acc) == 0;
  };
  std::vector<mpz_class> nums = positive_divisors(a0), dens = positive_divisors(an);
  for (const auto& r : nums)
    for (const auto& s : dens) {
      if (gcd(r, s) != 1) continue;
      for (int sign : {1, -1}) {
        mpq_class cand(sign * r, s);
        cand.canonicalize();
        if (is_root(cand)) roots.push_back(f.from_fraction(cand.get_num(), cand.get_den()));
      }
    }
  return roots;
}

// ---- finite fields

// Split a monic squarefree product of distinct linear factors over odd GF(p).
void split_linear(const Poly& g, std::vector<Scalar>& out) {
  const Field& f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const mpz_class half(static_cast<unsigned long>((f.modulus() - 1) / 2));
  for (std::uint64_t shift = 0; shift < f.modulus(); ++shift) {
    // gcd(g, (t + shift)^((p-1)/2) - 1) separates residues from non-residues
    Poly base(f, {f.from_int(static_cast<long long>(shift)), f.one()});
    Poly h = powmod(base, half, g) - Poly::constant(f.one());
    Poly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, out);
      split_linear(divmod(g, d).first, out);
      return;
    }
  }
  throw Error(ErrorCode::unsupported, "equal-degree splitting did not separate roots");
}

std::vector<Scalar> finite_roots(const Poly& p) {
  const Field& f = p.field();
  const std::uint64_t q = f.modulus();
  const Poly t = Poly::monomial(f.one(), 1);
  // g = gcd(p, t^q - t): the product of the distinct linear factors of p
  Poly g = gcd(p, powmod(t, mpz_class(static_cast<unsigned long>(q)), p) - t);
  std::vector<Scalar> roots;
  if (q <= kRootScanLimit) {
    for (const Scalar& x : f.elements())
      if (g.eval(x).is_zero()) roots.push_back(x);
    if (static_cast<int>(roots.size()) != g.degree())
      throw Error(ErrorCode::unsupported, "root scan disagrees with gcd(p, t^q - t)");
    return roots;
  }
  split_linear(g, roots);
  return roots;
}

}  // namespace

std::vector<Scalar> roots_in_field(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::unsupported, "roots of the zero polynomial");
  std::vector<Scalar> roots = p.field().is_finite() ? finite_roots(p) : rational_roots(p);
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return canonical_less(a, b); });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace matspace
