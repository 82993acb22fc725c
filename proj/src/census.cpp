#include "matspace/census.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace matspace {

namespace {

using Digits = std::vector<std::uint8_t>;

// ---------------------------------------------------------------- RREF patterns

struct Pattern {
  std::vector<std::size_t> pivots;
  std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
};

std::vector<Pattern> pivot_patterns(std::size_t m, std::size_t d) {
  std::vector<Pattern> out;
  if (d > m) return out;
  std::vector<std::size_t> piv(d);
  for (std::size_t i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    Pattern p{piv, {}};
    std::vector<bool> is_pivot(m, false);
    for (auto c : piv) is_pivot[c] = true;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = piv[r] + 1; c < m; ++c)
        if (!is_pivot[c]) p.free.emplace_back(r, c);
    out.push_back(std::move(p));
    // next d-subset in lexicographic order
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

// Visits every RREF with this pivot pattern as flat d x m digits; the last
// free entry runs fastest.
template <class Visit>
bool for_each_assignment(const Pattern& p, std::size_t m, unsigned q, Visit&& visit) {
  const std::size_t d = p.pivots.size();
  Digits rows(d * m, 0);
  for (std::size_t r = 0; r < d; ++r) rows[r * m + p.pivots[r]] = 1;
  while (true) {
    if (!visit(rows)) return false;
    std::size_t k = p.free.size();
    while (k > 0) {
      auto [r, c] = p.free[k - 1];
      if (++rows[r * m + c] < q) break;
      rows[r * m + c] = 0;
      --k;
    }
    if (k == 0) return true;
  }
}

MatSpace to_space(const Digits& rows, std::size_t n, const Field& f) {
  const std::size_t m = n * n, d = rows.size() / m;
  Matrix coords(f, d, m);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < m; ++c) coords(r, c) = f.from_int(rows[r * m + c]);
  return MatSpace::from_coordinates(f, n, coords);
}

// ---------------------------------------------------------------- small integer matrices mod q

using IntMat = std::vector<int>;

IntMat mul(const IntMat& a, const IntMat& b, std::size_t n, int q) {
  IntMat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      int x = a[i * n + k];
      if (!x) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % q;
    }
  return c;
}

int inverse_mod(int x, int q) {
  for (int y = 1; y < q; ++y)
    if (x * y % q == 1) return y;
  return 0;
}

bool singular_mod(IntMat a, std::size_t n, int q) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return true;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
    int inv = inverse_mod(a[col * n + col], q);
    for (std::size_t r = col + 1; r < n; ++r) {
      int f = a[r * n + col] * inv % q;
      if (!f) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] = ((a[r * n + j] - f * a[col * n + j]) % q + q) % q;
    }
  }
  return false;
}

// ---------------------------------------------------------------- lookup tables

inline constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 22;
enum : std::uint8_t { kFlagDiag = 1, kFlagNonzeroEigen = 2 };

struct Tables {
  std::size_t n = 0;
  unsigned q = 0;
  std::vector<std::uint64_t> pw;     // q^k, digit k of a matrix code
  std::vector<std::uint8_t> flags;   // per matrix code
  std::vector<std::uint64_t> stab;   // per matrix code, bit s = proper subspace s is stable
  bool has_stab = false;
  bool stab_tried = false;
};

std::uint64_t ipow(std::uint64_t q, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= q;
  return r;
}

bool tables_feasible(std::size_t n, unsigned q) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    size *= q;
    if (size > kMaxTable) return false;
  }
  return true;
}

IntMat decode(std::uint64_t code, std::size_t m, unsigned q) {
  IntMat a(m);
  for (std::size_t k = 0; k < m; ++k) {
    a[k] = static_cast<int>(code % q);
    code /= q;
  }
  return a;
}

void build_flags(Tables& t) {
  const std::size_t n = t.n, m = n * n;
  const int q = static_cast<int>(t.q);
  const std::uint64_t size = ipow(q, m);
  t.flags.assign(size, 0);
  for (std::uint64_t code = 0; code < size; ++code) {
    IntMat a = decode(code, m, q);
    // diagonalizable over F_q  <=>  M^q = M
    IntMat p = a;
    for (int k = 1; k < q; ++k) p = mul(p, a, n, q);
    std::uint8_t f = p == a ? kFlagDiag : 0;
    for (int lam = 1; lam < q && !(f & kFlagNonzeroEigen); ++lam) {
      IntMat s = a;
      for (std::size_t i = 0; i < n; ++i) s[i * n + i] = ((s[i * n + i] - lam) % q + q) % q;
      if (singular_mod(s, n, q)) f |= kFlagNonzeroEigen;
    }
    t.flags[code] = f;
  }
}

void build_stab(Tables& t) {
  const std::size_t n = t.n, m = n * n;
  const unsigned q = t.q;
  const std::uint64_t vecs = ipow(q, n);
  // proper nonzero subspaces of F_q^n with membership tables
  std::vector<std::vector<IntMat>> bases;
  std::vector<std::vector<bool>> member;
  for (std::size_t k = 1; k < n; ++k)
    for (const auto& pat : pivot_patterns(n, k))
      for_each_assignment(pat, n, q, [&](const Digits& rows) {
        std::vector<IntMat> basis;
        for (std::size_t r = 0; r < k; ++r) basis.emplace_back(rows.begin() + r * n, rows.begin() + (r + 1) * n);
        std::vector<bool> in(vecs, false);
        std::vector<unsigned> coeff(k, 0);
        for (std::uint64_t e = 0; e < ipow(q, k); ++e) {
          std::uint64_t code = 0;
          for (std::size_t j = n; j-- > 0;) {
            unsigned x = 0;
            for (std::size_t r = 0; r < k; ++r) x += coeff[r] * basis[r][j];
            code = code * q + x % q;
          }
          in[code] = true;
          for (std::size_t r = 0; r < k && ++coeff[r] == q; ++r) coeff[r] = 0;
        }
        bases.push_back(std::move(basis));
        member.push_back(std::move(in));
        return true;
      });
  if (bases.size() > 64) return;
  const std::uint64_t size = ipow(q, m);
  t.stab.assign(size, 0);
  for (std::uint64_t code = 0; code < size; ++code) {
    IntMat a = decode(code, m, q);
    std::uint64_t mask = 0;
    for (std::size_t s = 0; s < bases.size(); ++s) {
      bool stable = true;
      for (const auto& u : bases[s]) {
        std::uint64_t img = 0;
        for (std::size_t i = n; i-- > 0;) {
          unsigned x = 0;
          for (std::size_t j = 0; j < n; ++j) x += static_cast<unsigned>(a[i * n + j]) * u[j];
          img = img * q + x % q;
        }
        if (!member[s][img]) {
          stable = false;
          break;
        }
      }
      if (stable) mask |= std::uint64_t{1} << s;
    }
    t.stab[code] = mask;
  }
  t.has_stab = true;
}

std::shared_ptr<const Tables> tables_for(std::size_t n, unsigned q, bool need_stab) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::shared_ptr<Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, q}];
  if (!slot) {
    slot = std::make_shared<Tables>();
    slot->n = n;
    slot->q = q;
    for (std::size_t k = 0; k < n * n; ++k) slot->pw.push_back(ipow(q, k));
    build_flags(*slot);
  }
  if (need_stab && !slot->stab_tried) {
    slot->stab_tried = true;
    build_stab(*slot);
  }
  return slot;
}

// ---------------------------------------------------------------- evaluation

unsigned evaluate_fast(const Digits& rows, std::size_t m, const Tables& t, unsigned preds) {
  const std::size_t d = rows.size() / m;
  const unsigned q = t.q;
  unsigned holds = 0;
  std::vector<std::uint64_t> codes(d, 0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < m; ++c) codes[r] += rows[r * m + c] * t.pw[c];
  if (preds & kIrreducible) {
    // F^1 has no proper nonzero subspace; otherwise start from "all stable"
    std::uint64_t common = t.n == 1 ? 0 : ~std::uint64_t{0};
    for (auto c : codes) common &= t.stab[c];
    if (common == 0) holds |= kIrreducible;
  }
  const bool want_diag = preds & kDiag, want_ts = preds & kTrivialSpectrum;
  if (!want_diag && !want_ts) return holds;
  bool diag_ok = true, ts_ok = true;
  auto see = [&](std::uint64_t code) {
    const std::uint8_t f = t.flags[code];
    if (!(f & kFlagDiag)) diag_ok = false;
    if (f & kFlagNonzeroEigen) ts_ok = false;
    return (want_diag && diag_ok) || (want_ts && ts_ok);
  };
  if (q == 2) {
    std::uint64_t cur = 0;
    const std::uint64_t count = std::uint64_t{1} << d;
    for (std::uint64_t i = 1; i < count; ++i) {
      cur ^= codes[__builtin_ctzll(i)];
      if (!see(cur)) break;
    }
  } else {
    Digits cur(m, 0);
    std::vector<unsigned> coeff(d, 0);
    std::uint64_t code = 0;
    bool going = true;
    while (going) {
      std::size_t k = 0;
      for (; k < d; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
          const unsigned add = rows[k * m + j];
          if (!add) continue;
          const unsigned old = cur[j], nw = (old + add) % q;
          cur[j] = static_cast<std::uint8_t>(nw);
          code = code + nw * t.pw[j] - old * t.pw[j];
        }
        if (++coeff[k] < q) break;
        coeff[k] = 0;
      }
      if (k == d) break;
      going = see(code);
    }
  }
  if (want_diag && diag_ok) holds |= kDiag;
  if (want_ts && ts_ok) holds |= kTrivialSpectrum;
  return holds;
}

unsigned evaluate_generic(const MatSpace& v, unsigned preds, std::uint64_t budget) {
  PredicateOptions po;
  po.budget = budget;
  unsigned holds = 0;
  if ((preds & kDiag) && all_diagonalizable(v, po).is_holds()) holds |= kDiag;
  if ((preds & kTrivialSpectrum) && trivial_spectrum(v, po).is_holds()) holds |= kTrivialSpectrum;
  if ((preds & kIrreducible) && irreducible(v, po).is_holds()) holds |= kIrreducible;
  return holds;
}

struct TaskResult {
  std::uint64_t total = 0;
  std::array<std::uint64_t, 8> counts{};
  std::array<std::vector<Digits>, 8> witnesses;
};

}  // namespace

// ---------------------------------------------------------------- public

std::string predicate_key(unsigned mask) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (!(mask & bit)) return;
    if (!out.empty()) out += '+';
    out += name;
  };
  add(kDiag, "diag");
  add(kTrivialSpectrum, "ts");
  add(kIrreducible, "irr");
  return out;
}

unsigned parse_predicates(std::string_view text) {
  unsigned mask = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(",+", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    if (tok == "diag") mask |= kDiag;
    else if (tok == "ts") mask |= kTrivialSpectrum;
    else if (tok == "irr") mask |= kIrreducible;
    else if (tok == "all") mask |= kAllPredicates;
    else throw Error(ErrorCode::parse_error, "unknown predicate '" + std::string(tok) + "' (expected diag, ts, irr, all)");
    start = end + 1;
  }
  return mask;
}

std::string_view to_string(Engine e) { return e == Engine::fast ? "fast" : "generic"; }

std::uint64_t gaussian_binomial(unsigned m, unsigned d, std::uint64_t q) {
  if (d > m) return 0;
  // [m, d] = [m-1, d-1] + q^d [m-1, d], saturating
  std::vector<std::uint64_t> row(d + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= m; ++i)
    for (unsigned k = std::min(i, d); k >= 1; --k) {
      std::uint64_t qk = 1;
      for (unsigned j = 0; j < k && qk != UINT64_MAX; ++j) qk = qk > UINT64_MAX / q ? UINT64_MAX : qk * q;
      unsigned __int128 v = static_cast<unsigned __int128>(qk) * row[k] + row[k - 1];
      row[k] = v > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(v);
    }
  return row[d];
}

void check_census_size(std::size_t n, std::uint64_t q, std::size_t d, std::uint64_t cap, bool heavy) {
  if (q != 2 && q != 3 && q != 5) throw Error(ErrorCode::unsupported, "census supports q in {2, 3, 5}");
  if (n == 0 || d > n * n) throw Error(ErrorCode::shape_mismatch, "need n >= 1 and d <= n^2");
  const std::uint64_t total = gaussian_binomial(static_cast<unsigned>(n * n), static_cast<unsigned>(d), q);
  if (total > cap)
    throw Error(ErrorCode::cap_exceeded, std::to_string(total) + " subspaces exceed cap " + std::to_string(cap));
  if (total > kHeavyThreshold && !heavy)
    throw Error(ErrorCode::cap_exceeded,
                std::to_string(total) + " subspaces exceed " + std::to_string(kHeavyThreshold) + " without --heavy");
}

void subspace_stream(std::size_t n, std::uint64_t q, std::size_t d, std::uint64_t cap, bool heavy,
                     const std::function<bool(const MatSpace&)>& visit) {
  check_census_size(n, q, d, cap, heavy);
  const Field f = Field::prime(q);
  const std::size_t m = n * n;
  for (const auto& pat : pivot_patterns(m, d))
    if (!for_each_assignment(pat, m, static_cast<unsigned>(q), [&](const Digits& rows) { return visit(to_space(rows, n, f)); }))
      return;
}

CensusReport census(std::size_t n, std::uint64_t q, std::size_t d, const CensusOptions& opts) {
  check_census_size(n, q, d, opts.cap, opts.heavy);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = n * n;
  const unsigned preds = opts.predicates & kAllPredicates;
  const Field f = Field::prime(q);

  CensusReport rep;
  rep.n = n;
  rep.q = q;
  rep.d = d;
  rep.predicates = preds;
  rep.cap = opts.cap;
  rep.heavy = opts.heavy;
  rep.expected_total = gaussian_binomial(static_cast<unsigned>(m), static_cast<unsigned>(d), q);

  std::shared_ptr<const Tables> tables;
  bool fast = opts.engine == Engine::fast && tables_feasible(n, static_cast<unsigned>(q));
  if (fast) {
    tables = tables_for(n, static_cast<unsigned>(q), preds & kIrreducible);
    if ((preds & kIrreducible) && !tables->has_stab) fast = false;
  }
  rep.engine = fast ? Engine::fast : Engine::generic;

  const std::vector<Pattern> patterns = pivot_patterns(m, d);
  std::vector<TaskResult> results(patterns.size());
  auto keep = [&](unsigned key, std::size_t have) {
    return key == opts.keep_all_witnesses_for || have < opts.witness_limit;
  };
  auto run_task = [&](std::size_t idx) {
    TaskResult& res = results[idx];
    for_each_assignment(patterns[idx], m, static_cast<unsigned>(q), [&](const Digits& rows) {
      ++res.total;
      unsigned holds = fast ? evaluate_fast(rows, m, *tables, preds) : evaluate_generic(to_space(rows, n, f), preds, opts.budget);
      for (unsigned key = 1; key < 8; ++key) {
        if ((key & preds) != key || (holds & key) != key) continue;
        ++res.counts[key];
        if (keep(key, res.witnesses[key].size())) res.witnesses[key].push_back(rows);
      }
      return true;
    });
  };

  const unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < patterns.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < patterns.size();) {
          try {
            run_task(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
            next = patterns.size();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }

  // merge in pattern order, so the report does not depend on the worker count
  for (unsigned key = 1; key < 8; ++key)
    if ((key & preds) == key) rep.counts[key] = 0;
  for (const auto& res : results) {
    rep.total += res.total;
    for (unsigned key = 1; key < 8; ++key) {
      if ((key & preds) != key) continue;
      rep.counts[key] += res.counts[key];
      for (const auto& w : res.witnesses[key]) {
        auto& list = rep.witnesses[key];
        if (!keep(key, list.size())) break;
        list.push_back(to_space(w, n, f));
      }
    }
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.workers = workers;
  rep.tasks = patterns.size();
  return rep;
}

MaxDiagResult max_diag_dim(std::size_t n, std::uint64_t q, const CensusOptions& opts) {
  MaxDiagResult out;
  out.n = n;
  out.q = q;
  CensusOptions o = opts;
  o.predicates = kDiag;
  o.witness_limit = 1;
  o.keep_all_witnesses_for = 0;
  for (std::size_t d = n * (n + 1) / 2; d > n; --d) {
    CensusReport r = census(n, q, d, o);
    out.counts[d] = r.counts[kDiag];
    if (r.counts[kDiag] > 0) {
      out.d_max = d;
      out.witness = r.witnesses[kDiag].front();
      return out;
    }
  }
  MatSpace diag = standard_space(StandardKind::diagonal, n, Field::prime(q));
  if (!all_diagonalizable(diag).is_holds()) throw Error(ErrorCode::unsupported, "diagonal space failed diagonalizability");
  out.d_max = n;
  out.witness = diag;
  return out;
}

bool ClassificationReport::all_expressible() const {
  for (const auto& e : entries)
    if (!e.p) return false;
  return true;
}

bool ClassificationReport::maximal_diag_consistent() const {
  for (const auto& e : maximal_diag)
    if (!e.similar_to_sym) return false;
  return true;
}

ClassificationReport verify_classification(std::size_t n, std::uint64_t q, const CensusOptions& opts) {
  if (n < 2) throw Error(ErrorCode::shape_mismatch, "classification check needs n >= 2");
  if (n > 2 && !opts.heavy) throw Error(ErrorCode::cap_exceeded, "classification beyond n = 2 needs --heavy");
  const Field f = Field::prime(q);
  ClassificationReport rep;
  rep.n = n;
  rep.q = q;
  rep.dim = n * (n - 1) / 2;
  const unsigned key = kTrivialSpectrum | kIrreducible;

  CensusOptions o = opts;
  o.predicates = key;
  o.witness_limit = 0;
  o.keep_all_witnesses_for = key;
  CensusReport at = census(n, q, rep.dim, o);
  o.keep_all_witnesses_for = 0;
  if (rep.dim + 1 <= n * n) rep.above_bound = census(n, q, rep.dim + 1, o).counts[key];

  const MatSpace alt = standard_space(StandardKind::alt, n, f);
  const std::uint64_t size = ipow(q, n * n);
  PredicateOptions po;
  po.budget = opts.budget;
  for (const auto& v : at.witnesses[key]) {
    ClassificationEntry e{v, std::nullopt};
    for (std::uint64_t code = 0; code < size && !e.p; ++code) {
      IntMat a = decode(code, n * n, static_cast<unsigned>(q));
      Matrix p(f, n, n);
      for (std::size_t k = 0; k < n * n; ++k) p(k / n, k % n) = f.from_int(a[k]);
      if (!is_invertible(p) || !(transform(alt, p, TransformMode::left) == v)) continue;
      if (non_isotropic(p, po).is_holds()) e.p = p;
    }
    rep.entries.push_back(std::move(e));
  }

  CensusOptions t2 = opts;
  t2.predicates = kDiag;
  t2.witness_limit = 0;
  t2.keep_all_witnesses_for = kDiag;
  CensusReport maximal = census(n, q, n * (n + 1) / 2, t2);
  for (const auto& v : maximal.witnesses[kDiag]) {
    RecoveryReport r = recover(v, po);
    const bool similar = r.succeeded() && transform(standard_space(StandardKind::sym, n, f), *r.s, TransformMode::conjugate) == v;
    rep.maximal_diag.push_back({v, r.outcome, similar});
  }
  return rep;
}

std::string census_csv(const CensusReport& r) {
  std::ostringstream os;
  os << "predicates,count,total\n";
  for (const auto& [key, count] : r.counts) os << predicate_key(key) << ',' << count << ',' << r.total << '\n';
  return os.str();
}

}  // namespace matspace
