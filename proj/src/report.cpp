#include "matspace/report.hpp"

#include <utility>

namespace matspace {

namespace {

using Claims = std::vector<std::pair<std::string, bool>>;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing member \"") + key + "\"");
  return j.at(key);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key, const std::function<T(const json&)>& read) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return read(j.at(key));
}

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

json options_json(const PredicateOptions& o) { return json{{"seed", o.seed}, {"budget", o.budget}}; }

PredicateOptions options_from(const json& j) {
  PredicateOptions o;
  if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("budget")) o.budget = j.at("budget").get<std::uint64_t>();
  return o;
}

void expect(VerifyResult& r, std::string name, bool ok, std::string detail = {}) {
  r.checks.push_back({std::move(name), ok, std::move(detail)});
}

// Recovery report contents as read back from JSON.
struct LoadedRecovery {
  explicit LoadedRecovery(MatSpace v) : input(std::move(v)) {}
  MatSpace input;
  std::vector<Stage> stages;
  std::string outcome;
  std::optional<MatSpace> orth, symmetrizers;
  std::optional<Matrix> p, q, d, q_balanced, d_balanced, s, witness;
  std::optional<std::vector<Scalar>> scales;
  std::optional<Scalar> c;
};

LoadedRecovery load_recovery(const json& j) {
  LoadedRecovery r(subspace_from_json(member(j, "input")));
  const Field f = r.input.field();
  auto space = [&](const json& x) { return subspace_from_json(x, f); };
  auto matrix = [&](const json& x) { return matrix_from_json(f, x); };
  r.outcome = member(j, "outcome").get<std::string>();
  for (const auto& s : member(j, "stages"))
    r.stages.push_back({member(s, "name").get<std::string>(), verdict_from_json(f, member(s, "verdict")),
                        member(s, "blocking").get<bool>()});
  r.orth = opt_from<MatSpace>(j, "orth", space);
  r.symmetrizers = opt_from<MatSpace>(j, "symmetrizers", space);
  r.p = opt_from<Matrix>(j, "P", matrix);
  r.q = opt_from<Matrix>(j, "Q", matrix);
  r.d = opt_from<Matrix>(j, "D", matrix);
  r.q_balanced = opt_from<Matrix>(j, "Q_balanced", matrix);
  r.d_balanced = opt_from<Matrix>(j, "D_balanced", matrix);
  r.s = opt_from<Matrix>(j, "S", matrix);
  r.witness = opt_from<Matrix>(j, "witness", matrix);
  r.c = opt_from<Scalar>(j, "c", [&](const json& x) { return scalar_from_json(f, x); });
  r.scales = opt_from<std::vector<Scalar>>(j, "scales", [&](const json& x) { return vector_from_json(f, x).entries(); });
  const std::size_t n = r.input.n();
  for (const auto* m : {&r.p, &r.q, &r.d, &r.q_balanced, &r.d_balanced, &r.s, &r.witness})
    if (*m && ((*m)->rows() != n || (*m)->cols() != n)) throw Error(ErrorCode::shape_mismatch, "report matrix is not n x n");
  if (r.scales && r.scales->size() != n) throw Error(ErrorCode::shape_mismatch, "scales must have n entries");
  return r;
}

bool congruence_holds(const Matrix& q, const Matrix& p, const Matrix& d) {
  return is_invertible(q) && d.is_diagonal() && q * p * q.transpose() == d;
}

bool stage_witness_reverifies(const LoadedRecovery& r, const Stage& s) {
  const Field& f = r.input.field();
  const std::size_t n = r.input.n();
  if (s.name == "identity") return s.verdict.witness.matrix && *s.verdict.witness.matrix == Matrix::identity(f, n) && !r.input.contains(*s.verdict.witness.matrix);
  if (s.name == "irreducible_orth") return r.orth && reverify_irreducible_witness(*r.orth, s.verdict);
  if (s.name == "trivial_spectrum_orth") return r.orth && reverify_spectrum_witness(*r.orth, s.verdict);
  if (s.name == "non_isotropic") return r.p && reverify_isotropy_witness(*r.p, s.verdict);
  if (s.name == "square_class" || s.name == "square_class_rebalance") return reverify_diagonalizable_witness(r.input, s.verdict);
  return false;
}

Claims recovery_claims(const LoadedRecovery& r) {
  Claims out;
  const Field& f = r.input.field();
  const std::size_t n = r.input.n();
  const MatSpace sym = standard_space(StandardKind::sym, n, f);
  out.emplace_back("input_dim_maximal", r.input.dim() == n * (n + 1) / 2);
  out.emplace_back("contains_identity", r.input.contains(Matrix::identity(f, n)));
  if (r.orth) {
    out.emplace_back("orth_is_complement", *r.orth == orth_complement(r.input));
    out.emplace_back("orth_dim", r.orth->dim() == n * (n - 1) / 2);
  }
  if (r.symmetrizers) out.emplace_back("symmetrizers_solve", *r.symmetrizers == symmetrizer_space(r.input));
  if (r.p) {
    out.emplace_back("p_in_symmetrizers", r.symmetrizers && r.symmetrizers->contains(*r.p));
    out.emplace_back("p_symmetric", r.p->is_symmetric());
    out.emplace_back("p_invertible", is_invertible(*r.p));
    out.emplace_back("v_p_is_sym", transform(r.input, *r.p, TransformMode::right) == sym);
  }
  if (r.p && r.q && r.d) out.emplace_back("congruence_exact", congruence_holds(*r.q, *r.p, *r.d));
  if (r.p && r.q_balanced && r.d_balanced)
    out.emplace_back("balanced_congruence_exact", congruence_holds(*r.q_balanced, *r.p, *r.d_balanced));
  const std::optional<Matrix>& qf = r.q_balanced ? r.q_balanced : r.q;
  if (r.p && qf && r.scales && r.c) {
    const Matrix m = Matrix::diagonal(*r.scales) * *qf;
    out.emplace_back("scalar_form", m * *r.p * m.transpose() == *r.c * Matrix::identity(f, n));
  }
  if (r.s) {
    out.emplace_back("s_invertible", is_invertible(*r.s));
    out.emplace_back("s_conjugates_sym_to_v", is_invertible(*r.s) && transform(sym, *r.s, TransformMode::conjugate) == r.input);
  }
  if (r.witness) {
    out.emplace_back("witness_in_v", r.input.contains(*r.witness));
    out.emplace_back("witness_not_diagonalizable", !is_diagonalizable(*r.witness));
  }
  for (const auto& s : r.stages)
    if (s.verdict.is_fails() && !s.verdict.witness.empty())
      out.emplace_back("stage:" + s.name + ":witness_reverified", stage_witness_reverifies(r, s));
  return out;
}

json claims_json(const Claims& claims) {
  json out = json::array();
  for (const auto& [name, value] : claims) out.push_back(json{{"claim", name}, {"value", value}});
  return out;
}

bool claim(const Claims& claims, const std::string& name) {
  for (const auto& [k, v] : claims)
    if (k == name) return v;
  return false;
}

void verify_recovery(const json& j, VerifyResult& res) {
  LoadedRecovery r = load_recovery(j);
  const Claims claims = recovery_claims(r);
  const json& recorded = member(j, "transcript");
  expect(res, "transcript_recomputed", recorded == claims_json(claims), "recorded claims match recomputation");
  for (const auto& [name, value] : claims) expect(res, "claim:" + name, true, value ? "true" : "false");

  for (const auto& s : r.stages) {
    bool consistent = true;
    const bool holds = s.verdict.is_holds();
    if (s.name == "dimension") consistent = holds == claim(claims, "input_dim_maximal");
    else if (s.name == "identity") consistent = holds == claim(claims, "contains_identity");
    else if (s.name == "orth_dimension") consistent = holds == (claim(claims, "orth_is_complement") && claim(claims, "orth_dim"));
    else if (s.name == "symmetrizer_check")
      consistent = holds == (claim(claims, "p_symmetric") && claim(claims, "p_invertible") && claim(claims, "v_p_is_sym"));
    else if (s.name == "congruence") consistent = !holds || claim(claims, "congruence_exact");
    else if (s.name == "similarity" && r.input.n() > 1)
      consistent = holds == (claim(claims, "scalar_form") && claim(claims, "s_conjugates_sym_to_v"));
    else if (s.name == "similarity") consistent = holds == claim(claims, "s_conjugates_sym_to_v");
    if (s.verdict.is_fails() && !s.verdict.witness.empty())
      consistent = consistent && claim(claims, "stage:" + s.name + ":witness_reverified");
    expect(res, "stage:" + s.name, consistent, std::string(to_string(s.verdict.status)));
  }

  if (r.outcome == "success" || r.outcome == "conditional_success") {
    expect(res, "outcome", claim(claims, "s_conjugates_sym_to_v"), "S Sym_n S^-1 = V");
  } else if (r.outcome == "square_class_failure") {
    expect(res, "outcome", claim(claims, "witness_in_v") && claim(claims, "witness_not_diagonalizable"),
           "witness is a non-diagonalizable member of V");
  } else if (r.outcome == "failure" || r.outcome == "normalization_uncertified") {
    expect(res, "outcome", !r.stages.empty() && !r.stages.back().verdict.is_holds(), "last stage did not hold");
  } else {
    bad("unknown outcome \"" + r.outcome + "\"");
  }
}

json verdicts_json(const AnalysisReport& r) {
  auto one = [&](const Verdict& v, bool reverified) {
    json j = to_json(v);
    if (v.is_fails()) j["reverified"] = reverified;
    return j;
  };
  return json{
      {"irreducible", one(r.irreducible, reverify_irreducible_witness(r.input, r.irreducible))},
      {"all_diagonalizable", one(r.all_diagonalizable, reverify_diagonalizable_witness(r.input, r.all_diagonalizable))},
      {"trivial_spectrum", one(r.trivial_spectrum, reverify_spectrum_witness(r.input, r.trivial_spectrum))},
  };
}

void verify_analysis(const json& j, VerifyResult& res) {
  const MatSpace v = subspace_from_json(member(j, "input"));
  const PredicateOptions o = options_from(member(j, "options"));
  const MatSpace orth = subspace_from_json(member(j, "orth"), v.field());
  expect(res, "dim", member(j, "dim").get<std::size_t>() == v.dim());
  expect(res, "orth_is_complement", orth == orth_complement(v));
  expect(res, "dimension_identity", v.dim() + orth.dim() == v.n() * v.n());
  const json& verdicts = member(j, "verdicts");
  const AnalysisReport again = analyze(v, o);
  const json recomputed = verdicts_json(again);
  for (const char* name : {"irreducible", "all_diagonalizable", "trivial_spectrum"}) {
    const json& rec = member(verdicts, name);
    const Verdict vd = verdict_from_json(v.field(), rec);
    bool ok = rec == recomputed.at(name);
    if (vd.is_fails()) {
      const std::string n = name;
      const bool w = n == "irreducible"          ? reverify_irreducible_witness(v, vd)
                     : n == "all_diagonalizable" ? reverify_diagonalizable_witness(v, vd)
                                                 : reverify_spectrum_witness(v, vd);
      ok = ok && w;
    }
    expect(res, std::string("verdict:") + name, ok, std::string(to_string(vd.status)));
  }
}

CensusOptions census_options_from(const json& m) {
  CensusOptions o;
  o.predicates = parse_predicates(member(m, "predicates").get<std::string>());
  o.cap = member(m, "cap").get<std::uint64_t>();
  o.budget = member(m, "budget").get<std::uint64_t>();
  o.heavy = member(m, "heavy").get<bool>();
  o.witness_limit = member(m, "witness_limit").get<std::size_t>();
  const std::string engine = member(m, "engine").get<std::string>();
  if (engine == "generic") o.engine = Engine::generic;
  else if (engine != "fast") bad("unknown engine \"" + engine + "\"");
  return o;
}

json census_manifest(std::size_t n, std::uint64_t q, std::size_t d, const CensusOptions& o, Engine engine) {
  json m{{"n", n}, {"q", q}};
  if (d != static_cast<std::size_t>(-1)) m["d"] = d;
  m["predicates"] = predicate_key(o.predicates);
  m["cap"] = o.cap;
  m["budget"] = o.budget;
  m["heavy"] = o.heavy;
  m["witness_limit"] = o.witness_limit;
  m["engine"] = std::string(to_string(engine));
  m["version"] = kVersion;
  m["seedless"] = true;
  return m;
}

json without_runtime(json j) {
  j.erase("runtime");
  return j;
}

void verify_census(const json& j, VerifyResult& res) {
  const json& m = member(j, "manifest");
  CensusOptions o = census_options_from(m);
  const auto n = member(m, "n").get<std::size_t>();
  const auto q = member(m, "q").get<std::uint64_t>();
  const auto d = member(m, "d").get<std::size_t>();
  const Field f = Field::prime(q);
  bool shapes = true;
  for (const auto& [key, list] : member(j, "witnesses").items())
    for (const auto& w : list) {
      const MatSpace v = subspace_from_json(w, f);
      shapes = shapes && v.n() == n && v.dim() == d && to_json(v) == w;
    }
  expect(res, "witnesses_canonical", shapes, "each witness is a canonical d-dimensional basis");
  const CensusReport again = census(n, q, d, o);
  expect(res, "total_matches_gaussian_binomial", member(j, "total") == gaussian_binomial(unsigned(n * n), unsigned(d), q));
  expect(res, "body_recomputed", without_runtime(j) == census_body(again, o), "census rerun gives the same body");
}

void verify_max_diag(const json& j, VerifyResult& res) {
  const json& m = member(j, "manifest");
  CensusOptions o = census_options_from(m);
  const auto n = member(m, "n").get<std::size_t>();
  const auto q = member(m, "q").get<std::uint64_t>();
  const Field f = Field::prime(q);
  const MatSpace w = subspace_from_json(member(j, "witness"), f);
  expect(res, "witness_dim", w.dim() == member(j, "d_max").get<std::size_t>());
  expect(res, "witness_all_diagonalizable", all_diagonalizable(w).is_holds());
  expect(res, "body_recomputed", without_runtime(j) == without_runtime(to_json(max_diag_dim(n, q, o), o)));
}

void verify_classification_report(const json& j, VerifyResult& res) {
  const json& m = member(j, "manifest");
  CensusOptions o = census_options_from(m);
  const auto n = member(m, "n").get<std::size_t>();
  const auto q = member(m, "q").get<std::uint64_t>();
  const Field f = Field::prime(q);
  const MatSpace alt = standard_space(StandardKind::alt, n, f);
  bool expressions = true;
  for (const auto& e : member(j, "entries")) {
    const MatSpace v = subspace_from_json(member(e, "subspace"), f);
    if (e.at("P").is_null()) continue;
    const Matrix p = matrix_from_json(f, e.at("P"));
    expressions = expressions && is_invertible(p) && transform(alt, p, TransformMode::left) == v && non_isotropic(p).is_holds();
  }
  expect(res, "expressions_reverified", expressions, "V = P Alt_n with P non-isotropic");
  expect(res, "body_recomputed", without_runtime(j) == without_runtime(to_json(verify_classification(n, q, o), o)));
}

}  // namespace

AnalysisReport analyze(const MatSpace& v, const PredicateOptions& opts) {
  AnalysisReport r(v);
  r.options = opts;
  r.orth = orth_complement(v);
  r.irreducible = irreducible(v, opts);
  r.all_diagonalizable = all_diagonalizable(v, opts);
  r.trivial_spectrum = trivial_spectrum(v, opts);
  return r;
}

json to_json(const AnalysisReport& r) {
  return json{{"kind", "analysis_report"},
              {"version", kVersion},
              {"options", options_json(r.options)},
              {"input", to_json(r.input)},
              {"dim", r.input.dim()},
              {"orth", to_json(r.orth)},
              {"verdicts", verdicts_json(r)}};
}

json to_json(const RecoveryReport& r, const PredicateOptions& opts) {
  json stages = json::array();
  for (const auto& s : r.stages)
    stages.push_back(json{{"name", s.name}, {"blocking", s.blocking}, {"verdict", to_json(s.verdict)}});
  json scales = nullptr;
  if (r.scales) scales = to_json(Vector(r.input.field(), *r.scales));
  json j{{"kind", "recovery_report"},
         {"version", kVersion},
         {"options", options_json(opts)},
         {"input", to_json(r.input)},
         {"outcome", to_string(r.outcome)},
         {"failed_stage", r.failed_stage.empty() ? json(nullptr) : json(r.failed_stage)},
         {"hypotheses_refuted", r.hypotheses_refuted},
         {"stages", stages},
         {"orth", opt_json(r.orth)},
         {"symmetrizers", opt_json(r.symmetrizers)},
         {"P", opt_json(r.p)},
         {"Q", opt_json(r.q)},
         {"D", opt_json(r.d)},
         {"Q_balanced", opt_json(r.q_balanced)},
         {"D_balanced", opt_json(r.d_balanced)},
         {"scales", scales},
         {"c", opt_json(r.c)},
         {"S", opt_json(r.s)},
         {"witness", opt_json(r.witness)},
         {"offending_index", r.offending ? json(*r.offending) : json(nullptr)}};
  j["transcript"] = claims_json(recovery_claims(load_recovery(j)));
  return j;
}

json census_body(const CensusReport& r, const CensusOptions& opts) {
  CensusOptions o = opts;
  o.predicates = r.predicates;
  o.cap = r.cap;
  o.heavy = r.heavy;
  json counts = json::object();
  for (const auto& [key, c] : r.counts) counts[predicate_key(key)] = c;
  json witnesses = json::object();
  for (const auto& [key, list] : r.witnesses) {
    json arr = json::array();
    for (const auto& v : list) arr.push_back(to_json(v));
    witnesses[predicate_key(key)] = arr;
  }
  const std::uint64_t full = r.counts.count(r.predicates) ? r.counts.at(r.predicates) : 0;
  return json{{"kind", "census_report"},
              {"manifest", census_manifest(r.n, r.q, r.d, o, r.engine)},
              {"total", r.total},
              {"expected_total", r.expected_total},
              {"counts", counts},
              {"summary", std::to_string(full) + " of " + std::to_string(r.total) + " subspaces satisfy " + predicate_key(r.predicates)},
              {"witnesses", witnesses}};
}

json to_json(const CensusReport& r, const CensusOptions& opts) {
  json j = census_body(r, opts);
  j["runtime"] = json{{"elapsed_seconds", r.elapsed_seconds},
                      {"workers", r.workers},
                      {"tasks", r.tasks},
                      {"partition", "one task per pivot pattern"}};
  return j;
}

json to_json(const MaxDiagResult& r, const CensusOptions& opts) {
  CensusOptions o = opts;
  o.predicates = kDiag;
  json counts = json::object();
  for (const auto& [d, c] : r.counts) counts[std::to_string(d)] = c;
  return json{{"kind", "max_diag_report"},
              {"manifest", census_manifest(r.n, r.q, static_cast<std::size_t>(-1), o, opts.engine)},
              {"d_max", r.d_max},
              {"witness", opt_json(r.witness)},
              {"counts", counts}};
}

json to_json(const ClassificationReport& r, const CensusOptions& opts) {
  CensusOptions o = opts;
  o.predicates = kTrivialSpectrum | kIrreducible;
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(json{{"subspace", to_json(e.v)}, {"P", opt_json(e.p)}});
  json maximal = json::array();
  for (const auto& e : r.maximal_diag)
    maximal.push_back(json{{"subspace", to_json(e.v)}, {"outcome", to_string(e.outcome)}, {"similar_to_sym", e.similar_to_sym}});
  return json{{"kind", "classification_report"},
              {"manifest", census_manifest(r.n, r.q, static_cast<std::size_t>(-1), o, opts.engine)},
              {"dim", r.dim},
              {"above_bound", r.above_bound},
              {"entries", entries},
              {"all_expressible", r.all_expressible()},
              {"maximal_diag", maximal},
              {"maximal_diag_consistent", r.maximal_diag_consistent()}};
}

bool VerifyResult::ok() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

VerifyResult verify_report(const json& report) {
  VerifyResult res;
  res.kind = member(report, "kind").get<std::string>();
  if (res.kind == "recovery_report") verify_recovery(report, res);
  else if (res.kind == "analysis_report") verify_analysis(report, res);
  else if (res.kind == "census_report") verify_census(report, res);
  else if (res.kind == "max_diag_report") verify_max_diag(report, res);
  else if (res.kind == "classification_report") verify_classification_report(report, res);
  else bad("unknown report kind \"" + res.kind + "\"");
  return res;
}

json to_json(const VerifyResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json one{{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) one["detail"] = c.detail;
    checks.push_back(one);
  }
  return json{{"kind", "verification"}, {"report_kind", r.kind}, {"ok", r.ok()}, {"checks", checks}};
}

}  // namespace matspace
