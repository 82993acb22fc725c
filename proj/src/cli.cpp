#include "matspace/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "matspace/report.hpp"

namespace matspace {

namespace {

struct Common {
  std::string field;
  std::string input;
  std::string output;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t cap = kDefaultCap;
  unsigned workers = 1;
  bool heavy = false;
  std::uint64_t seed = 0;
};

struct CensusFlags {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t d = 0;
  std::string pred = "all";
  std::string engine = "fast";
  std::size_t witness_limit = 5;
  bool csv = false;
  bool max_diag = false;
  bool classify = false;
};

void add_common(CLI::App* app, Common& c, bool needs_input) {
  app->add_option("--field", c.field, "gf<p> or rational");
  auto* in = app->add_option("--input", c.input, "input JSON file");
  if (needs_input) in->required();
  app->add_option("--output", c.output, "write the report here instead of standard output");
  app->add_option("--budget", c.budget, "element-test budget")->capture_default_str();
  app->add_option("--cap", c.cap, "census subspace cap")->capture_default_str();
  app->add_option("--workers", c.workers, "census worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app->add_flag("--heavy", c.heavy, "allow census runs above the heavy threshold");
  app->add_option("--seed", c.seed, "seed for sampling over Q")->capture_default_str();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
}

std::optional<Field> cli_field(const Common& c) {
  if (c.field.empty()) return std::nullopt;
  return Field::parse(c.field);
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw Error(ErrorCode::parse_error, "cannot write " + c.output);
  f << text;
}

void emit(const json& j, const Common& c, std::ostream& out) { emit(j.dump(2) + "\n", c, out); }

PredicateOptions predicate_options(const Common& c) {
  PredicateOptions o;
  o.budget = c.budget;
  o.seed = c.seed;
  return o;
}

int run_analyze(const Common& c, std::ostream& out) {
  const MatSpace v = subspace_from_json(read_json(c.input), cli_field(c));
  const AnalysisReport r = analyze(v, predicate_options(c));
  emit(to_json(r), c, out);
  const Verdict* all[] = {&r.irreducible, &r.all_diagonalizable, &r.trivial_spectrum};
  if (std::any_of(std::begin(all), std::end(all), [](const Verdict* x) { return x->is_fails(); })) return kExitFails;
  if (std::any_of(std::begin(all), std::end(all), [](const Verdict* x) { return x->is_unknown(); })) return kExitUnknown;
  return kExitOk;
}

int run_recover(const Common& c, std::ostream& out) {
  const MatSpace v = subspace_from_json(read_json(c.input), cli_field(c));
  const PredicateOptions o = predicate_options(c);
  const RecoveryReport r = recover(v, o);
  emit(to_json(r, o), c, out);
  switch (r.outcome) {
    case Outcome::success:
    case Outcome::conditional_success:
      return kExitOk;
    case Outcome::normalization_uncertified:
      return kExitUnknown;
    default:
      return kExitFails;
  }
}

int run_census(const Common& c, const CensusFlags& f, const CLI::App& sub, std::ostream& out) {
  std::uint64_t q = f.q;
  if (auto fld = cli_field(c)) {
    if (!fld->is_finite()) throw Error(ErrorCode::unsupported, "census needs a finite field");
    if (q != 0 && q != fld->modulus()) throw Error(ErrorCode::field_mismatch, "--field and --q disagree");
    q = fld->modulus();
  }
  if (q == 0) throw Error(ErrorCode::parse_error, "census needs --q or --field");
  if (f.n == 0) throw Error(ErrorCode::parse_error, "census needs --n >= 1");
  CensusOptions o;
  o.predicates = parse_predicates(f.pred);
  o.cap = c.cap;
  o.budget = c.budget;
  o.workers = c.workers;
  o.heavy = c.heavy;
  o.witness_limit = f.witness_limit;
  if (f.engine == "generic") o.engine = Engine::generic;
  else if (f.engine != "fast") throw Error(ErrorCode::parse_error, "unknown engine " + f.engine);

  if (f.max_diag) {
    emit(to_json(max_diag_dim(f.n, q, o), o), c, out);
    return kExitOk;
  }
  if (f.classify) {
    const ClassificationReport r = verify_classification(f.n, q, o);
    emit(to_json(r, o), c, out);
    return r.all_expressible() && r.maximal_diag_consistent() && r.above_bound == 0 ? kExitOk : kExitFails;
  }
  if (sub.count("--d") == 0) throw Error(ErrorCode::parse_error, "census needs --d");
  const CensusReport r = census(f.n, q, f.d, o);
  if (f.csv) emit(census_csv(r), c, out);
  else emit(to_json(r, o), c, out);
  return r.counts.count(r.predicates) && r.counts.at(r.predicates) > 0 ? kExitOk : kExitFails;
}

int run_verify(const Common& c, std::ostream& out) {
  const VerifyResult r = verify_report(read_json(c.input));
  emit(to_json(r), c, out);
  return r.ok() ? kExitOk : kExitFails;
}

int exit_for(ErrorCode code) {
  return code == ErrorCode::budget_exceeded || code == ErrorCode::cap_exceeded ? kExitLimit : kExitInput;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact linear algebra on subspaces of n x n matrices", "matspace"};
  app.require_subcommand(1);
  Common common;
  CensusFlags cf;

  auto* analyze_cmd = app.add_subcommand("analyze", "dimension, trace-form complement and predicate verdicts");
  add_common(analyze_cmd, common, true);
  auto* recover_cmd = app.add_subcommand("recover", "recover S with V = S Sym_n S^-1, or a staged failure");
  add_common(recover_cmd, common, true);
  auto* census_cmd = app.add_subcommand("census", "exhaustive subspace census over F_q");
  add_common(census_cmd, common, false);
  census_cmd->add_option("--n", cf.n, "matrix size");
  census_cmd->add_option("--q", cf.q, "field size, 2, 3 or 5");
  census_cmd->add_option("--d", cf.d, "subspace dimension");
  census_cmd->add_option("--pred", cf.pred, "diag, ts, irr joined by ',' or '+', or all")->capture_default_str();
  census_cmd->add_option("--engine", cf.engine, "fast or generic")->capture_default_str();
  census_cmd->add_option("--witness-limit", cf.witness_limit, "witnesses kept per predicate subset")->capture_default_str();
  census_cmd->add_flag("--csv", cf.csv, "print a CSV tally instead of JSON");
  auto* md = census_cmd->add_flag("--max-diag", cf.max_diag, "largest all-diagonalizable dimension");
  census_cmd->add_flag("--classify", cf.classify, "check the maximal irreducible trivial-spectrum classification")->excludes(md);
  auto* verify_cmd = app.add_subcommand("verify", "recompute every claim in an emitted report");
  add_common(verify_cmd, common, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_cmd) return run_analyze(common, out);
    if (*recover_cmd) return run_recover(common, out);
    if (*census_cmd) return run_census(common, cf, *census_cmd, out);
    return run_verify(common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace matspace
