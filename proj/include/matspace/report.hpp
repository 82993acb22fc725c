#pragma once

// Report documents emitted by the CLI and their re-verification. Reports
// embed their inputs by value; verify_report recomputes every recorded claim.

#include <string>
#include <vector>

#include "matspace/census.hpp"
#include "matspace/serialize.hpp"

namespace matspace {

inline constexpr const char* kVersion = "1.0.0";

struct AnalysisReport {
  explicit AnalysisReport(MatSpace v) : input(v), orth(std::move(v)) {}

  MatSpace input;
  MatSpace orth;
  Verdict irreducible;
  Verdict all_diagonalizable;
  Verdict trivial_spectrum;
  PredicateOptions options;
};

AnalysisReport analyze(const MatSpace& v, const PredicateOptions& opts = {});

json to_json(const AnalysisReport& r);
/// Includes a transcript of named claims recomputed from the emitted data.
json to_json(const RecoveryReport& r, const PredicateOptions& opts);

/// Everything except runtime; identical across worker counts.
json census_body(const CensusReport& r, const CensusOptions& opts);
json to_json(const CensusReport& r, const CensusOptions& opts);
json to_json(const MaxDiagResult& r, const CensusOptions& opts);
json to_json(const ClassificationReport& r, const CensusOptions& opts);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyResult {
  std::string kind;
  std::vector<Check> checks;
  bool ok() const;
};

/// Throws ParseError for documents that are not reports.
VerifyResult verify_report(const json& report);
json to_json(const VerifyResult& r);

}  // namespace matspace
