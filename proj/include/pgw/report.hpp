#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "pgw/bounds.hpp"
#include "pgw/families.hpp"
#include "pgw/multiplier.hpp"

namespace pgw {

struct AnalysisResult {
  BuiltFamily family;
  BoundReport report;
};

// Builds the family, computes invariants (engine-backed or symbolic),
// attaches the multiplier (closed-form formula or catalog, else absent)
// and runs every bound check once.
AnalysisResult run_analysis(const FamilySpec& spec, int c, const Catalog& catalog,
                            size_t closure_cap = size_t{1} << 18);

// Key order and all iteration orders are fixed: identical inputs produce
// byte-identical documents.
nlohmann::ordered_json analysis_json(const AnalysisResult& r);
std::string analysis_text(const AnalysisResult& r);

// false iff a checked-status inequality failed (a theorem violation on the
// given inputs; reported, and reflected in the exit code)
bool analysis_ok(const AnalysisResult& r);

struct SuiteItem {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct SuiteResult {
  std::string suite;
  std::vector<SuiteItem> items;
  bool all_pass = false;
};

// name: theorem23 | collection | struik | bounds | all
SuiteResult run_suite(const std::string& name, const Catalog& catalog);
nlohmann::ordered_json suite_json(const SuiteResult& r);
std::string suite_text(const SuiteResult& r);

}  // namespace pgw
