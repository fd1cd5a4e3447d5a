#pragma once
// Named verification suites shared by the CLI and the acceptance runner.
// Every suite returns a list of individually named checks; a check failure
// carries the module, the operation, the identity being tested and the first
// counterexample, so a red run is diagnosable from the message alone.

#include <cstdint>
#include <string>
#include <vector>

namespace glnq {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // on failure: module/operation/identity/counterexample
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// The desk pairs (n, q) every suite revolves around.
struct DeskPair {
  std::int64_t n, p, f;
};
const std::vector<DeskPair>& desk_pairs();

// Extension-size limit: the full preset works up to |K| = 4096, the small
// preset stops at 512 for a quick smoke pass.
std::int64_t desk_field_limit(bool small);

// The three blocks composing the engines suite, exposed separately so the
// acceptance runner can report them as distinct criteria.
std::vector<CheckResult> engines_agreement_checks(std::int64_t limit);
std::vector<CheckResult> sum_to_kernel_checks(std::int64_t limit);
std::vector<CheckResult> kloosterman_checks();

SuiteResult suite_engines(bool small);         // cross-engine agreement + sum-to-kernel + Kloosterman
SuiteResult suite_ppower(bool small);          // p-power and q-power trace laws
SuiteResult suite_census();                    // cubic kernel censuses, q0 in {2,3,5,4,7,8,9}
SuiteResult suite_weil();                      // decomposition, dimensions, inner products, censuses
SuiteResult suite_uniqueness();                // brute-force coefficient searches
SuiteResult suite_detchar();                   // determinant character product
SuiteResult suite_equidist(bool small);        // empirical vs exact distribution + exact companion
SuiteResult suite_abhyankar(bool small);       // pullback identities
SuiteResult suite_subfield_trace();            // witness construction

std::vector<SuiteResult> suite_all(bool small);
SuiteResult run_suite_by_name(const std::string& name, bool small);
const std::vector<std::string>& suite_names();

}  // namespace glnq
