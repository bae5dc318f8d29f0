#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twintree {

struct CaseFailure {
  std::string case_name;
  std::vector<std::pair<std::string, std::string>> inputs;  // (label, value or DSL)
  std::string expected;
  std::string got;
};

// Outcome of one suite. Deliberately holds no timing data so that equal
// seeds give byte-identical serialized reports; the CLI reports wall time on
// stderr instead.
struct CheckReport {
  std::string suite;
  int cases = 0;
  std::vector<CaseFailure> failures;
  bool passed() const { return failures.empty(); }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int max_n = 8;   // lemma6: largest tree size
  int cases = 0;   // randomized suites: case count, 0 = suite default
  int depth = 8;   // oracle depth where applicable
  int bound = 4;   // rerooting depth for unrooted semi-decisions
};

const std::vector<std::string>& suite_names();

// Runs one named suite. Throws UnknownSuite for anything not in
// suite_names().
CheckReport run_suite(const std::string& name, const SuiteOptions& opt = {});

// Deterministic JSON text of a report (no timing fields).
std::string report_json(const CheckReport& r);

}  // namespace twintree
