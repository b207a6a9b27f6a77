#pragma once

#include <string>
#include <vector>

namespace pf {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Property suites runnable from the CLI (`verify <suite>`) and from the
// acceptance harness. Each is self-contained: independent oracles live
// inside the check, not in the code paths they exercise.
namespace checks {

CheckResult residue_symbol_oracle();   // brute-force {x^l mod p} equivalence
CheckResult weil_bound();              // |S| <= k sqrt(p), exact cyclotomic
CheckResult lemma31_existence();       // m0 exists above the threshold
CheckResult discriminant_oracle();     // Dedekind-criterion differential test
CheckResult stender_norms();           // 200-triple exact-norm grid
CheckResult lambda_trichotomy();       // lambda classes + zero nonresidue sum
CheckResult split_density_echo();      // Chebotarev fractions at l = 3
CheckResult classnum_oracle();         // truncated Euler product fixture
CheckResult pipeline_end_to_end();     // construct+analyze, staged vs direct
CheckResult bound_ratio_sweep();       // a = n^3+1 family ratios
CheckResult size_ratio_echo();         // constructed vs random radicands

std::vector<std::string> suite_names();
// Runs one named suite ("all" runs everything). Unknown names throw
// InvalidArgument.
std::vector<CheckResult> run_suite(const std::string& name);

}  // namespace checks
}  // namespace pf
