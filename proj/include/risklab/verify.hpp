#pragma once
#include <string>
#include <vector>

namespace risklab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // observed vs threshold
};

// Property suites with fixed internal seeds. The projected-gradient oracle
// used by verify_optima is independent of the production solver path.
std::vector<CheckResult> verify_lemma1();
std::vector<CheckResult> verify_divergence();
std::vector<CheckResult> verify_optima();
std::vector<CheckResult> verify_lower_bounds(int threads = 0);
std::vector<CheckResult> verify_rates(int threads = 0);

// Used by the acceptance suite in addition to the suites above.
std::vector<CheckResult> verify_zero_guarantee();
std::vector<CheckResult> verify_hand_values();
std::vector<CheckResult> verify_determinism();

}  // namespace risklab
