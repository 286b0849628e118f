#pragma once

// End-to-end oracle suite behind `gqtm verify`: the simulated counting-machine
// words against the substitution construction, plus the supporting
// identities and numerics sanity checks.

#include <cstddef>
#include <string>
#include <vector>

namespace gqtm {

struct VerifyOptions {
    int n_max = 10;
    /// Flip one bit of the substitution oracle; the suite must then fail.
    bool inject_fault = false;
    std::size_t path_horizon = 100000;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    int n_max = 0;
    bool pass = false;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    std::string to_json() const;
};

VerifyReport run_verification(const VerifyOptions& options);

} // namespace gqtm
