#pragma once

#include <functional>
#include <string>
#include <vector>

namespace edgestat::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// Names of the invariant checks, in run order.
const std::vector<std::string>& check_names();

/// Runs one named check; thresholds are multiplied by tol_scale.
CheckResult run_check(const std::string& name, double tol_scale = 1.0);

/// Runs the selected checks (all when only is empty) and reports each result as it completes.
std::vector<CheckResult> run_checks(const std::vector<std::string>& only, double tol_scale,
                                    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace edgestat::verify
