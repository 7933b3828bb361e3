#pragma once

#include <string>
#include <vector>

namespace wakeradon {

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfTestResult {
    std::vector<SelfTestCheck> checks;
    std::string radicand_table;
    bool all_passed = false;
};

/// Numerical certification suite: proximal-operator oracle comparison,
/// adjoint dot test, Lipschitz cross-check against a densely materialized
/// operator, and the cube-root radicand audit (the p-variant violates
/// prox(0) = 0; the shipped q-variant matches the oracle).
///
/// `perturb_prox` is a negative-control hook: it biases the prox values
/// under test so the oracle comparison must fail.
SelfTestResult run_selftest(bool perturb_prox = false);

std::string render_selftest_text(const SelfTestResult& result);

}  // namespace wakeradon
