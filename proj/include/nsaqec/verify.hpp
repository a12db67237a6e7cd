// Copyright 2026 The NSAQEC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nsaqec/codes.hpp"

namespace nsaqec {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::vector<std::string> lines;  // measured-vs-expected table
};

struct VerifyOptions {
    std::size_t oracle_states = 1000;
    int learn_seeds = 20;
    int learn_max_steps = 20000;
    unsigned threads = 0;
    /// Receives progress text; may be empty.
    std::function<void(const std::string&)> progress;
};

CheckResult check_loss_coefficients();
CheckResult check_fidelity_expansions();
CheckResult check_general_n();
CheckResult check_qudit_table();
CheckResult check_binomial();
CheckResult check_recovery_soundness(const VerifyOptions& opt = {});
CheckResult check_rediscovery(const VerifyOptions& opt = {});
CheckResult check_loss_bound_scaling();

/// Recovery soundness checks for one code at one gamma: plan vs oracle, trace
/// safety and sector purity. Used on the built-in families and on mutated fixtures.
CheckResult check_code_soundness(const CodeSpace& code, double gamma, std::size_t oracle_states);

/// Runs criteria 1-6 and 8, plus 7 when `with_learning` is set.
std::vector<CheckResult> run_verify(bool with_learning, const VerifyOptions& opt = {});

std::string format_check(const CheckResult& r);

}  // namespace nsaqec
