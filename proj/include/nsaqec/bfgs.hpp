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
#include <optional>
#include <string>
#include <vector>

namespace nsaqec {

using Objective = std::function<double(const std::vector<double>&)>;

struct BfgsOptions {
    int max_iterations = 20000;
    double grad_tol = 1e-8;
    double fd_step = 1e-6;
    std::optional<double> f_target;  // stop once f < f_target
    double c1 = 1e-4;
    double c2 = 0.9;
    int max_line_search = 40;
};

enum class BfgsStatus { GradientConverged, TargetReached, MaxIterations, LineSearchFailed };

std::string_view status_name(BfgsStatus s);

struct BfgsResult {
    std::vector<double> x;
    double f = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    long evaluations = 0;
    BfgsStatus status = BfgsStatus::MaxIterations;
    std::vector<double> trace;  // f at the start point and every accepted iterate
};

/// Central differences, step h per coordinate.
std::vector<double> central_gradient(const Objective& f, const std::vector<double>& x, double h, long* evals = nullptr);

/// Quasi-Newton minimization with an inverse-Hessian BFGS update and a strong-Wolfe
/// line search. Gradients come from central differences.
BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opt = {});

}  // namespace nsaqec
