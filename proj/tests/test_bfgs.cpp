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


#include <cmath>

#include "doctest.h"
#include "nsaqec/bfgs.hpp"

using namespace nsaqec;

namespace {

double rosenbrock(const std::vector<double>& x) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        f += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
    return f;
}

}  // namespace

TEST_CASE("central differences match an analytic gradient") {
    const std::vector<double> x{-1.2, 1.0, 0.3};
    long evals = 0;
    const auto g = central_gradient(rosenbrock, x, 1e-6, &evals);
    CHECK(evals == 6);
    CHECK(g[0] == doctest::Approx(-400 * x[0] * (x[1] - x[0] * x[0]) - 2 * (1 - x[0])).epsilon(1e-7));
    CHECK(g[2] == doctest::Approx(200 * (x[2] - x[1] * x[1])).epsilon(1e-7));
}

TEST_CASE("minimizes a convex quadratic") {
    const Objective f = [](const std::vector<double>& x) {
        return 3 * (x[0] - 1) * (x[0] - 1) + (x[1] + 2) * (x[1] + 2) + 0.5 * (x[0] - 1) * (x[1] + 2);
    };
    const auto r = minimize_bfgs(f, {5.0, 5.0});
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(r.iterations < 50);
}

TEST_CASE("minimizes the Rosenbrock valley") {
    const auto r = minimize_bfgs(rosenbrock, {-1.2, 1.0});
    CHECK(r.f < 1e-10);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("traces are non-increasing") {
    const auto r = minimize_bfgs(rosenbrock, {-1.0, 2.0, 0.5, -0.3});
    REQUIRE(r.trace.size() >= 2);
    CHECK(r.trace.front() == doctest::Approx(rosenbrock({-1.0, 2.0, 0.5, -0.3})));
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    CHECK(r.trace.back() == r.f);
}

TEST_CASE("stops on target and on the iteration cap") {
    BfgsOptions opt;
    opt.f_target = 1e-2;
    const auto t = minimize_bfgs(rosenbrock, {-1.2, 1.0}, opt);
    CHECK(t.status == BfgsStatus::TargetReached);
    CHECK(t.f < 1e-2);
    BfgsOptions cap;
    cap.max_iterations = 3;
    const auto c = minimize_bfgs(rosenbrock, {-1.2, 1.0}, cap);
    CHECK(c.status == BfgsStatus::MaxIterations);
    CHECK(c.iterations == 3);
    CHECK(status_name(BfgsStatus::GradientConverged) != status_name(BfgsStatus::LineSearchFailed));
}

TEST_CASE("already optimal start converges immediately") {
    const auto r = minimize_bfgs(rosenbrock, {1.0, 1.0});
    CHECK(r.status == BfgsStatus::GradientConverged);
    CHECK(r.iterations == 0);
}
