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
#include "nsaqec/fit.hpp"

using namespace nsaqec;

TEST_CASE("log grid endpoints and spacing") {
    const auto g = log_grid(1e-3, std::pow(10.0, -0.5), 40);
    REQUIRE(g.size() == 40);
    CHECK(g.front() == 1e-3);
    CHECK(g.back() == std::pow(10.0, -0.5));
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(std::log10(g[i] / g[i - 1]) == doctest::Approx(2.5 / 39).epsilon(1e-10));
    CHECK(log_grid(0.01, 0.1, 1) == std::vector<double>{0.01});
    CHECK_THROWS(log_grid(0.0, 0.1, 5));
    CHECK_THROWS(log_grid(0.1, 0.01, 5));
    CHECK_THROWS(log_grid(0.01, 0.1, 0));
}

TEST_CASE("exact power laws are recovered") {
    const auto xs = log_grid(1e-3, 1e-1, 20);
    for (auto [p, c] : {std::pair{2.0, 3.0}, {3.0, 0.25}, {1.5, 7.0}}) {
        std::vector<double> ys;
        for (double x : xs) ys.push_back(c * std::pow(x, p));
        const FitReport f = fit_power_law(xs, ys, 1e-3, 1e-1);
        CHECK(f.exponent == doctest::Approx(p).epsilon(1e-10));
        CHECK(f.coefficient == doctest::Approx(c).epsilon(1e-8));
        CHECK(f.log_intercept_coefficient == doctest::Approx(c).epsilon(1e-8));
        CHECK(f.r_squared == doctest::Approx(1.0));
        CHECK(f.points == 20);
    }
}

TEST_CASE("leading coefficient survives a higher-order correction") {
    const auto xs = log_grid(1e-3, 10.0 * std::pow(10.0, -2.75), 24);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(0.25 * x * x * x + 2.0 * x * x * x * x);
    const FitReport f = fit_power_law(xs, ys, 1e-3, std::pow(10.0, -1.75));
    CHECK(f.exponent == doctest::Approx(3.0).epsilon(0.02));
    CHECK(f.coefficient == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("fit windows select points") {
    const auto xs = log_grid(1e-4, 1.0, 41);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(x < 1.05e-2 ? x * x : 100.0 * x * x * x * x);
    const FitReport f = fit_power_law(xs, ys, 1e-4, 1.05e-2);
    CHECK(f.points == 21);
    CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-10));
    CHECK_THROWS(fit_power_law(xs, ys, 0.5, 0.55));
    std::vector<double> bad = ys;
    bad[3] = 0.0;
    CHECK_THROWS(fit_power_law(xs, bad, 1e-4, 1.05e-2));
}

TEST_CASE("series fit recovers polynomial coefficients") {
    const auto xs = log_grid(1e-3, 1e-2, 12);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(0.5 * x - 3.0 * x * x + 11.0 * x * x * x);
    const auto c = fit_series(xs, ys, 1e-3, 1e-2);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(c[1] == doctest::Approx(-3.0).epsilon(1e-7));
    CHECK(c[2] == doctest::Approx(11.0).epsilon(1e-5));
}

TEST_CASE("kink detector fires at a slope break only") {
    auto xs = log_grid(1e-3, std::pow(10.0, -0.5), 40);
    const double x0 = std::pow(10.0, -1.5);
    xs.insert(std::lower_bound(xs.begin(), xs.end(), x0), x0);
    std::vector<double> smooth, broken;
    for (double x : xs) {
        smooth.push_back(x * x + 3 * x * x * x);
        broken.push_back(x * x + std::abs(x - x0) * 0.05);
    }
    const KinkReport s = detect_kinks(xs, smooth);
    CHECK(s.fired.empty());
    const KinkReport b = detect_kinks(xs, broken);
    REQUIRE(b.fired.size() == 1);
    CHECK(xs[b.fired[0]] == x0);
    CHECK(s.statistic.size() == xs.size());
    CHECK(s.statistic.front() == 0.0);
    CHECK(s.statistic.back() == 0.0);
}

TEST_CASE("kink detector needs neighbours on both sides") {
    const auto xs = log_grid(1e-3, 1e-1, 6);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(x * x);
    const KinkReport r = detect_kinks(xs, ys);
    for (double v : r.statistic) CHECK(v == 0.0);
}
