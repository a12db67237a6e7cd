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

#include <string>
#include <vector>

namespace nsaqec {

/// `points` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int points);

struct FitReport {
    std::string family;
    double exponent = 0.0;
    /// Leading coefficient. For exponents within 0.1 of an integer p, the
    /// gamma -> 0 intercept of y / x^p fitted linearly in x; otherwise 10^intercept.
    double coefficient = 0.0;
    double log_intercept_coefficient = 0.0;  // 10^intercept of the log-log line
    double window_lo = 0.0;
    double window_hi = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Least squares on log10 y against log10 x over x in [lo, hi]. Needs >= 3 points, y > 0.
FitReport fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi);

/// Least-squares y = sum_{j=1..degree} c_j x^j (no constant) over x in [lo, hi]; returns c_1..c_degree.
std::vector<double> fit_series(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi,
                               int degree = 3);

struct KinkReport {
    std::vector<double> statistic;  // 0 where not tested
    std::vector<std::size_t> fired;  // indices above threshold
};

struct KinkOptions {
    double threshold = 5.0;
    int half_window = 5;
    int min_side = 3;  // neighbours required on each side before a point is tested
};

/// For each interior point, |right slope - left slope| in log-log coordinates divided
/// by the median of the same quantity over nearby points. Needs positive x and y.
KinkReport detect_kinks(const std::vector<double>& xs, const std::vector<double>& ys, const KinkOptions& opt = {});

}  // namespace nsaqec
