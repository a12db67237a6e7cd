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


#include "nsaqec/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsaqec {

std::vector<double> log_grid(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("log_grid: points must be >= 1");
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_grid: need 0 < lo <= hi");
    if (points == 1) return {lo};
    std::vector<double> g(points);
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < points; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

namespace {

struct Line {
    double slope, intercept, r2;
};

Line least_squares_line(const std::vector<double>& u, const std::vector<double>& v) {
    const double n = static_cast<double>(u.size());
    double mu = 0, mv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= n;
    mv /= n;
    double suu = 0, suv = 0, svv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu += (u[i] - mu) * (u[i] - mu);
        suv += (u[i] - mu) * (v[i] - mv);
        svv += (v[i] - mv) * (v[i] - mv);
    }
    if (suu == 0.0) throw std::invalid_argument("fit: abscissae are all equal");
    const double slope = suv / suu;
    double r2 = svv == 0.0 ? 1.0 : (suv * suv) / (suu * svv);
    return {slope, mv - slope * mu, std::clamp(r2, 0.0, 1.0)};
}

void window(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi,
            std::vector<double>& wx, std::vector<double>& wy) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit: x and y differ in length");
    const double slack = 1e-12;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] >= lo * (1 - slack) && xs[i] <= hi * (1 + slack)) {
            wx.push_back(xs[i]);
            wy.push_back(ys[i]);
        }
}

}  // namespace

FitReport fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi) {
    std::vector<double> wx, wy;
    window(xs, ys, lo, hi, wx, wy);
    if (wx.size() < 3) throw std::invalid_argument("fit_power_law: fewer than 3 points in window");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < wx.size(); ++i) {
        if (!(wx[i] > 0.0) || !(wy[i] > 0.0)) throw std::invalid_argument("fit_power_law: non-positive data");
        lx.push_back(std::log10(wx[i]));
        ly.push_back(std::log10(wy[i]));
    }
    const Line line = least_squares_line(lx, ly);
    FitReport r;
    r.exponent = line.slope;
    r.log_intercept_coefficient = std::pow(10.0, line.intercept);
    r.coefficient = r.log_intercept_coefficient;
    r.window_lo = lo;
    r.window_hi = hi;
    r.r_squared = line.r2;
    r.points = wx.size();
    const double p = std::round(r.exponent);
    if (std::abs(r.exponent - p) < 0.1) {
        std::vector<double> scaled;
        for (std::size_t i = 0; i < wx.size(); ++i) scaled.push_back(wy[i] / std::pow(wx[i], p));
        r.coefficient = least_squares_line(wx, scaled).intercept;
    }
    return r;
}

std::vector<double> fit_series(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi,
                               int degree) {
    if (degree < 1) throw std::invalid_argument("fit_series: degree >= 1");
    std::vector<double> wx, wy;
    window(xs, ys, lo, hi, wx, wy);
    if (static_cast<int>(wx.size()) < degree + 1) throw std::invalid_argument("fit_series: too few points");
    Eigen::MatrixXd A(wx.size(), degree);
    Eigen::VectorXd b(wx.size());
    const double scale = *std::max_element(wx.begin(), wx.end());
    for (std::size_t i = 0; i < wx.size(); ++i) {
        for (int j = 0; j < degree; ++j) A(i, j) = std::pow(wx[i] / scale, j + 1);
        b(i) = wy[i];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    std::vector<double> out(degree);
    for (int j = 0; j < degree; ++j) out[j] = c(j) / std::pow(scale, j + 1);
    return out;
}

KinkReport detect_kinks(const std::vector<double>& xs, const std::vector<double>& ys, const KinkOptions& opt) {
    if (xs.size() != ys.size()) throw std::invalid_argument("detect_kinks: x and y differ in length");
    const std::size_t n = xs.size();
    KinkReport rep;
    rep.statistic.assign(n, 0.0);
    if (n < 3) return rep;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw std::invalid_argument("detect_kinks: non-positive data");
        lx[i] = std::log10(xs[i]);
        ly[i] = std::log10(ys[i]);
    }
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double left = (ly[i] - ly[i - 1]) / (lx[i] - lx[i - 1]);
        const double right = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]);
        d[i] = std::abs(right - left);
    }
    const auto side = static_cast<std::size_t>(opt.min_side);
    for (std::size_t i = side; i + side < n; ++i) {
        std::vector<double> nb;
        for (int off = -opt.half_window; off <= opt.half_window; ++off) {
            if (off == 0) continue;
            const auto j = static_cast<std::ptrdiff_t>(i) + off;
            if (j < 1 || j + 1 >= static_cast<std::ptrdiff_t>(n)) continue;
            nb.push_back(d[j]);
        }
        std::nth_element(nb.begin(), nb.begin() + nb.size() / 2, nb.end());
        double med = nb[nb.size() / 2];
        if (nb.size() % 2 == 0) {
            const double lower = *std::max_element(nb.begin(), nb.begin() + nb.size() / 2);
            med = 0.5 * (med + lower);
        }
        rep.statistic[i] = d[i] / (med + 1e-12);
        if (rep.statistic[i] > opt.threshold) rep.fired.push_back(i);
    }
    return rep;
}

}  // namespace nsaqec
