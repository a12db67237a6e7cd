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


#include "nsaqec/bfgs.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace nsaqec {

namespace {

using Vec = Eigen::VectorXd;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

Vec to_eigen(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

struct Probe {
    double alpha;
    double f;
    double dphi;
    Vec g;
};

class LineSearch {
   public:
    LineSearch(const Objective& f, const BfgsOptions& opt, long& evals) : f_(f), opt_(opt), evals_(evals) {}

    std::optional<Probe> run(const Vec& x, double f0, const Vec& g0, const Vec& p) {
        x_ = &x;
        p_ = &p;
        const double d0 = g0.dot(p);
        Probe prev{0.0, f0, d0, g0};
        double alpha = 1.0;
        for (int i = 0; i < opt_.max_line_search; ++i) {
            Probe cur = probe(alpha);
            if (!std::isfinite(cur.f)) {
                alpha *= 0.5;
                continue;
            }
            if (cur.f > f0 + opt_.c1 * alpha * d0 || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur, f0, d0);
            if (std::abs(cur.dphi) <= -opt_.c2 * d0) return cur;
            if (cur.dphi >= 0.0) return zoom(cur, prev, f0, d0);
            prev = std::move(cur);
            alpha *= 2.0;
        }
        return std::nullopt;
    }

   private:
    Probe probe(double alpha) {
        const Vec xt = *x_ + alpha * *p_;
        const auto xs = to_std(xt);
        const double fv = f_(xs);
        ++evals_;
        Vec g = Vec::Zero(xt.size());
        if (std::isfinite(fv)) g = to_eigen(central_gradient(f_, xs, opt_.fd_step, &evals_));
        return {alpha, fv, g.dot(*p_), std::move(g)};
    }

    std::optional<Probe> zoom(Probe lo, Probe hi, double f0, double d0) {
        std::optional<Probe> best_decrease;
        for (int i = 0; i < opt_.max_line_search; ++i) {
            // Quadratic interpolation from lo's value and slope, safeguarded into the middle of the bracket.
            const double da = hi.alpha - lo.alpha;
            double alpha = lo.alpha + 0.5 * da;
            const double denom = 2.0 * (hi.f - lo.f - lo.dphi * da);
            if (denom != 0.0) {
                const double t = lo.alpha - lo.dphi * da * da / denom;
                const double a = std::min(lo.alpha, hi.alpha), b = std::max(lo.alpha, hi.alpha);
                if (t > a + 0.1 * (b - a) && t < b - 0.1 * (b - a)) alpha = t;
            }
            if (std::abs(da) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
            Probe cur = probe(alpha);
            if (cur.f > f0 + opt_.c1 * alpha * d0 || cur.f >= lo.f) {
                hi = std::move(cur);
            } else {
                if (std::abs(cur.dphi) <= -opt_.c2 * d0) return cur;
                if (cur.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = std::move(cur);
                best_decrease = lo;
            }
        }
        if (lo.alpha > 0.0 && lo.f < f0) return lo;
        return best_decrease;
    }

    const Objective& f_;
    const BfgsOptions& opt_;
    long& evals_;
    const Vec* x_ = nullptr;
    const Vec* p_ = nullptr;
};

}  // namespace

std::string_view status_name(BfgsStatus s) {
    switch (s) {
        case BfgsStatus::GradientConverged:
            return "gradient-converged";
        case BfgsStatus::TargetReached:
            return "target-reached";
        case BfgsStatus::MaxIterations:
            return "max-iterations";
        case BfgsStatus::LineSearchFailed:
            return "line-search-failed";
    }
    return "unknown";
}

std::vector<double> central_gradient(const Objective& f, const std::vector<double>& x, double h, long* evals) {
    std::vector<double> g(x.size());
    std::vector<double> xt = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xt[i] = x[i] + h;
        const double fp = f(xt);
        xt[i] = x[i] - h;
        const double fm = f(xt);
        xt[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    if (evals) *evals += 2 * static_cast<long>(x.size());
    return g;
}

BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opt) {
    BfgsResult res;
    const auto n = static_cast<Eigen::Index>(x0.size());
    Vec x = to_eigen(x0);
    double fx = f(x0);
    ++res.evaluations;
    Vec g = to_eigen(central_gradient(f, x0, opt.fd_step, &res.evaluations));
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
    res.trace.push_back(fx);
    LineSearch ls(f, opt, res.evaluations);

    int it = 0;
    for (;; ++it) {
        if (opt.f_target && fx < *opt.f_target) {
            res.status = BfgsStatus::TargetReached;
            break;
        }
        if (g.norm() < opt.grad_tol) {
            res.status = BfgsStatus::GradientConverged;
            break;
        }
        if (it >= opt.max_iterations) {
            res.status = BfgsStatus::MaxIterations;
            break;
        }
        Vec p = -H * g;
        if (g.dot(p) >= 0.0) {
            H.setIdentity();
            p = -g;
        }
        auto step = ls.run(x, fx, g, p);
        if (!step && !H.isIdentity()) {
            H.setIdentity();
            p = -g;
            step = ls.run(x, fx, g, p);
        }
        if (!step) {
            res.status = BfgsStatus::LineSearchFailed;
            break;
        }
        const Vec s = step->alpha * p;
        const Vec y = step->g - g;
        x += s;
        fx = step->f;
        g = step->g;
        res.trace.push_back(fx);
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (it == 0) H *= sy / y.dot(y);
            const double rho = 1.0 / sy;
            const Vec Hy = H * y;
            H += ((sy + y.dot(Hy)) * rho * rho) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
        }
    }
    res.x = to_std(x);
    res.f = fx;
    res.grad_norm = g.norm();
    res.iterations = it;
    return res;
}

}  // namespace nsaqec
