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


#include "nsaqec/kl.hpp"

#include <cmath>
#include <stdexcept>

namespace nsaqec {

ImageTable error_images(const CodeSpace& code, const ErrorSet& errs) {
    if (code.n != errs.n() || code.q != errs.q()) throw DimensionError("code and error set disagree on n or q");
    ImageTable out(errs.size());
    for (std::size_t a = 0; a < errs.size(); ++a)
        for (const auto& c : code.codewords) out[a].push_back(errs.apply(a, c.amps()));
    return out;
}

std::vector<KLMatrix> kl_matrices(const ImageTable& images) {
    std::vector<KLMatrix> out;
    const std::size_t ne = images.size();
    if (ne == 0) return out;
    const std::size_t K = images[0].size();
    out.reserve(ne * ne);
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < ne; ++b) {
            KLMatrix m{a, b, CMat(K, K)};
            if (b < a) {
                m.entries = out[b * ne + a].entries.adjoint();
            } else {
                for (std::size_t x = 0; x < K; ++x)
                    for (std::size_t y = 0; y < K; ++y) m.entries(x, y) = inner(images[a][x], images[b][y]);
            }
            out.push_back(std::move(m));
        }
    return out;
}

std::vector<KLMatrix> kl_matrices(const CodeSpace& code, const ErrorSet& errs) {
    return kl_matrices(error_images(code, errs));
}

namespace {

template <typename Mag>
double violation(const CMat& m, double diag_weight, Mag mag) {
    const std::size_t K = m.rows();
    cplx mean = 0.0;
    for (std::size_t x = 0; x < K; ++x) mean += m(x, x);
    mean /= static_cast<double>(K);
    double s = 0.0;
    for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = x + 1; y < K; ++y) s += mag(m(x, y));
        s += diag_weight * mag(m(x, x) - mean);
    }
    return s;
}

}  // namespace

double kl_violation_l1(const CMat& m) {
    return violation(m, 0.5, [](cplx z) { return std::abs(z); });
}

double kl_violation_l2(const CMat& m) {
    return violation(m, 0.25, [](cplx z) { return std::norm(z); });
}

LossReport loss_report(const ImageTable& images, double gamma) {
    LossReport r;
    r.gamma = gamma;
    for (const auto& m : kl_matrices(images)) {
        r.per_mu_l1.push_back(kl_violation_l1(m.entries));
        r.per_mu_l2.push_back(kl_violation_l2(m.entries));
        r.l1 += r.per_mu_l1.back();
        r.l2 += r.per_mu_l2.back();
    }
    return r;
}

LossReport loss_report(const CodeSpace& code, const ErrorSet& errs) {
    return loss_report(error_images(code, errs), errs.gamma());
}

double l1_loss(const CodeSpace& code, const ErrorSet& errs) { return loss_report(code, errs).l1; }
double l2_loss(const CodeSpace& code, const ErrorSet& errs) { return loss_report(code, errs).l2; }

double loss_fidelity_bound(double l1, std::size_t K) {
    if (l1 < 0.0) throw std::invalid_argument("loss_fidelity_bound: loss must be non-negative");
    if (K < 1) throw std::invalid_argument("loss_fidelity_bound: K must be >= 1");
    const double k = static_cast<double>(K);
    return 1.0 - 2.0 * k * k * l1;
}

ErrorSet default_error_set(const CodeSpace& code, double gamma) {
    switch (code.family) {
        case CodeFamily::BINOMIAL_024:
        case CodeFamily::NSA_BINOMIAL_024:
            return ErrorSet(bosonic_ad(code.q, gamma, 1), code.n, 1);
        default:
            return ErrorSet(code.q == 2 ? qubit_ad(gamma) : qudit_ad(code.q, gamma), code.n, 1);
    }
}

}  // namespace nsaqec
