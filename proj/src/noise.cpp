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

#include "nsaqec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace nsaqec {

namespace {

void check_gamma(double gamma, bool allow_one) {
    if (!(gamma >= 0.0) || gamma > 1.0 || (!allow_one && gamma == 1.0))
        throw std::invalid_argument("damping rate gamma out of range");
}

double binomial(int a, int l) {
    if (l < 0 || l > a) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= l; ++i) r = r * (a - l + i) / i;
    return r;
}

}  // namespace

const CMat& SiteKrausFamily::op(int level) const {
    for (const auto& l : ops)
        if (l.level == level) return l.op;
    throw std::out_of_range("SiteKrausFamily: no operator for level " + std::to_string(level));
}

std::vector<CMat> SiteKrausFamily::matrices() const {
    std::vector<CMat> out;
    out.reserve(ops.size());
    for (const auto& l : ops) out.push_back(l.op);
    return out;
}

SiteKrausFamily qubit_ad(double gamma) {
    check_gamma(gamma, true);
    CMat a0(2, 2), a1(2, 2);
    a0(0, 0) = 1.0;
    a0(1, 1) = std::sqrt(1.0 - gamma);
    a1(0, 1) = std::sqrt(gamma);
    return SiteKrausFamily{2, gamma, {{0, a0}, {1, a1}}};
}

SiteKrausFamily qudit_ad(int q, double gamma) {
    if (q < 2) throw std::invalid_argument("qudit_ad: q must be >= 2");
    check_gamma(gamma, true);
    SiteKrausFamily fam{q, gamma, {}};
    for (int l = 0; l < q; ++l) {
        CMat m(q, q);
        for (int a = l; a < q; ++a)
            m(a - l, a) = std::sqrt(binomial(a, l)) * std::sqrt(std::pow(1.0 - gamma, a - l) * std::pow(gamma, l));
        fam.ops.push_back({l, std::move(m)});
    }
    return fam;
}

SiteKrausFamily bosonic_ad(int cutoff, double gamma, int lmax) {
    if (cutoff < 5) throw std::invalid_argument("bosonic_ad: cutoff must hold Fock state |4>");
    if (lmax < 1 || lmax >= cutoff) throw std::invalid_argument("bosonic_ad: lmax must be in [1, cutoff)");
    check_gamma(gamma, false);
    CMat lower(cutoff, cutoff);
    CMat damp(cutoff, cutoff);
    for (int m = 0; m < cutoff; ++m) {
        if (m > 0) lower(m - 1, m) = std::sqrt(static_cast<double>(m));
        damp(m, m) = std::pow(1.0 - gamma, 0.5 * m);
    }
    SiteKrausFamily fam{cutoff, gamma, {}};
    CMat lowered = CMat::identity(cutoff);  // a^l
    double factorial = 1.0;
    for (int l = 0; l <= lmax; ++l) {
        if (l > 0) {
            lowered = lowered * lower;
            factorial *= l;
        }
        const double pre = std::pow(gamma / (1.0 - gamma), 0.5 * l) / std::sqrt(factorial);
        fam.ops.push_back({l, pre * (lowered * damp)});
    }
    return fam;
}

ErrorSet::ErrorSet(SiteKrausFamily family, int n, int t) : family_(std::move(family)), n_(n), t_(t) {
    if (n < 1) throw std::invalid_argument("ErrorSet: n must be >= 1");
    if (t < 0 || t > n) throw std::invalid_argument("ErrorSet: need 0 <= t <= n");
    const int q = family_.q;
    hilbert_dimension(n, q);  // overflow check

    std::vector<int> jump_levels;
    for (const auto& l : family_.ops)
        if (l.level > 0) jump_levels.push_back(l.level);

    // Enumerate by jump count, then positions in lexicographic order, then levels.
    for (int w = 0; w <= t; ++w) {
        std::vector<int> pos(w);
        std::function<void(int, int)> choose = [&](int start, int depth) {
            if (depth == w) {
                std::vector<std::size_t> pick(w, 0);
                while (true) {
                    auto d = std::vector<std::uint8_t>(n, 0);
                    for (int j = 0; j < w; ++j) d[pos[j]] = static_cast<std::uint8_t>(jump_levels[pick[j]]);
                    labels_.emplace_back(std::move(d), q);
                    int j = w - 1;
                    while (j >= 0 && ++pick[j] == jump_levels.size()) pick[j--] = 0;
                    if (j < 0) break;
                }
                return;
            }
            for (int s = start; s < n; ++s) {
                pos[depth] = s;
                choose(s + 1, depth + 1);
            }
        };
        if (w == 0 || !jump_levels.empty()) choose(0, 0);
    }

    coef_.assign(q, std::vector<double>(q, 0.0));
    for (const auto& l : family_.ops) {
        for (int d = l.level; d < q; ++d) {
            const cplx c = l.op(d - l.level, d);
            if (std::abs(c.imag()) > 0.0) throw std::invalid_argument("ErrorSet: damping operators must be real");
            coef_[l.level][d] = c.real();
        }
    }
    place_.assign(n, 1);
    for (int i = n - 2; i >= 0; --i) place_[i] = place_[i + 1] * static_cast<std::uint64_t>(q);
}

SparseVec ErrorSet::apply(std::size_t a, const SparseVec& psi) const {
    const DitString& lab = labels_.at(a);
    const auto q = static_cast<std::uint64_t>(family_.q);
    std::uint64_t offset = 0;
    for (int i = 0; i < n_; ++i) offset += lab[i] * place_[i];
    SparseVec out;
    out.terms.reserve(psi.terms.size());
    for (const auto& [idx, amp] : psi.terms) {
        double c = 1.0;
        std::uint64_t rest = idx;
        for (int i = n_ - 1; i >= 0; --i) {
            const int d = static_cast<int>(rest % q);
            rest /= q;
            const int l = lab[i];
            if (d < l) {
                c = 0.0;
                break;
            }
            c *= coef_[l][d];
        }
        if (c != 0.0) out.terms.emplace_back(idx - offset, c * amp);
    }
    return out;
}

CMat ErrorSet::dense(std::size_t a, std::size_t cap) const {
    const DitString& lab = labels_.at(a);
    CMat m = CMat::identity(1);
    for (int i = 0; i < n_; ++i) m = tensor(m, family_.op(lab[i]), cap);
    return m;
}

std::vector<CMat> ErrorSet::dense_all(std::size_t cap) const {
    std::vector<CMat> out;
    out.reserve(size());
    for (std::size_t a = 0; a < size(); ++a) out.push_back(dense(a, cap));
    return out;
}

ErrorSet build_error_set(const SiteKrausFamily& family, int n, int t) { return ErrorSet(family, n, t); }

}  // namespace nsaqec
