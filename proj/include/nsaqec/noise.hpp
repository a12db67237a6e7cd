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

#include <vector>

#include "nsaqec/tensor.hpp"

namespace nsaqec {

/// Single-site amplitude-damping Kraus operators A^l, l = jump level.
///
/// A^l only has entries on the l-th superdiagonal: <a|A^l|b> != 0 implies b - a == l.
/// Lowering convention throughout: A^1 = sqrt(gamma) |0><1| for qubits.
struct SiteKrausFamily {
    struct Level {
        int level;
        CMat op;
    };

    int q = 2;
    double gamma = 0.0;
    std::vector<Level> ops;  // ascending level, ops[0].level == 0

    int max_level() const { return ops.back().level; }
    const CMat& op(int level) const;
    std::vector<CMat> matrices() const;
};

SiteKrausFamily qubit_ad(double gamma);

/// A^l = sum_{a>=l} sqrt(C(a,l)) sqrt((1-g)^(a-l) g^l) |a-l><a|, l = 0..q-1.
SiteKrausFamily qudit_ad(int q, double gamma);

/// Photon loss on a Fock space truncated to `cutoff` levels, built from the
/// lowering operator: A^l = (g/(1-g))^(l/2) a^l / sqrt(l!) (1-g)^(n/2), l = 0..lmax.
/// Complete only when lmax == cutoff - 1.
SiteKrausFamily bosonic_ad(int cutoff, double gamma, int lmax);

inline constexpr int kDefaultFockCutoff = 6;

/// Independent damping on n sites with at most t jumps.
///
/// Labels are DitStrings of jump levels. Ordering: number of jumping sites,
/// then the jump positions (earliest site first), then the levels. For qubits,
/// n = 4, t = 1 this gives 0000, 1000, 0100, 0010, 0001.
class ErrorSet {
   public:
    ErrorSet(SiteKrausFamily family, int n, int t);

    int n() const { return n_; }
    int t() const { return t_; }
    int q() const { return family_.q; }
    double gamma() const { return family_.gamma; }
    const SiteKrausFamily& family() const { return family_; }
    std::size_t size() const { return labels_.size(); }
    const DitString& label(std::size_t a) const { return labels_[a]; }
    const std::vector<DitString>& labels() const { return labels_; }

    /// E_a |psi> for a sparse state on n sites.
    SparseVec apply(std::size_t a, const SparseVec& psi) const;
    /// Dense E_a as an explicit tensor product of site operators.
    CMat dense(std::size_t a, std::size_t cap = kDefaultDimensionCap) const;
    std::vector<CMat> dense_all(std::size_t cap = kDefaultDimensionCap) const;

   private:
    SiteKrausFamily family_;
    int n_;
    int t_;
    std::vector<DitString> labels_;
    std::vector<std::vector<double>> coef_;  // coef_[l][d] = <d-l|A^l|d>
    std::vector<std::uint64_t> place_;       // q^(n-1-i)
};

ErrorSet build_error_set(const SiteKrausFamily& family, int n, int t);

}  // namespace nsaqec
