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

#include "nsaqec/codes.hpp"
#include "nsaqec/noise.hpp"

namespace nsaqec {

/// M_{alpha beta} = <psi_alpha| E_a^dag E_b |psi_beta> for one ordered error pair.
struct KLMatrix {
    std::size_t a = 0;
    std::size_t b = 0;
    CMat entries;
};

struct LossReport {
    double gamma = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    std::vector<double> per_mu_l1;  // index a * |errs| + b
    std::vector<double> per_mu_l2;
};

/// images[a][lambda] = E_a |psi_lambda>.
using ImageTable = std::vector<std::vector<SparseVec>>;

ImageTable error_images(const CodeSpace& code, const ErrorSet& errs);

std::vector<KLMatrix> kl_matrices(const ImageTable& images);
std::vector<KLMatrix> kl_matrices(const CodeSpace& code, const ErrorSet& errs);

/// Per matrix: off-diagonal |M| above the diagonal plus half the spread of the diagonal.
double kl_violation_l1(const CMat& m);
/// Same with squared magnitudes and a quarter weight on the diagonal spread.
double kl_violation_l2(const CMat& m);

LossReport loss_report(const ImageTable& images, double gamma);
LossReport loss_report(const CodeSpace& code, const ErrorSet& errs);
double l1_loss(const CodeSpace& code, const ErrorSet& errs);
double l2_loss(const CodeSpace& code, const ErrorSet& errs);

/// 1 - 2 K^2 L. May be negative.
double loss_fidelity_bound(double l1, std::size_t K);

/// Errors sized for `code`: qubit or qudit damping with t = 1, or Fock-space loss.
ErrorSet default_error_set(const CodeSpace& code, double gamma);

}  // namespace nsaqec
