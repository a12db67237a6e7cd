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

#include <cstdint>
#include <string>
#include <vector>

#include "nsaqec/codes.hpp"
#include "nsaqec/kl.hpp"
#include "nsaqec/noise.hpp"

namespace nsaqec {

struct RecoveryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One syndrome outcome. The image of codeword lambda inside the sector is
/// amplitudes[lambda] * error_words[lambda]; the filter keeps min_amplitude of it.
struct SyndromeSector {
    std::string label;
    std::vector<std::size_t> errors;    // error labels feeding this sector
    std::vector<cplx> profile;          // sector component of E_a psi_lambda is amplitudes[lambda] * profile[i]
    std::vector<SparseVec> error_words; // normalized; empty when amplitudes[lambda] == 0
    std::vector<double> amplitudes;
    double min_amplitude = 0.0;
};

struct RecoveryPlan {
    int n = 0;
    int q = 2;
    std::size_t K = 0;
    std::vector<SyndromeSector> sectors;
    double fail_weight = 0.0;  // 1 - sum_s m_s^2
};

struct RecoveryOptions {
    double overlap_cosine = 1e-8;
    double diagonal_tol = 1e-8;  // relative to the trace of each Gram block
};

/// Groups overlapping error images, splits each group by simultaneous
/// diagonalization of its per-codeword Gram matrices, and attaches the
/// min-amplitude filter. Throws RecoveryError if a sector would carry two
/// independent images of the same codeword or mix codewords.
RecoveryPlan build_recovery(const CodeSpace& code, const ErrorSet& errs, const RecoveryOptions& opt = {});

/// Sum over sectors of m_s^2.
double worst_case_fidelity(const RecoveryPlan& plan);

/// Orthogonal projector onto the sector's error words.
CMat sector_projector(const SyndromeSector& s, std::uint64_t dim, std::size_t cap = kDefaultDimensionCap);

/// Largest eigenvalue of sum_s R_s^dag R_s. At most 1 for a trace-non-increasing plan.
double recovery_norm(const RecoveryPlan& plan);

/// Largest second eigenvalue (relative to the first) of P (sum_a w_a w_a^dag) P over
/// multi-error sectors and codewords. Zero when every projected mixture is pure.
double sector_purity_defect(const RecoveryPlan& plan, const CodeSpace& code, const ErrorSet& errs,
                            std::size_t cap = kDefaultDimensionCap);

/// Logical Kraus operators <psi_mu| R_s E_a |psi_nu>, one K x K matrix per (sector, error).
/// Uses dense error matrices when the Hilbert space fits in `dense_limit`.
std::vector<CMat> logical_kraus(const CodeSpace& code, const ErrorSet& errs, const RecoveryPlan& plan,
                                std::uint64_t dense_limit = 1024);

/// <c| sum_j L_j |c><c| L_j^dag |c> for a normalized logical vector c.
double logical_state_fidelity(std::span<const CMat> kraus, const CVec& c);

/// Full physical propagation of one logical state: noise, then sector recoveries.
double physical_state_fidelity(const CodeSpace& code, const ErrorSet& errs, const RecoveryPlan& plan,
                               const CVec& c, std::size_t cap = 256);

struct OracleResult {
    double min_fidelity = 1.0;
    double max_fidelity = 0.0;
    std::size_t states = 0;
};

/// Minimum over `n_states` Haar-random logical states plus hill-climb refinement.
OracleResult fidelity_oracle_min_over_states(const CodeSpace& code, const ErrorSet& errs, const RecoveryPlan& plan,
                                             std::size_t n_states = 1000, std::uint64_t seed = 7);

/// Exact closed forms. `n` counts all physical sites (qubits, or 1 for binomial codes).
double closed_form_fidelity(CodeFamily family, int n, int k, int q, double gamma);

/// Second-order coefficient c with F = 1 - c gamma^2 + O(gamma^3).
double closed_form_deficit_coefficient(CodeFamily family, int n, int q);

struct OrderingVerdict {
    bool holds = true;
    std::vector<double> gammas;
    std::vector<double> f_sc_n, f_pc_n2, f_sc_n2;
};

/// F_SC(n) > F_PC(n+2) > F_SC(n+2) at every gamma > 0 in `gammas`.
OrderingVerdict ordering_check(int n, const std::vector<double>& gammas);

}  // namespace nsaqec
