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

#include "nsaqec/bfgs.hpp"
#include "nsaqec/codes.hpp"

namespace nsaqec {

enum class GateKind { RX, RZ, RZZ };

struct Gate {
    GateKind kind;
    int a;
    int b;  // second site for RZZ, -1 otherwise
    std::size_t param;
};

/// Three layers of [RX on every qubit, RZ on every qubit, RZZ on every pair],
/// followed by one RX and one RZ per qubit. (3n^2 + 13n)/2 parameters.
class ParamCircuit {
   public:
    static constexpr int kLayers = 3;

    explicit ParamCircuit(int n);

    int n() const { return n_; }
    std::size_t num_params() const { return num_params_; }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Sites 0..k-1 start in `logical`, the rest in |0>. RZZ(t) = exp(-i t Z Z / 2).
    CVec encode(const std::vector<double>& params, const DitString& logical) const;
    /// Applies the gate sequence to an arbitrary input state.
    CVec run(const std::vector<double>& params, CVec state) const;

   private:
    int n_;
    std::size_t num_params_ = 0;
    std::vector<Gate> gates_;
};

std::size_t expected_param_count(int n);

struct LearnConfig {
    int n = 4;
    int k = 1;
    double gamma0 = 0.031622776601683791;  // 10^-1.5
    std::uint64_t seed = 0;
    int max_steps = 20000;
    int stage1_max_steps = 5000;
    double stage1_target = 1e-4;
    double grad_tol = 1e-8;
    double fd_step = 1e-6;
};

struct LearnResult {
    std::vector<double> initial_params;
    std::vector<double> final_params;
    double final_loss = 0.0;  // L1 at gamma0
    double final_l2 = 0.0;
    std::vector<double> loss_trace;  // stage 1 (L2) followed by stage 2 (L1)
    std::size_t stage1_length = 0;
    std::string stage1_status;
    std::string stage2_status;
    CodeSpace code;
    std::uint64_t seed = 0;
    double gamma0 = 0.0;
};

/// Codewords from the circuit acting on each logical basis state.
CodeSpace circuit_code(const ParamCircuit& circ, const std::vector<double>& params, int k, double gamma0);

/// L2 pretraining then L1 refinement, each with finite-difference BFGS.
LearnResult learn_code(const LearnConfig& cfg);

enum class AnsatzClass { SC, PC, Unclassified };
std::string_view ansatz_name(AnsatzClass c);

struct AnsatzReport {
    AnsatzClass classification = AnsatzClass::Unclassified;
    double residual = 0.0;            // distance of the code space from the best template block structure
    double sc_residual = 0.0;
    double pc_residual = 0.0;
    std::vector<int> permutation;     // learned site i plays template site permutation[i]
    std::vector<std::vector<std::string>> dominant;  // per codeword, strings with |amp| > threshold
};

/// Compares the code space with the SC and PC ansatz forms: one code vector on each
/// template codeword support, free amplitudes and phases, any logical basis, any
/// site permutation. Needs 4 <= n <= 8.
AnsatzReport extract_ansatz(const CodeSpace& learned, double threshold = 0.1, double max_residual = 0.05);

std::string learn_result_to_json(const LearnResult& r, const AnsatzReport& a);

}  // namespace nsaqec
