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


#include "nsaqec/vql.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "nsaqec/kl.hpp"
#include "nsaqec/noise.hpp"

namespace nsaqec {

std::size_t expected_param_count(int n) { return static_cast<std::size_t>((3 * n * n + 13 * n) / 2); }

ParamCircuit::ParamCircuit(int n) : n_(n) {
    if (n < 1 || n > 12) throw std::invalid_argument("ParamCircuit: n must be in [1, 12]");
    auto add = [this](GateKind kind, int a, int b) { gates_.push_back({kind, a, b, num_params_++}); };
    for (int layer = 0; layer < kLayers; ++layer) {
        for (int i = 0; i < n; ++i) add(GateKind::RX, i, -1);
        for (int i = 0; i < n; ++i) add(GateKind::RZ, i, -1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) add(GateKind::RZZ, i, j);
    }
    for (int i = 0; i < n; ++i) add(GateKind::RX, i, -1);
    for (int i = 0; i < n; ++i) add(GateKind::RZ, i, -1);
    if (num_params_ != expected_param_count(n))
        throw std::logic_error("ParamCircuit: parameter count disagrees with (3n^2+13n)/2");
}

CVec ParamCircuit::run(const std::vector<double>& params, CVec state) const {
    if (params.size() != num_params_) throw std::invalid_argument("ParamCircuit: wrong parameter count");
    const std::size_t dim = std::size_t{1} << n_;
    if (state.dim() != dim) throw DimensionError("ParamCircuit: state dimension mismatch");
    const cplx I(0.0, 1.0);
    for (const auto& g : gates_) {
        const double t = params[g.param];
        const std::size_t ma = std::size_t{1} << (n_ - 1 - g.a);
        switch (g.kind) {
            case GateKind::RX: {
                const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & ma) continue;
                    const cplx u = state[i], v = state[i | ma];
                    state[i] = c * u - I * s * v;
                    state[i | ma] = -I * s * u + c * v;
                }
                break;
            }
            case GateKind::RZ: {
                const cplx lo = std::polar(1.0, -0.5 * t), hi = std::polar(1.0, 0.5 * t);
                for (std::size_t i = 0; i < dim; ++i) state[i] *= (i & ma) ? hi : lo;
                break;
            }
            case GateKind::RZZ: {
                const std::size_t mb = std::size_t{1} << (n_ - 1 - g.b);
                const cplx same = std::polar(1.0, -0.5 * t), diff = std::polar(1.0, 0.5 * t);
                for (std::size_t i = 0; i < dim; ++i) state[i] *= (((i & ma) != 0) == ((i & mb) != 0)) ? same : diff;
                break;
            }
        }
    }
    return state;
}

CVec ParamCircuit::encode(const std::vector<double>& params, const DitString& logical) const {
    if (logical.q() != 2 || logical.size() > n_) throw std::invalid_argument("encode: logical string must be binary, length <= n");
    const DitString full = logical.concat(DitString::zeros(n_ - logical.size(), 2));
    return run(params, CVec::basis(std::size_t{1} << n_, full.index()));
}

CodeSpace circuit_code(const ParamCircuit& circ, const std::vector<double>& params, int k, double gamma0) {
    CodeSpace code;
    code.n = circ.n();
    code.q = 2;
    code.logical_q = 2;
    code.gamma = gamma0;
    code.family = CodeFamily::CUSTOM;
    const std::uint64_t K = std::uint64_t{1} << k;
    for (std::uint64_t l = 0; l < K; ++l) {
        const CVec v = circ.encode(params, DitString::from_index(l, k, 2));
        code.codewords.emplace_back(circ.n(), 2, SparseVec::from_dense(v));
    }
    return code;
}

LearnResult learn_code(const LearnConfig& cfg) {
    if (cfg.n < 2 || cfg.n > 8) throw std::invalid_argument("learn_code: n must be in [2, 8]");
    if (cfg.k < 1 || cfg.k >= cfg.n) throw std::invalid_argument("learn_code: need 1 <= k < n");
    if (!(cfg.gamma0 > 0.0 && cfg.gamma0 < 1.0)) throw std::invalid_argument("learn_code: gamma0 must lie in (0, 1)");
    const ParamCircuit circ(cfg.n);
    const ErrorSet errs(qubit_ad(cfg.gamma0), cfg.n, 1);

    auto losses = [&](const std::vector<double>& p) {
        return loss_report(error_images(circuit_code(circ, p, cfg.k, cfg.gamma0), errs), cfg.gamma0);
    };
    const Objective l2 = [&](const std::vector<double>& p) { return losses(p).l2; };
    const Objective l1 = [&](const std::vector<double>& p) { return losses(p).l1; };

    LearnResult res;
    res.seed = cfg.seed;
    res.gamma0 = cfg.gamma0;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    res.initial_params.resize(circ.num_params());
    for (auto& t : res.initial_params) t = angle(rng);

    BfgsOptions o1;
    o1.max_iterations = std::min(cfg.stage1_max_steps, cfg.max_steps);
    o1.grad_tol = cfg.grad_tol;
    o1.fd_step = cfg.fd_step;
    o1.f_target = cfg.stage1_target;
    const BfgsResult s1 = minimize_bfgs(l2, res.initial_params, o1);

    BfgsOptions o2;
    o2.max_iterations = cfg.max_steps;
    o2.grad_tol = cfg.grad_tol;
    o2.fd_step = cfg.fd_step;
    const BfgsResult s2 = minimize_bfgs(l1, s1.x, o2);

    res.final_params = s2.x;
    res.loss_trace = s1.trace;
    res.stage1_length = s1.trace.size();
    res.loss_trace.insert(res.loss_trace.end(), s2.trace.begin(), s2.trace.end());
    res.stage1_status = status_name(s1.status);
    res.stage2_status = status_name(s2.status);
    res.code = circuit_code(circ, res.final_params, cfg.k, cfg.gamma0);
    const auto rep = losses(res.final_params);
    res.final_loss = rep.l1;
    res.final_l2 = rep.l2;
    return res;
}

std::string_view ansatz_name(AnsatzClass c) {
    switch (c) {
        case AnsatzClass::SC:
            return "SC-like";
        case AnsatzClass::PC:
            return "PC-like";
        case AnsatzClass::Unclassified:
            return "unclassified";
    }
    return "unclassified";
}

namespace {

std::vector<std::vector<std::size_t>> supports(const CodeSpace& c) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& w : c.codewords) {
        out.emplace_back();
        for (const auto& [i, a] : w.amps().terms) out.back().push_back(i);
    }
    return out;
}

// sqrt(K - sum over blocks of the squared top eigenvalue of the code projector restricted to the block),
// minimized over site permutations. Zero iff one code vector lives on each mapped block.
double match(const std::vector<CVec>& learned, const std::vector<std::vector<std::size_t>>& blocks, int n,
             std::vector<int>& best_perm) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    const double rank = static_cast<double>(learned.size());
    do {
        double covered = 0.0;
        for (const auto& block : blocks) {
            std::vector<std::size_t> idx;
            for (std::size_t t : block) {
                std::size_t s = 0;
                for (int i = 0; i < n; ++i)
                    if (t & (std::size_t{1} << (n - 1 - perm[i]))) s |= std::size_t{1} << (n - 1 - i);
                idx.push_back(s);
            }
            CMat pb(idx.size(), idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = 0; b < idx.size(); ++b)
                    for (const auto& v : learned) pb(a, b) += v[idx[a]] * std::conj(v[idx[b]]);
            const double top = hermitian_eigen(pb).values.back();
            covered += top * top;
        }
        const double r = std::sqrt(std::max(0.0, rank - covered));
        if (r < best) {
            best = r;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

AnsatzReport extract_ansatz(const CodeSpace& learned, double threshold, double max_residual) {
    if (learned.q != 2 || learned.K() != 2) throw std::invalid_argument("extract_ansatz: expects two qubit codewords");
    const int n = learned.n;
    if (n < 4 || n > 8) throw std::invalid_argument("extract_ansatz: n must be in [4, 8]");
    AnsatzReport rep;
    for (const auto& w : learned.codewords) {
        rep.dominant.emplace_back();
        for (const auto& [s, a] : w.terms())
            if (std::abs(a) > threshold) rep.dominant.back().push_back(s.str());
    }
    const double g = learned.gamma;
    std::vector<CVec> lv;
    for (const auto& w : learned.codewords) lv.push_back(w.dense());
    const auto sc = nsa_sc_code(search_sc_basis(n, 2, 1), g);
    const auto pc = nsa_pc_code(search_sc_basis(n - 2, 2, 0), g);
    std::vector<int> p_sc, p_pc;
    rep.sc_residual = match(lv, supports(sc), n, p_sc);
    rep.pc_residual = match(lv, supports(pc), n, p_pc);
    if (rep.sc_residual <= rep.pc_residual) {
        rep.residual = rep.sc_residual;
        rep.permutation = p_sc;
        if (rep.residual <= max_residual) rep.classification = AnsatzClass::SC;
    } else {
        rep.residual = rep.pc_residual;
        rep.permutation = p_pc;
        if (rep.residual <= max_residual) rep.classification = AnsatzClass::PC;
    }
    return rep;
}

std::string learn_result_to_json(const LearnResult& r, const AnsatzReport& a) {
    nlohmann::ordered_json j;
    j["seed"] = r.seed;
    j["gamma0"] = r.gamma0;
    j["final_l1"] = r.final_loss;
    j["final_l2"] = r.final_l2;
    j["stage1_status"] = r.stage1_status;
    j["stage2_status"] = r.stage2_status;
    j["stage1_length"] = r.stage1_length;
    j["initial_params"] = r.initial_params;
    j["final_params"] = r.final_params;
    j["loss_trace"] = r.loss_trace;
    j["classification"] = std::string(ansatz_name(a.classification));
    j["residual"] = a.residual;
    j["sc_residual"] = a.sc_residual;
    j["pc_residual"] = a.pc_residual;
    j["dominant"] = a.dominant;
    j["code"] = nlohmann::json::parse(code_to_json(r.code));
    return j.dump(2) + "\n";
}

}  // namespace nsaqec
