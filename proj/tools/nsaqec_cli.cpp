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


#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsaqec/codes.hpp"
#include "nsaqec/recovery.hpp"
#include "nsaqec/sweep.hpp"
#include "nsaqec/verify.hpp"
#include "nsaqec/vql.hpp"

using namespace nsaqec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct SweepFlags {
    std::optional<double> gamma_min, gamma_max, gamma0;
    std::optional<int> points, n, k, q;
    std::optional<std::string> families, out, config;
    std::optional<std::uint64_t> seed;
    std::vector<double> window;
    std::optional<std::size_t> oracle_states;
    std::optional<unsigned> threads;
};

void add_sweep_flags(CLI::App* sub, SweepFlags& f) {
    sub->add_option("--gamma-min", f.gamma_min, "smallest grid gamma (default 1e-3)");
    sub->add_option("--gamma-max", f.gamma_max, "largest grid gamma (default 10^-0.5)");
    sub->add_option("--points", f.points, "log-spaced grid points (default 40)");
    sub->add_option("--families", f.families, "comma list, e.g. lncy,nsa-sc,nsa-pc:n=6,nsa-sc-qudit:q=3");
    sub->add_option("--n", f.n, "site count for every listed family");
    sub->add_option("--k", f.k, "logical size for every listed family");
    sub->add_option("--q", f.q, "local dimension for every listed family");
    sub->add_option("--gamma0", f.gamma0, "also sweep codes frozen at this gamma");
    sub->add_option("--seed", f.seed, "oracle seed");
    sub->add_option("--out", f.out, "output CSV path (default stdout)");
    sub->add_option("--window", f.window, "fit window lo hi")->expected(2);
    sub->add_option("--config", f.config, "JSON config; flags override it");
    sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<FamilySpec> parse_families(const std::string& text) {
    std::vector<FamilySpec> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(FamilySpec::parse(cur));
    return out;
}

SweepConfig build_config(const SweepFlags& f) {
    SweepConfig cfg = default_sweep_config();
    double lo = 1e-3, hi = std::pow(10.0, -0.5);
    int points = 40;
    std::optional<int> n, k, q;
    if (f.config) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(*f.config));
            if (j.contains("gamma_min")) lo = j["gamma_min"].get<double>();
            if (j.contains("gamma_max")) hi = j["gamma_max"].get<double>();
            if (j.contains("points")) points = j["points"].get<int>();
            if (j.contains("families")) {
                cfg.families.clear();
                for (const auto& s : j["families"]) cfg.families.push_back(FamilySpec::parse(s.get<std::string>()));
            }
            if (j.contains("n")) n = j["n"].get<int>();
            if (j.contains("k")) k = j["k"].get<int>();
            if (j.contains("q")) q = j["q"].get<int>();
            if (j.contains("gamma0")) cfg.frozen_gamma0 = j["gamma0"].get<double>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("out")) cfg.out = j["out"].get<std::string>();
            if (j.contains("window")) {
                cfg.window_lo = j["window"].at(0).get<double>();
                cfg.window_hi = j["window"].at(1).get<double>();
            }
            if (j.contains("oracle_states")) cfg.oracle_states = j["oracle_states"].get<std::size_t>();
            if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    if (f.gamma_min) lo = *f.gamma_min;
    if (f.gamma_max) hi = *f.gamma_max;
    if (f.points) points = *f.points;
    if (f.families) cfg.families = parse_families(*f.families);
    if (f.n) n = f.n;
    if (f.k) k = f.k;
    if (f.q) q = f.q;
    if (f.gamma0) cfg.frozen_gamma0 = *f.gamma0;
    if (f.seed) cfg.seed = *f.seed;
    if (f.out) cfg.out = *f.out;
    if (f.window.size() == 2) {
        cfg.window_lo = f.window[0];
        cfg.window_hi = f.window[1];
    }
    if (f.oracle_states) cfg.oracle_states = *f.oracle_states;
    if (f.threads) cfg.threads = *f.threads;
    for (auto& s : cfg.families) {
        const bool fixed = s.family == CodeFamily::LNCY || s.family == CodeFamily::BINOMIAL_024 ||
                           s.family == CodeFamily::NSA_BINOMIAL_024;
        if (n && !fixed) s.n = *n;
        if (k && !fixed) s.k = *k;
        if (q && (s.family == CodeFamily::NSA_SC_QUDIT || s.family == CodeFamily::NONNSA_SC_QUDIT)) s.q = *q;
    }
    if (points < 1) throw ConfigError("--points must be >= 1");
    if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) throw ConfigError("gamma range must satisfy 0 < min <= max < 1");
    cfg.gamma_grid = log_grid(lo, hi, points);
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int cmd_sweep_loss(const SweepFlags& f) {
    const SweepConfig cfg = build_config(f);
    const auto rows = sweep_loss(cfg);
    emit(cfg.out, loss_csv(rows));
    for (const auto& fit : fit_loss_rows(rows, cfg.window_lo, cfg.window_hi))
        std::fprintf(stderr, "fit %-24s exponent %.4f coefficient %.5g r2 %.6f (%zu points)\n", fit.family.c_str(),
                     fit.exponent, fit.coefficient, fit.r_squared, fit.points);
    if (cfg.frozen_gamma0) {
        const auto grid = effective_grid(cfg);
        for (const auto& s : cfg.families) {
            const std::string label = s.label() + "@frozen";
            bool present = false;
            for (const auto& r : rows) present = present || r.family == label;
            if (!present) continue;
            const auto k = kink_report(rows, label);
            std::string where;
            for (auto i : k.fired) where += " " + std::to_string(grid[i]);
            std::fprintf(stderr, "kinks %-24s at gamma:%s\n", label.c_str(), where.empty() ? " none" : where.c_str());
        }
    }
    return kExitOk;
}

int cmd_sweep_fidelity(const SweepFlags& f) {
    const SweepConfig cfg = build_config(f);
    emit(cfg.out, fidelity_csv(sweep_fidelity(cfg)));
    return kExitOk;
}

struct LearnFlags {
    int n = 4, k = 1, seeds = 1, max_steps = 20000, stage1_steps = 5000;
    double gamma0 = std::pow(10.0, -1.5);
    std::uint64_t seed = 0;
    std::string out = "learn";
};

int cmd_learn(const LearnFlags& f) {
    if (f.k < 1 || f.k >= f.n) throw ConfigError("learn needs 1 <= k < n");
    if (f.seeds < 1) throw ConfigError("--seeds must be >= 1");
    for (int s = 0; s < f.seeds; ++s) {
        LearnConfig cfg;
        cfg.n = f.n;
        cfg.k = f.k;
        cfg.gamma0 = f.gamma0;
        cfg.seed = f.seed + s;
        cfg.max_steps = f.max_steps;
        cfg.stage1_max_steps = f.stage1_steps;
        const LearnResult r = learn_code(cfg);
        AnsatzReport a;
        const bool classified = f.k == 1 && f.n >= 4;
        if (classified) a = extract_ansatz(r.code);
        const std::string stem = f.seeds == 1 ? f.out : f.out + "-seed" + std::to_string(cfg.seed);
        emit(stem + ".json", learn_result_to_json(r, a));
        emit(stem + ".code.json", code_to_json(r.code));
        std::printf("seed %llu L1 %.6e L2 %.6e %s", static_cast<unsigned long long>(cfg.seed), r.final_loss, r.final_l2,
                    std::string(ansatz_name(a.classification)).c_str());
        if (classified) std::printf(" residual %.4f", a.residual);
        std::printf(" -> %s.json\n", stem.c_str());
    }
    return kExitOk;
}

struct VerifyFlags {
    bool learning = false;
    int seeds = 20, max_steps = 20000;
    std::size_t oracle_states = 1000;
    std::optional<std::string> code;
    std::optional<double> gamma;
    std::optional<std::string> config;
};

int cmd_verify(const VerifyFlags& f) {
    if (f.config) {
        SweepFlags sf;
        sf.config = f.config;
        build_config(sf);
    }
    if (f.code) {
        const CodeSpace code = code_from_json(read_file(*f.code));
        const double g = f.gamma.value_or(code.gamma);
        if (!(g > 0.0 && g < 1.0)) throw ConfigError("--gamma must lie in (0, 1)");
        CheckResult r = check_code_soundness(code, g, f.oracle_states);
        r.name = "code soundness (" + *f.code + ")";
        std::cout << format_check(r);
        return r.passed ? kExitOk : kExitFail;
    }
    VerifyOptions opt;
    opt.oracle_states = f.oracle_states;
    opt.learn_seeds = f.seeds;
    opt.learn_max_steps = f.max_steps;
    bool ok = true;
    for (const auto& r : run_verify(f.learning, opt)) {
        std::cout << format_check(r) << std::flush;
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitFail;
}

int cmd_search_basis(int n, int q, std::optional<int> k) {
    const auto b = search_sc_basis(n, q, k);
    for (const auto& c : b.classes) std::cout << c.str() << '\n';
    std::fprintf(stderr, "n=%d q=%d classes=%zu\n", n, q, b.classes.size());
    return kExitOk;
}

int cmd_export_code(const std::string& family, std::optional<int> n, std::optional<int> k, std::optional<int> q,
                    double gamma, const std::string& out) {
    FamilySpec s = FamilySpec::parse(family);
    if (n) s.n = *n;
    if (k) s.k = *k;
    if (q) s.q = *q;
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("--gamma must lie in [0, 1)");
    CodeFactory factory;
    emit(out, code_to_json(factory.build(s, gamma)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nsaqec: noise-adapted amplitude-damping codes"};
    app.require_subcommand(1);

    SweepFlags loss_flags, fid_flags;
    auto* loss = app.add_subcommand("sweep-loss", "L1/L2 losses over a gamma grid (CSV)");
    add_sweep_flags(loss, loss_flags);
    auto* fid = app.add_subcommand("sweep-fidelity", "worst-case fidelities over a gamma grid (CSV)");
    add_sweep_flags(fid, fid_flags);
    fid->add_option("--oracle-states", fid_flags.oracle_states, "random logical states per oracle call");

    LearnFlags lf;
    auto* learn = app.add_subcommand("learn", "variational code search");
    learn->add_option("--n", lf.n, "qubits");
    learn->add_option("--k", lf.k, "logical qubits");
    learn->add_option("--gamma0", lf.gamma0, "training gamma");
    learn->add_option("--seed", lf.seed, "first seed");
    learn->add_option("--seeds", lf.seeds, "number of consecutive seeds");
    learn->add_option("--max-steps", lf.max_steps, "optimizer steps per stage");
    learn->add_option("--stage1-steps", lf.stage1_steps, "L2 pretraining steps");
    learn->add_option("--out", lf.out, "output file stem");

    VerifyFlags vf;
    auto* verify = app.add_subcommand("verify", "acceptance checks");
    verify->add_flag("--learning", vf.learning, "include the learning batch");
    verify->add_option("--seeds", vf.seeds, "learning seeds");
    verify->add_option("--max-steps", vf.max_steps, "learning steps per stage");
    verify->add_option("--oracle-states", vf.oracle_states, "random states per oracle call");
    verify->add_option("--code", vf.code, "check one codeword file instead");
    verify->add_option("--gamma", vf.gamma, "gamma for --code (default: the file's)");
    verify->add_option("--config", vf.config, "validate a sweep config file");

    int sb_n = 4, sb_q = 2;
    std::optional<int> sb_k;
    auto* search = app.add_subcommand("search-basis", "largest self-complementary class set");
    search->add_option("--n", sb_n, "sites");
    search->add_option("--q", sb_q, "local dimension");
    search->add_option("--k", sb_k, "target q^k classes");

    std::string ex_family = "nsa-sc", ex_out;
    std::optional<int> ex_n, ex_k, ex_q;
    double ex_gamma = 0.0;
    auto* exp = app.add_subcommand("export-code", "codeword JSON for a family");
    exp->add_option("--families", ex_family, "family spec");
    exp->add_option("--n", ex_n, "sites");
    exp->add_option("--k", ex_k, "logical size");
    exp->add_option("--q", ex_q, "local dimension");
    exp->add_option("--gamma", ex_gamma, "noise strength the code is built for");
    exp->add_option("--out", ex_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*loss) return cmd_sweep_loss(loss_flags);
        if (*fid) return cmd_sweep_fidelity(fid_flags);
        if (*learn) return cmd_learn(lf);
        if (*verify) return cmd_verify(vf);
        if (*search) return cmd_search_basis(sb_n, sb_q, sb_k);
        if (*exp) return cmd_export_code(ex_family, ex_n, ex_k, ex_q, ex_gamma, ex_out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "nsaqec: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "nsaqec: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "nsaqec: %s\n", e.what());
        return kExitFail;
    }
    return kExitUsage;
}
