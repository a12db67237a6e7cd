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


#include "nsaqec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "nsaqec/kl.hpp"
#include "nsaqec/recovery.hpp"

namespace nsaqec {

FamilySpec FamilySpec::defaults(CodeFamily f) {
    switch (f) {
        case CodeFamily::NSA_SC_QUDIT:
        case CodeFamily::NONNSA_SC_QUDIT:
            return {f, 4, 1, 3};
        case CodeFamily::BINOMIAL_024:
        case CodeFamily::NSA_BINOMIAL_024:
            return {f, 1, 0, kDefaultFockCutoff};
        case CodeFamily::CUSTOM:
            throw ConfigError("custom codes have no family spec");
        default:
            return {f, 4, -1, 2};
    }
}

std::string FamilySpec::label() const {
    const FamilySpec d = defaults(family);
    std::string s(family_name(family));
    if (n != d.n) s += ":n=" + std::to_string(n);
    if (k != d.k) s += ":k=" + std::to_string(k);
    if (q != d.q) s += ":q=" + std::to_string(q);
    return s;
}

FamilySpec FamilySpec::parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    CodeFamily f;
    try {
        f = parse_family(parts[0]);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    FamilySpec s = defaults(f);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) throw ConfigError("bad family option '" + parts[i] + "'");
        const std::string key = parts[i].substr(0, eq);
        int value;
        try {
            std::size_t used = 0;
            value = std::stoi(parts[i].substr(eq + 1), &used);
            if (used != parts[i].size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("bad integer in family option '" + parts[i] + "'");
        }
        if (key == "n") s.n = value;
        else if (key == "k") s.k = value;
        else if (key == "q") s.q = value;
        else throw ConfigError("unknown family option '" + key + "'");
    }
    return s;
}

const SCBasisSet& CodeFactory::basis(int n, int q, int k) {
    const auto key = std::make_tuple(n, q, k);
    auto it = cache_.find(key);
    if (it == cache_.end())
        it = cache_.emplace(key, search_sc_basis(n, q, k < 0 ? std::nullopt : std::optional<int>(k))).first;
    return it->second;
}

CodeSpace CodeFactory::build(const FamilySpec& s, double gamma) {
    switch (s.family) {
        case CodeFamily::LNCY:
            if (s.n != 4 || s.q != 2) throw ConfigError("lncy is the 4-qubit code");
            return lncy_code();
        case CodeFamily::NSA_SC:
            return nsa_sc_code(basis(s.n, 2, s.k), gamma);
        case CodeFamily::NONNSA_SC:
            return nonnsa_sc_code(basis(s.n, 2, s.k));
        case CodeFamily::NSA_PC:
            if (s.n < 3) throw ConfigError("nsa-pc needs n >= 3");
            return nsa_pc_code(basis(s.n - 2, 2, s.k >= 1 ? s.k - 1 : -1), gamma);
        case CodeFamily::NSA_SC_QUDIT:
            return nsa_sc_qudit_code(basis(s.n, s.q, s.k), gamma);
        case CodeFamily::NONNSA_SC_QUDIT:
            return nonnsa_sc_qudit_code(basis(s.n, s.q, s.k));
        case CodeFamily::BINOMIAL_024:
            return binomial_code(gamma, false, s.q);
        case CodeFamily::NSA_BINOMIAL_024:
            return binomial_code(gamma, true, s.q);
        case CodeFamily::CUSTOM:
            break;
    }
    throw ConfigError("custom codes cannot be built from a family spec");
}

void SweepConfig::validate() const {
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        const double g = gamma_grid[i];
        if (!(g > 0.0 && g < 1.0)) throw ConfigError("gamma grid values must lie in (0, 1)");
        if (i > 0 && !(g > gamma_grid[i - 1])) throw ConfigError("gamma grid must be strictly increasing");
    }
    if (!(window_lo > 0.0 && window_lo < window_hi && window_hi < 1.0))
        throw ConfigError("fit window must satisfy 0 < lo < hi < 1");
    if (frozen_gamma0 && !(*frozen_gamma0 > 0.0 && *frozen_gamma0 < 1.0))
        throw ConfigError("gamma0 must lie in (0, 1)");
    for (const auto& f : families) {
        if (f.n < 1 || f.n > 12) throw ConfigError("family n must be in [1, 12]");
        if (f.q < 2) throw ConfigError("family q must be >= 2");
    }
}

SweepConfig default_sweep_config() {
    SweepConfig c;
    c.gamma_grid = log_grid(1e-3, std::pow(10.0, -0.5), 40);
    c.families = {FamilySpec::defaults(CodeFamily::LNCY), FamilySpec::defaults(CodeFamily::NSA_SC),
                  FamilySpec::defaults(CodeFamily::NSA_PC)};
    return c;
}

std::vector<double> effective_grid(const SweepConfig& cfg) {
    std::vector<double> g = cfg.gamma_grid;
    if (cfg.frozen_gamma0) {
        auto it = std::lower_bound(g.begin(), g.end(), *cfg.frozen_gamma0);
        if (it == g.end() || *it != *cfg.frozen_gamma0) g.insert(it, *cfg.frozen_gamma0);
    }
    return g;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

namespace {

bool is_adaptive(CodeFamily f) {
    return f == CodeFamily::NSA_SC || f == CodeFamily::NSA_PC || f == CodeFamily::NSA_SC_QUDIT ||
           f == CodeFamily::NSA_BINOMIAL_024;
}

struct Job {
    std::size_t grid;
    std::size_t family;
    bool frozen;
};

std::vector<Job> jobs_for(const SweepConfig& cfg, std::size_t grid_size, bool with_frozen) {
    std::vector<Job> jobs;
    for (std::size_t g = 0; g < grid_size; ++g)
        for (std::size_t f = 0; f < cfg.families.size(); ++f) {
            jobs.push_back({g, f, false});
            if (with_frozen && cfg.frozen_gamma0 && is_adaptive(cfg.families[f].family)) jobs.push_back({g, f, true});
        }
    return jobs;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::vector<LossRow> sweep_loss(const SweepConfig& cfg) {
    cfg.validate();
    const auto grid = effective_grid(cfg);
    CodeFactory factory;
    for (const auto& f : cfg.families) factory.build(f, 0.0);
    const auto jobs = jobs_for(cfg, grid.size(), true);
    std::vector<LossRow> rows(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
        const Job& j = jobs[i];
        const auto& spec = cfg.families[j.family];
        const double g = grid[j.grid];
        const CodeSpace code = factory.build(spec, j.frozen ? *cfg.frozen_gamma0 : g);
        const auto rep = loss_report(code, default_error_set(code, g));
        rows[i] = {g, spec.label() + (j.frozen ? "@frozen" : ""), rep.l1, rep.l2};
    });
    return rows;
}

std::vector<FidelityRow> sweep_fidelity(const SweepConfig& cfg) {
    cfg.validate();
    const auto grid = cfg.gamma_grid;
    CodeFactory factory;
    for (const auto& f : cfg.families) factory.build(f, 0.0);
    const auto jobs = jobs_for(cfg, grid.size(), false);
    std::vector<FidelityRow> rows(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
        const Job& j = jobs[i];
        const auto& spec = cfg.families[j.family];
        const double g = grid[j.grid];
        const CodeSpace code = factory.build(spec, g);
        const ErrorSet errs = default_error_set(code, g);
        const RecoveryPlan plan = build_recovery(code, errs);
        FidelityRow r{g, spec.label(), code.n, code.k(), code.q, worst_case_fidelity(plan), 0.0, std::nullopt};
        r.f_oracle = fidelity_oracle_min_over_states(code, errs, plan, cfg.oracle_states, cfg.seed + i).min_fidelity;
        try {
            r.f_closed = closed_form_fidelity(spec.family, code.n, static_cast<int>(std::lround(code.k())), code.q, g);
        } catch (const std::invalid_argument&) {
        }
        rows[i] = std::move(r);
    });
    return rows;
}

std::string loss_csv(const std::vector<LossRow>& rows) {
    std::ostringstream os;
    os << "gamma,family,l1,l2\n";
    for (const auto& r : rows) os << num(r.gamma) << ',' << r.family << ',' << num(r.l1) << ',' << num(r.l2) << '\n';
    return os.str();
}

std::string fidelity_csv(const std::vector<FidelityRow>& rows) {
    std::ostringstream os;
    os << "gamma,family,n,k,q,F_plan,F_oracle,F_closed_form\n";
    for (const auto& r : rows)
        os << num(r.gamma) << ',' << r.family << ',' << r.n << ',' << num(r.k) << ',' << r.q << ',' << num(r.f_plan)
           << ',' << num(r.f_oracle) << ',' << (r.f_closed ? num(*r.f_closed) : std::string()) << '\n';
    return os.str();
}

std::vector<FitReport> fit_loss_rows(const std::vector<LossRow>& rows, double lo, double hi) {
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> data;
    for (const auto& r : rows) {
        if (!data.count(r.family)) order.push_back(r.family);
        data[r.family].first.push_back(r.gamma);
        data[r.family].second.push_back(r.l1);
    }
    std::vector<FitReport> out;
    for (const auto& name : order) {
        try {
            FitReport f = fit_power_law(data[name].first, data[name].second, lo, hi);
            f.family = name;
            out.push_back(f);
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

KinkReport kink_report(const std::vector<LossRow>& rows, const std::string& family, const KinkOptions& opt) {
    std::vector<double> x, y;
    for (const auto& r : rows)
        if (r.family == family) {
            x.push_back(r.gamma);
            y.push_back(r.l1);
        }
    return detect_kinks(x, y, opt);
}

}  // namespace nsaqec
