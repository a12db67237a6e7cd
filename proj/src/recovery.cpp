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


#include "nsaqec/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace nsaqec {

namespace {

std::vector<SparseVec> sparse_orthonormal(const std::vector<SparseVec>& vs, double rank_tol = 1e-9) {
    double scale = 0.0;
    for (const auto& v : vs) scale = std::max(scale, v.norm());
    std::vector<SparseVec> basis;
    if (scale == 0.0) return basis;
    for (const auto& v : vs) {
        SparseVec r = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) r = axpy(r, -inner(b, r), b);
        const double nrm = r.norm();
        if (nrm > rank_tol * scale) {
            r *= 1.0 / nrm;
            basis.push_back(std::move(r));
        }
    }
    return basis;
}

double max_principal_cosine(const std::vector<SparseVec>& qa, const std::vector<SparseVec>& qb) {
    if (qa.empty() || qb.empty()) return 0.0;
    CMat x(qa.size(), qb.size());
    bool any = false;
    for (std::size_t i = 0; i < qa.size(); ++i)
        for (std::size_t j = 0; j < qb.size(); ++j) {
            x(i, j) = inner(qa[i], qb[j]);
            any = any || x(i, j) != cplx(0.0);
        }
    if (!any) return 0.0;
    const auto eig = hermitian_eigen(x * x.adjoint());
    return std::sqrt(std::max(0.0, eig.values.back()));
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::string group_label(const ErrorSet& errs, const std::vector<std::size_t>& group) {
    std::string s;
    for (auto a : group) s += (s.empty() ? "" : "+") + errs.label(a).str();
    return s;
}

}  // namespace

RecoveryPlan build_recovery(const CodeSpace& code, const ErrorSet& errs, const RecoveryOptions& opt) {
    const ImageTable w = error_images(code, errs);
    const std::size_t ne = errs.size();
    const std::size_t K = code.K();

    std::vector<std::vector<SparseVec>> spans(ne);
    for (std::size_t a = 0; a < ne; ++a) spans[a] = sparse_orthonormal(w[a]);
    UnionFind uf(ne);
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = a + 1; b < ne; ++b)
            if (max_principal_cosine(spans[a], spans[b]) > opt.overlap_cosine) uf.unite(a, b);

    std::vector<std::vector<std::size_t>> groups;
    {
        std::vector<std::size_t> slot(ne, ne);
        for (std::size_t a = 0; a < ne; ++a) {
            const auto root = uf.find(a);
            if (slot[root] == ne) {
                slot[root] = groups.size();
                groups.emplace_back();
            }
            groups[slot[root]].push_back(a);
        }
    }

    RecoveryPlan plan;
    plan.n = code.n;
    plan.q = code.q;
    plan.K = K;
    for (const auto& group : groups) {
        const std::size_t r = group.size();
        // Images of different codewords must stay orthogonal inside a group.
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t x = 0; x < K; ++x)
                    for (std::size_t y = 0; y < K; ++y) {
                        if (x == y) continue;
                        const auto& u = w[group[i]][x];
                        const auto& v = w[group[j]][y];
                        if (std::abs(inner(u, v)) > opt.diagonal_tol * std::max(u.norm() * v.norm(), 1e-300))
                            throw RecoveryError("errors " + group_label(errs, group) + " mix codewords " +
                                                std::to_string(x) + " and " + std::to_string(y));
                    }

        std::vector<CMat> gram(K, CMat(r, r));
        std::vector<double> tr(K, 0.0);
        CMat mix(r, r);
        const double phi = 0.5 * (1.0 + std::sqrt(5.0));
        for (std::size_t x = 0; x < K; ++x) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) gram[x](i, j) = inner(w[group[i]][x], w[group[j]][x]);
            tr[x] = gram[x].trace().real();
            if (tr[x] > 0.0) {
                CMat g = gram[x];
                g *= 1.0 / ((static_cast<double>(x) + phi) * tr[x]);
                mix += g;
            }
        }
        double max_tr = *std::max_element(tr.begin(), tr.end());
        if (max_tr == 0.0) continue;

        const auto eig = hermitian_eigen(mix);
        const CMat& V = eig.vectors;
        std::vector<CMat> diag(K);
        for (std::size_t x = 0; x < K; ++x) {
            diag[x] = V.adjoint() * gram[x] * V;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (i != j && std::abs(diag[x](i, j)) > opt.diagonal_tol * std::max(tr[x], 1e-300))
                        throw RecoveryError("errors " + group_label(errs, group) +
                                            " have no common syndrome basis for codeword " + std::to_string(x));
        }

        for (std::size_t jj = r; jj-- > 0;) {  // descending mixture eigenvalue
            SyndromeSector s;
            s.errors = group;
            s.label = r == 1 ? errs.label(group[0]).str() : group_label(errs, group) + "#" + std::to_string(r - 1 - jj);
            for (std::size_t i = 0; i < r; ++i) s.profile.push_back(std::conj(V(i, jj)));
            bool any = false;
            for (std::size_t x = 0; x < K; ++x) {
                const double d = diag[x](jj, jj).real();
                if (tr[x] > 0.0 && d > 1e-12 * tr[x] && d > 1e-14 * max_tr) {
                    const double a = std::sqrt(d);
                    SparseVec e;
                    for (std::size_t i = 0; i < r; ++i) e = axpy(e, V(i, jj) / a, w[group[i]][x]);
                    s.error_words.push_back(std::move(e));
                    s.amplitudes.push_back(a);
                    any = true;
                } else {
                    s.error_words.emplace_back();
                    s.amplitudes.push_back(0.0);
                }
            }
            if (!any) continue;
            s.min_amplitude = *std::min_element(s.amplitudes.begin(), s.amplitudes.end());
            plan.sectors.push_back(std::move(s));
        }
    }
    plan.fail_weight = 1.0 - worst_case_fidelity(plan);
    return plan;
}

double worst_case_fidelity(const RecoveryPlan& plan) {
    double f = 0.0;
    for (const auto& s : plan.sectors) f += s.min_amplitude * s.min_amplitude;
    return f;
}

CMat sector_projector(const SyndromeSector& s, std::uint64_t dim, std::size_t cap) {
    if (dim > cap) throw DimensionError("sector_projector: dimension above cap");
    std::vector<CVec> vs;
    for (std::size_t x = 0; x < s.error_words.size(); ++x)
        if (s.amplitudes[x] > 0.0) vs.push_back(s.error_words[x].dense(dim));
    return projector_from_vectors(vs);
}

double recovery_norm(const RecoveryPlan& plan) {
    std::vector<const SparseVec*> words;
    std::vector<double> weight;
    for (const auto& s : plan.sectors) {
        if (s.min_amplitude == 0.0) continue;
        for (std::size_t x = 0; x < s.amplitudes.size(); ++x) {
            if (s.amplitudes[x] == 0.0) continue;
            words.push_back(&s.error_words[x]);
            weight.push_back(s.min_amplitude / s.amplitudes[x]);
        }
    }
    if (words.empty()) return 0.0;
    CMat b(words.size(), words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) b(i, j) = weight[i] * weight[j] * inner(*words[i], *words[j]);
    return hermitian_eigen(b).values.back();
}

double sector_purity_defect(const RecoveryPlan& plan, const CodeSpace& code, const ErrorSet& errs, std::size_t cap) {
    const auto dim = code.dim();
    double defect = 0.0;
    for (const auto& s : plan.sectors) {
        if (s.errors.size() < 2) continue;
        const CMat P = sector_projector(s, dim, cap);
        for (std::size_t x = 0; x < code.K(); ++x) {
            const CVec psi = code.codewords[x].dense();
            std::vector<CVec> proj;
            for (auto a : s.errors) proj.push_back(P.apply(errs.apply(a, code.codewords[x].amps()).dense(dim)));
            CMat g(proj.size(), proj.size());
            for (std::size_t i = 0; i < proj.size(); ++i)
                for (std::size_t j = 0; j < proj.size(); ++j) g(i, j) = inner(proj[i], proj[j]);
            const auto ev = hermitian_eigen(g).values;
            if (ev.back() <= 0.0) continue;
            defect = std::max(defect, ev[ev.size() - 2] / ev.back());
        }
    }
    return defect;
}

std::vector<CMat> logical_kraus(const CodeSpace& code, const ErrorSet& errs, const RecoveryPlan& plan,
                                std::uint64_t dense_limit) {
    const std::size_t K = code.K();
    const auto dim = code.dim();
    const bool dense = dim <= dense_limit;
    // noisy[a][nu] = E_a |psi_nu>
    std::vector<std::vector<CVec>> noisy_dense;
    std::vector<std::vector<SparseVec>> noisy_sparse;
    if (dense) {
        std::vector<CVec> cw;
        for (const auto& c : code.codewords) cw.push_back(c.dense());
        for (std::size_t a = 0; a < errs.size(); ++a) {
            const CMat E = errs.dense(a, dense_limit);
            noisy_dense.emplace_back();
            for (const auto& v : cw) noisy_dense.back().push_back(E.apply(v));
        }
    } else {
        noisy_sparse = error_images(code, errs);
    }
    std::vector<CMat> out;
    for (const auto& s : plan.sectors) {
        if (s.min_amplitude == 0.0) continue;
        std::vector<CVec> words_dense;
        if (dense)
            for (const auto& e : s.error_words) words_dense.push_back(e.dense(dim));
        for (std::size_t a = 0; a < errs.size(); ++a) {
            CMat L(K, K);
            bool any = false;
            for (std::size_t mu = 0; mu < K; ++mu) {
                if (s.amplitudes[mu] == 0.0) continue;
                const double f = s.min_amplitude / s.amplitudes[mu];
                for (std::size_t nu = 0; nu < K; ++nu) {
                    const cplx v = dense ? inner(words_dense[mu], noisy_dense[a][nu])
                                         : inner(s.error_words[mu], noisy_sparse[a][nu]);
                    L(mu, nu) = f * v;
                    any = any || v != cplx(0.0);
                }
            }
            if (any) out.push_back(std::move(L));
        }
    }
    return out;
}

double logical_state_fidelity(std::span<const CMat> kraus, const CVec& c) {
    double f = 0.0;
    for (const auto& L : kraus) f += std::norm(inner(c, L.apply(c)));
    return f;
}

double physical_state_fidelity(const CodeSpace& code, const ErrorSet& errs, const RecoveryPlan& plan, const CVec& c,
                               std::size_t cap) {
    const auto dim = code.dim();
    if (dim > cap) throw DimensionError("physical_state_fidelity: dimension above cap");
    CVec psi(dim);
    for (std::size_t x = 0; x < code.K(); ++x) {
        const CVec v = code.codewords[x].dense();
        for (std::size_t i = 0; i < dim; ++i) psi[i] += c[x] * v[i];
    }
    const CMat rho = CMat::outer(psi, psi);
    const auto E = errs.dense_all(cap);
    const CMat noisy = apply_channel(E, rho);
    std::vector<CMat> R;
    for (const auto& s : plan.sectors) {
        if (s.min_amplitude == 0.0) continue;
        CMat r(dim, dim);
        for (std::size_t x = 0; x < code.K(); ++x) {
            CMat term = CMat::outer(code.codewords[x].dense(), s.error_words[x].dense(dim));
            term *= s.min_amplitude / s.amplitudes[x];
            r += term;
        }
        R.push_back(std::move(r));
    }
    const CMat out = apply_channel(R, noisy);
    return inner(psi, out.apply(psi)).real();
}

OracleResult fidelity_oracle_min_over_states(const CodeSpace& code, const ErrorSet& errs, const RecoveryPlan& plan,
                                             std::size_t n_states, std::uint64_t seed) {
    const auto kraus = logical_kraus(code, errs, plan);
    const std::size_t K = code.K();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto random_state = [&]() {
        CVec c(K);
        for (std::size_t i = 0; i < K; ++i) c[i] = cplx(gauss(rng), gauss(rng));
        return c.normalized();
    };
    OracleResult res;
    CVec best;
    for (std::size_t t = 0; t < n_states; ++t) {
        CVec c = random_state();
        const double f = logical_state_fidelity(kraus, c);
        res.max_fidelity = std::max(res.max_fidelity, f);
        if (t == 0 || f < res.min_fidelity) {
            res.min_fidelity = f;
            best = c;
        }
        ++res.states;
    }
    double step = 0.1;
    for (int it = 0; it < 400 && !best.amps().empty(); ++it) {
        CVec c = best;
        for (std::size_t i = 0; i < K; ++i) c[i] += step * cplx(gauss(rng), gauss(rng));
        c = c.normalized();
        const double f = logical_state_fidelity(kraus, c);
        ++res.states;
        res.max_fidelity = std::max(res.max_fidelity, f);
        if (f < res.min_fidelity) {
            res.min_fidelity = f;
            best = c;
        } else {
            step *= 0.97;
        }
    }
    return res;
}

namespace {

double binom(int a, int l) {
    if (l < 0 || l > a) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= l; ++i) r = r * (a - l + i) / i;
    return r;
}

void need(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double closed_form_fidelity(CodeFamily family, int n, int k, int q, double gamma) {
    (void)k;
    need(gamma >= 0.0 && gamma < 1.0, "closed_form_fidelity: gamma must lie in [0, 1)");
    const double x = 1.0 - gamma;
    switch (family) {
        case CodeFamily::NSA_SC:
            need(n >= 2, "closed_form_fidelity: n >= 2");
            return 2.0 / (1.0 + std::pow(x, -n)) + n * gamma / (std::pow(x, 1 - n) + x);
        case CodeFamily::LNCY:
            need(n == 4, "closed_form_fidelity: LNCY has n = 4");
            [[fallthrough]];
        case CodeFamily::NONNSA_SC: {
            need(n >= 2, "closed_form_fidelity: n >= 2");
            const int h = n / 2;
            return 0.5 * (std::pow(x, h) + std::pow(x, n - h)) + 0.5 * n * std::pow(x, n - 1) * gamma;
        }
        case CodeFamily::NSA_PC: {
            need(n >= 3, "closed_form_fidelity: PC needs n >= 3");
            const int m = n - 2;
            const double n0 = 1.0 + std::pow(x, -2) + 2.0 * std::pow(x, -(m + 1));
            const double n1 = std::pow(x, -(m + 2)) + std::pow(x, -m) + 2.0 / x;
            return (4.0 + 2.0 * n * gamma / x) / std::max(n0, n1);
        }
        case CodeFamily::NSA_SC_QUDIT: {
            need(q >= 2 && n >= 2, "closed_form_fidelity: q >= 2, n >= 2");
            double den = 0.0;
            for (int a = 0; a < q; ++a) den += std::pow(x, -a * n);
            double jumps = 0.0;
            for (int l = 1; l < q; ++l)
                for (int a = l; a < q; ++a) jumps += binom(a, l) * std::pow(gamma / x, l);
            return (q + n * jumps) / den;
        }
        case CodeFamily::NONNSA_SC_QUDIT: {
            need(q >= 2 && n >= 2, "closed_form_fidelity: q >= 2, n >= 2");
            if (n == 4 && q == 3) {
                const double g = gamma;
                return (x * x + std::pow(x, 4) + std::pow(x, 6)) / 3.0 +
                       4.0 * (g * std::pow(x, 3) + 2.0 * g * std::pow(x, 7)) / 3.0 + 4.0 * g * g * std::pow(x, 6) / 3.0;
            }
            double f = std::pow(x, 0.5 * n * (q - 1));
            for (int l = 1; l < q; ++l)
                for (int a = l; a < q; ++a) f += n * binom(a, l) * std::pow(x, n * a - l) * std::pow(gamma, l) / q;
            return f;
        }
        case CodeFamily::BINOMIAL_024: {
            const double x2 = x * x, x4 = x2 * x2;
            return std::min(0.5 * (1.0 + x4), x2) + (2.0 * gamma / x) * std::min(x4, x2);
        }
        case CodeFamily::NSA_BINOMIAL_024: {
            const double x2 = x * x, x4 = x2 * x2;
            return std::min(2.0 / (1.0 + 1.0 / x4), x2) * (1.0 + 2.0 * gamma / x);
        }
        case CodeFamily::CUSTOM:
            break;
    }
    throw std::invalid_argument("closed_form_fidelity: no closed form for family " + std::string(family_name(family)));
}

double closed_form_deficit_coefficient(CodeFamily family, int n, int q) {
    const double nn = n;
    const double fl = n / 2;
    switch (family) {
        case CodeFamily::NSA_SC:
            return (nn * nn - nn) / 4.0;
        case CodeFamily::LNCY:
        case CodeFamily::NONNSA_SC:
            return (nn * nn - nn + 2.0 * nn * fl - 2.0 * fl * fl) / 4.0;
        case CodeFamily::NSA_PC:
            return (nn * nn - 3.0 * nn + 3.0) / 4.0;
        case CodeFamily::NSA_SC_QUDIT:
            return (q - 1.0) * (2.0 * q - 1.0) * (nn * nn - nn) / 12.0;
        case CodeFamily::NONNSA_SC_QUDIT:
            if (n == 4 && q == 3) return 14.0;
            return (q - 1.0) * (2.0 * q - 1.0) * (nn * nn - nn) / 12.0 + nn * nn * (q * q - 1.0) / 24.0;
        case CodeFamily::BINOMIAL_024:
            return 5.0;
        case CodeFamily::NSA_BINOMIAL_024:
            return 3.0;
        case CodeFamily::CUSTOM:
            break;
    }
    throw std::invalid_argument("closed_form_deficit_coefficient: unsupported family");
}

OrderingVerdict ordering_check(int n, const std::vector<double>& gammas) {
    need(n >= 3, "ordering_check: n >= 3");
    OrderingVerdict v;
    for (double g : gammas) {
        if (!(g > 0.0)) continue;
        const double a = closed_form_fidelity(CodeFamily::NSA_SC, n, 0, 2, g);
        const double b = closed_form_fidelity(CodeFamily::NSA_PC, n + 2, 0, 2, g);
        const double c = closed_form_fidelity(CodeFamily::NSA_SC, n + 2, 0, 2, g);
        v.gammas.push_back(g);
        v.f_sc_n.push_back(a);
        v.f_pc_n2.push_back(b);
        v.f_sc_n2.push_back(c);
        v.holds = v.holds && a > b && b > c;
    }
    return v;
}

}  // namespace nsaqec
