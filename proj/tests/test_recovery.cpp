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
#include <map>

#include "doctest.h"
#include "nsaqec/fit.hpp"
#include "nsaqec/recovery.hpp"
#include "nsaqec/verify.hpp"

using namespace nsaqec;

namespace {

CodeSpace sc4(double g) { return nsa_sc_code(search_sc_basis(4, 2), g); }
CodeSpace pc4(double g) { return nsa_pc_code(search_sc_basis(2, 2), g); }

double plan_f(const CodeSpace& c, double g) {
    return worst_case_fidelity(build_recovery(c, default_error_set(c, g)));
}

CVec ket(std::initializer_list<std::pair<const char*, double>> terms) {
    CVec v(16);
    for (auto [s, a] : terms) v[DitString::parse(s, 2).index()] += a;
    return v;
}

CMat rank_two(const CVec& a, const CVec& b, double wa, double wb) {
    CMat m = wa * CMat::outer(a, a);
    m += wb * CMat::outer(b, b);
    return m;
}

double deficit(CodeFamily fam, const std::function<CodeSpace(double)>& make) {
    const auto xs = log_grid(1e-3, 1e-2, 12);
    std::vector<double> ys;
    for (double g : xs) ys.push_back(1.0 - plan_f(make(g), g));
    (void)fam;
    return fit_series(xs, ys, 1e-3, 1e-2)[1];
}

}  // namespace

TEST_CASE("adapted four-qubit SC recovery") {
    for (double g : {0.01, 0.05, 0.2}) {
        const CodeSpace c = sc4(g);
        const RecoveryPlan p = build_recovery(c, ErrorSet(qubit_ad(g), 4, 1));
        CHECK(p.sectors.size() == 5);
        const double x = 1 - g;
        const double closed = 2 / (1 + std::pow(x, -4)) + 4 * g / (x + std::pow(x, -3));
        CHECK(worst_case_fidelity(p) == doctest::Approx(closed).epsilon(1e-13));
        CHECK(closed_form_fidelity(CodeFamily::NSA_SC, 4, 1, 2, g) == doctest::Approx(closed).epsilon(1e-14));
    }
}

TEST_CASE("four-qubit PC sectors match the printed projectors") {
    const double g = 0.08;
    const CodeSpace c = pc4(g);
    const RecoveryPlan p = build_recovery(c, ErrorSet(qubit_ad(g), 4, 1));
    REQUIRE(p.sectors.size() == 5);
    std::map<std::string, CMat> want;
    want["0000"] = rank_two(ket({{"0011", 1}, {"1110", -1}, {"1101", -1}, {"0000", 1}}),
                            ket({{"1100", 1}, {"0001", 1}, {"0010", 1}, {"1111", 1}}), 0.25, 0.25);
    want["1000"] = rank_two(ket({{"0110", 1}, {"0101", 1}}), ket({{"0100", 1}, {"0111", 1}}), 0.5, 0.5);
    want["0100"] = rank_two(ket({{"1010", 1}, {"1001", 1}}), ket({{"1000", 1}, {"1011", 1}}), 0.5, 0.5);
    const CMat ps = rank_two(ket({{"0001", 1}, {"0010", 1}, {"1100", -2}}), ket({{"1101", 1}, {"1110", 1}, {"0000", 2}}),
                             1.0 / 6, 1.0 / 6);
    const CMat pa = rank_two(ket({{"0001", 1}, {"0010", -1}}), ket({{"1101", 1}, {"1110", -1}}), 0.5, 0.5);
    int matched_s = 0, matched_a = 0;
    for (const auto& s : p.sectors) {
        const CMat proj = sector_projector(s, 16);
        auto it = want.find(s.label);
        if (it != want.end()) {
            CHECK(max_abs_diff(proj, it->second) < 1e-12);
            continue;
        }
        matched_s += max_abs_diff(proj, ps) < 1e-12;
        matched_a += max_abs_diff(proj, pa) < 1e-12;
    }
    CHECK(matched_s == 1);
    CHECK(matched_a == 1);
}

TEST_CASE("PC recovery is trace-safe and pure per sector") {
    const double g = 0.1;
    const CodeSpace c = pc4(g);
    const ErrorSet e(qubit_ad(g), 4, 1);
    const RecoveryPlan p = build_recovery(c, e);
    CHECK(recovery_norm(p) <= 1 + 1e-12);
    CHECK(sector_purity_defect(p, c, e) < 1e-12);
    CHECK(worst_case_fidelity(p) == doctest::Approx(closed_form_fidelity(CodeFamily::NSA_PC, 4, 1, 2, g)).epsilon(1e-13));
}

TEST_CASE("an exact code with trivial noise recovers perfectly") {
    CodeSpace c;
    c.n = 1;
    c.codewords = {Codeword::from_terms(1, 2, {{DitString::parse("0", 2), 1.0}}),
                   Codeword::from_terms(1, 2, {{DitString::parse("1", 2), 1.0}})};
    const ErrorSet e(qubit_ad(0.0), 1, 0);
    const RecoveryPlan p = build_recovery(c, e);
    REQUIRE(p.sectors.size() == 1);
    CHECK(p.sectors[0].min_amplitude == doctest::Approx(1.0));
    CHECK(worst_case_fidelity(p) == doctest::Approx(1.0));
}

TEST_CASE("gamma 0 gives unit fidelity") {
    for (const CodeSpace& c : {lncy_code(), sc4(0.0), pc4(0.0), binomial_code(0.0, true)})
        CHECK(plan_f(c, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(closed_form_fidelity(CodeFamily::NSA_PC, 6, 2, 2, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("state oracle agrees with the plan") {
    const double g = 0.05;
    const CodeSpace c = sc4(g);
    const ErrorSet e(qubit_ad(g), 4, 1);
    const RecoveryPlan p = build_recovery(c, e);
    const double f = worst_case_fidelity(p);
    const auto o = fidelity_oracle_min_over_states(c, e, p, 300);
    CHECK(std::abs(o.min_fidelity - f) < 1e-9);
    CHECK(o.max_fidelity - o.min_fidelity < 1e-10);
    CVec plus(2);
    plus[0] = plus[1] = 1 / std::sqrt(2.0);
    const auto kraus = logical_kraus(c, e, p);
    CHECK(logical_state_fidelity(kraus, plus) == doctest::Approx(f).epsilon(1e-13));
    CHECK(physical_state_fidelity(c, e, p, plus) == doctest::Approx(f).epsilon(1e-12));
    const CodeSpace c0 = sc4(0.0);
    const ErrorSet e0(qubit_ad(0.0), 4, 1);
    CHECK(fidelity_oracle_min_over_states(c0, e0, build_recovery(c0, e0), 50).min_fidelity ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("plans match closed forms across families") {
    for (double g : {0.003, 0.03, 0.15}) {
        CHECK(plan_f(lncy_code(), g) == doctest::Approx(closed_form_fidelity(CodeFamily::LNCY, 4, 1, 2, g)).epsilon(1e-12));
        const CodeSpace s6 = nsa_sc_code(search_sc_basis(6, 2), g);
        CHECK(plan_f(s6, g) == doctest::Approx(closed_form_fidelity(CodeFamily::NSA_SC, 6, -1, 2, g)).epsilon(1e-12));
        const CodeSpace f6 = nonnsa_sc_code(search_sc_basis(6, 2));
        CHECK(plan_f(f6, g) == doctest::Approx(closed_form_fidelity(CodeFamily::NONNSA_SC, 6, -1, 2, g)).epsilon(1e-12));
        CHECK(plan_f(binomial_code(g, true), g) ==
              doctest::Approx(closed_form_fidelity(CodeFamily::NSA_BINOMIAL_024, 1, 1, 6, g)).epsilon(1e-12));
        CHECK(plan_f(binomial_code(g, false), g) ==
              doctest::Approx(closed_form_fidelity(CodeFamily::BINOMIAL_024, 1, 1, 6, g)).epsilon(1e-12));
        const SCBasisSet q3 = search_sc_basis(4, 3, 1);
        CHECK(plan_f(nsa_sc_qudit_code(q3, g), g) ==
              doctest::Approx(closed_form_fidelity(CodeFamily::NSA_SC_QUDIT, 4, 1, 3, g)).epsilon(1e-12));
        CHECK(plan_f(nonnsa_sc_qudit_code(q3), g) ==
              doctest::Approx(closed_form_fidelity(CodeFamily::NONNSA_SC_QUDIT, 4, 1, 3, g)).epsilon(1e-12));
    }
}

TEST_CASE("second-order fidelity deficits from plan fits") {
    CHECK(deficit(CodeFamily::NSA_SC, sc4) == doctest::Approx(3.0).epsilon(0.02));
    CHECK(deficit(CodeFamily::LNCY, [](double) { return lncy_code(); }) == doctest::Approx(5.0).epsilon(0.02));
    CHECK(deficit(CodeFamily::NSA_PC, pc4) == doctest::Approx(1.75).epsilon(0.02));
}

TEST_CASE("closed-form deficit coefficients") {
    CHECK(closed_form_deficit_coefficient(CodeFamily::NSA_SC, 4, 2) == doctest::Approx(3.0));
    CHECK(closed_form_deficit_coefficient(CodeFamily::NSA_PC, 4, 2) == doctest::Approx(1.75));
    CHECK(closed_form_deficit_coefficient(CodeFamily::LNCY, 4, 2) == doctest::Approx(5.0));
    CHECK(closed_form_deficit_coefficient(CodeFamily::NONNSA_SC, 4, 2) == doctest::Approx(5.0));
    CHECK(closed_form_deficit_coefficient(CodeFamily::NSA_SC_QUDIT, 4, 3) == doctest::Approx(10.0));
    CHECK(closed_form_deficit_coefficient(CodeFamily::NONNSA_SC_QUDIT, 4, 3) == doctest::Approx(14.0));
    CHECK(closed_form_deficit_coefficient(CodeFamily::NSA_BINOMIAL_024, 1, 6) == doctest::Approx(3.0));
    CHECK(closed_form_deficit_coefficient(CodeFamily::BINOMIAL_024, 1, 6) == doctest::Approx(5.0));
    for (int q = 3; q <= 7; ++q)
        for (int n : {6, 12}) {
            if (n % q) continue;
            const double gap = closed_form_deficit_coefficient(CodeFamily::NONNSA_SC_QUDIT, n, q) -
                               closed_form_deficit_coefficient(CodeFamily::NSA_SC_QUDIT, n, q);
            CHECK(gap == doctest::Approx(n * n * (q * q - 1) / 24.0));
        }
}

TEST_CASE("closed forms expand to their deficit coefficients") {
    const double g = 1e-5;
    for (int n = 3; n <= 10; ++n) {
        for (CodeFamily f : {CodeFamily::NSA_SC, CodeFamily::NONNSA_SC}) {
            const double num = (1 - closed_form_fidelity(f, n, -1, 2, g)) / (g * g);
            CHECK(num == doctest::Approx(closed_form_deficit_coefficient(f, n, 2)).epsilon(1e-3));
        }
        if (n >= 4) {
            const double num = (1 - closed_form_fidelity(CodeFamily::NSA_PC, n, -1, 2, g)) / (g * g);
            CHECK(num == doctest::Approx(closed_form_deficit_coefficient(CodeFamily::NSA_PC, n, 2)).epsilon(1e-3));
        }
    }
}

TEST_CASE("fidelity ordering between adjacent sizes") {
    CHECK(ordering_check(4, {0.01}).holds);
    CHECK(ordering_check(10, {0.005}).holds);
    const auto v = ordering_check(6, log_grid(1e-3, 0.1, 8));
    CHECK(v.holds);
    CHECK(v.f_sc_n.size() == 8);
}

TEST_CASE("a sign flip in a PC codeword breaks the recovery checks") {
    const double g = 0.05;
    const CodeSpace good = pc4(g);
    CHECK(check_code_soundness(good, g, 100).passed);
    CodeSpace bad = good;
    auto terms = bad.codewords[0].terms();
    for (auto& [s, a] : terms)
        if (s.str() == "1101") a = -a;
    bad.codewords[0] = Codeword::from_terms(4, 2, terms);
    const CheckResult r = check_code_soundness(bad, g, 100);
    CHECK_FALSE(r.passed);
    bool purity_or_plan = false;
    for (const auto& l : r.lines)
        purity_or_plan = purity_or_plan || (l.rfind("FAIL", 0) == 0 &&
                                            (l.find("purity") != std::string::npos || l.find("plan") != std::string::npos));
    CHECK(purity_or_plan);
}
