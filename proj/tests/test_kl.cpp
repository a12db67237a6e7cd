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
#include <random>

#include "doctest.h"
#include "nsaqec/kl.hpp"

using namespace nsaqec;

namespace {

const KLMatrix& find(const std::vector<KLMatrix>& ms, std::size_t a, std::size_t b) {
    for (const auto& m : ms)
        if (m.a == a && m.b == b) return m;
    throw std::runtime_error("missing KL matrix");
}

CodeSpace sc4(double g) { return nsa_sc_code(search_sc_basis(4, 2), g); }
CodeSpace pc4(double g) { return nsa_pc_code(search_sc_basis(2, 2), g); }

}  // namespace

TEST_CASE("identity-only noise leaves every code exact") {
    const CodeSpace c = lncy_code();
    const ErrorSet none(qubit_ad(0.0), 4, 1);
    CHECK(l1_loss(c, none) == 0.0);
    CHECK(l2_loss(c, none) == 0.0);
    for (const auto& m : kl_matrices(c, none)) {
        CHECK(std::abs(m.entries(0, 1)) == 0.0);
        CHECK(std::abs(m.entries(0, 0) - m.entries(1, 1)) < 1e-15);
    }
}

TEST_CASE("losses vanish at gamma 0 for every family") {
    for (const CodeSpace& c : {lncy_code(), sc4(0.0), pc4(0.0), binomial_code(0.0, true)}) {
        const ErrorSet e = default_error_set(c, 0.0);
        CHECK(l1_loss(c, e) == doctest::Approx(0.0));
    }
}

TEST_CASE("no-jump diagonal entries for the flat and adapted codes") {
    const double g = 0.05, x = 1 - g;
    const auto flat = kl_matrices(lncy_code(), ErrorSet(qubit_ad(g), 4, 1));
    const auto& m = find(flat, 0, 0).entries;
    CHECK(m(0, 0).real() == doctest::Approx((1 + std::pow(x, 4)) / 2).epsilon(1e-14));
    CHECK(m(1, 1).real() == doctest::Approx(x * x).epsilon(1e-14));
    const auto adapted = kl_matrices(sc4(g), ErrorSet(qubit_ad(g), 4, 1));
    const auto& a = find(adapted, 0, 0).entries;
    CHECK(a(0, 0).real() == doctest::Approx(2 / (1 + std::pow(x, -4))).epsilon(1e-14));
    CHECK(a(1, 1).real() == doctest::Approx(x * x).epsilon(1e-14));
    const double gap = x * x * std::pow(1 - x * x, 2) / (1 + std::pow(x, 4));
    CHECK(std::abs(a(0, 0) - a(1, 1)) == doctest::Approx(gap).epsilon(1e-10));
}

TEST_CASE("KL matrices are indexed over all ordered error pairs and hermitian in pairs") {
    const CodeSpace c = pc4(0.1);
    const ErrorSet e(qubit_ad(0.1), 4, 1);
    const auto ms = kl_matrices(c, e);
    CHECK(ms.size() == e.size() * e.size());
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b2 = 0; b2 < e.size(); ++b2)
            CHECK(max_abs_diff(find(ms, a, b2).entries, find(ms, b2, a).entries.adjoint()) < 1e-15);
}

TEST_CASE("violation measures on hand-made matrices") {
    CMat m(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.3;
    m(0, 1) = cplx(0.0, 0.2);
    m(1, 0) = cplx(0.0, -0.2);
    CHECK(kl_violation_l1(m) == doctest::Approx(0.2 + 0.5 * 0.2));
    CHECK(kl_violation_l2(m) == doctest::Approx(0.04 + 0.25 * 0.02));
    CHECK(kl_violation_l1(CMat::identity(3)) == 0.0);
}

TEST_CASE("loss totals equal the per-pair sums and are non-negative") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.001, 0.5);
    for (int i = 0; i < 10; ++i) {
        const double g = u(rng);
        const CodeSpace c = i % 2 ? pc4(g) : lncy_code();
        const LossReport r = loss_report(c, ErrorSet(qubit_ad(g), 4, 1));
        double s1 = 0, s2 = 0;
        for (double v : r.per_mu_l1) s1 += v;
        for (double v : r.per_mu_l2) s2 += v;
        CHECK(r.l1 == doctest::Approx(s1).epsilon(1e-12));
        CHECK(r.l2 == doctest::Approx(s2).epsilon(1e-12));
        CHECK(r.l1 >= 0.0);
        CHECK(r.l2 >= 0.0);
    }
}

TEST_CASE("leading loss coefficients at small gamma") {
    const double g = 1e-4;
    const ErrorSet e(qubit_ad(g), 4, 1);
    CHECK(l1_loss(lncy_code(), e) / (g * g) == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(l1_loss(sc4(g), e) / (g * g) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(l1_loss(pc4(g), e) / (g * g * g) == doctest::Approx(0.25).epsilon(1e-2));
}

TEST_CASE("image table matches dense application") {
    const CodeSpace c = sc4(0.2);
    const ErrorSet e(qubit_ad(0.2), 4, 1);
    const auto images = error_images(c, e);
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t l = 0; l < c.K(); ++l) {
            const CVec want = e.dense(a).apply(c.codewords[l].dense());
            const CVec got = images[a][l].dense(16);
            for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(want[i] - got[i]) < 1e-15);
        }
}

TEST_CASE("fidelity bound from the loss") {
    CHECK(loss_fidelity_bound(0.0, 2) == 1.0);
    CHECK(loss_fidelity_bound(0.001, 2) == doctest::Approx(0.992));
    CHECK(loss_fidelity_bound(1.0, 2) < 0.0);
    CHECK_THROWS(loss_fidelity_bound(-1.0, 2));
    CHECK_THROWS(loss_fidelity_bound(0.1, 0));
}

TEST_CASE("default error sets per family") {
    CHECK(default_error_set(lncy_code(), 0.1).size() == 5);
    CHECK(default_error_set(nsa_sc_qudit_code(search_sc_basis(4, 3, 1), 0.1), 0.1).size() == 9);
    const ErrorSet bos = default_error_set(binomial_code(0.1, true), 0.1);
    CHECK(bos.size() == 2);
    CHECK(bos.q() == kDefaultFockCutoff);
}
