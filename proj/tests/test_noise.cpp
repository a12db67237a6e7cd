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

#include "doctest.h"
#include "nsaqec/noise.hpp"

using namespace nsaqec;

namespace {

double completeness_error(const std::vector<CMat>& k) {
    return max_abs_diff(kraus_completeness(k), CMat::identity(k[0].rows()));
}

bool only_on_superdiagonal(const SiteKrausFamily& f) {
    for (const auto& l : f.ops)
        for (std::size_t r = 0; r < l.op.rows(); ++r)
            for (std::size_t c = 0; c < l.op.cols(); ++c)
                if (std::abs(l.op(r, c)) != 0.0 && static_cast<int>(c) - static_cast<int>(r) != l.level) return false;
    return true;
}

}  // namespace

TEST_CASE("qubit damping at the endpoints") {
    const auto none = qubit_ad(0.0);
    CHECK(max_abs_diff(none.op(0), CMat::identity(2)) == 0.0);
    CHECK(max_abs_diff(none.op(1), CMat(2, 2)) == 0.0);
    const auto full = qubit_ad(1.0);
    CHECK(full.op(0)(0, 0) == cplx(1.0));
    CHECK(full.op(0)(1, 1) == cplx(0.0));
    CHECK(full.op(1)(0, 1) == cplx(1.0));
}

TEST_CASE("qubit damping at gamma 0.36") {
    const auto f = qubit_ad(0.36);
    CHECK(f.op(0)(1, 1).real() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(f.op(1)(0, 1).real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::abs(f.op(1)(1, 0)) == 0.0);
}

TEST_CASE("qutrit damping operators") {
    const double g = 0.13;
    const auto f = qudit_ad(3, g);
    REQUIRE(f.ops.size() == 3);
    CHECK(f.op(1)(0, 1).real() == doctest::Approx(std::sqrt(g)).epsilon(1e-14));
    CHECK(f.op(1)(1, 2).real() == doctest::Approx(std::sqrt(2 * g * (1 - g))).epsilon(1e-14));
    CHECK(f.op(2)(0, 2).real() == doctest::Approx(g).epsilon(1e-14));
    CHECK(f.op(0)(2, 2).real() == doctest::Approx(1 - g).epsilon(1e-14));
}

TEST_CASE("qudit damping with q = 2 is qubit damping") {
    for (double g : {0.0, 0.01, 0.4, 0.99}) {
        const auto a = qudit_ad(2, g), b = qubit_ad(g);
        for (int l = 0; l < 2; ++l) CHECK(max_abs_diff(a.op(l), b.op(l)) == 0.0);
    }
}

TEST_CASE("every site family is complete and strictly lowering") {
    for (double g : {0.0, 0.001, 0.1, 0.5, 0.9}) {
        CHECK(completeness_error(qubit_ad(g).matrices()) < 1e-12);
        CHECK(only_on_superdiagonal(qubit_ad(g)));
        for (int q = 3; q <= 8; ++q) {
            CHECK(completeness_error(qudit_ad(q, g).matrices()) < 1e-12);
            CHECK(only_on_superdiagonal(qudit_ad(q, g)));
        }
        const auto b = bosonic_ad(kDefaultFockCutoff, g, kDefaultFockCutoff - 1);
        CHECK(completeness_error(b.matrices()) < 1e-12);
        CHECK(only_on_superdiagonal(b));
    }
    CHECK(completeness_error(qudit_ad(5, 0.1).matrices()) < 1e-12);
}

TEST_CASE("photon loss matrix elements") {
    const double g = 0.07;
    const auto f = bosonic_ad(6, g, 1);
    CHECK(f.op(1)(3, 4).real() == doctest::Approx(2.0 * std::sqrt(g) * std::pow(1 - g, 1.5)).epsilon(1e-13));
    CHECK(f.op(0)(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.op(0)(2, 2).real() == doctest::Approx(1 - g).epsilon(1e-14));
    CHECK(f.max_level() == 1);
}

TEST_CASE("single-jump qubit error set on four sites") {
    const ErrorSet e(qubit_ad(0.1), 4, 1);
    REQUIRE(e.size() == 5);
    const char* expected[] = {"0000", "1000", "0100", "0010", "0001"};
    for (std::size_t a = 0; a < 5; ++a) CHECK(e.label(a).str() == expected[a]);
}

TEST_CASE("one site, one jump: the bare damping pair") {
    const auto f = qubit_ad(0.2);
    const ErrorSet e(f, 1, 1);
    REQUIRE(e.size() == 2);
    CHECK(max_abs_diff(e.dense(0), f.op(0)) == 0.0);
    CHECK(max_abs_diff(e.dense(1), f.op(1)) == 0.0);
}

TEST_CASE("single-jump qutrit error set counts both levels") {
    const ErrorSet e(qudit_ad(3, 0.1), 4, 1);
    CHECK(e.size() == 9);
    for (const auto& l : e.labels()) CHECK(l.nonzero_count() <= 1);
}

TEST_CASE("error operators are tensor products of site operators") {
    const auto f = qudit_ad(3, 0.2);
    const ErrorSet e(f, 3, 2);
    for (std::size_t a = 0; a < e.size(); ++a) {
        const auto& lab = e.label(a);
        CHECK(lab.nonzero_count() <= 2);
        CMat m = f.op(lab[0]);
        for (int i = 1; i < 3; ++i) m = tensor(m, f.op(lab[i]));
        CHECK(max_abs_diff(m, e.dense(a)) == 0.0);
    }
}

TEST_CASE("sparse application agrees with the dense operator") {
    const ErrorSet e(qubit_ad(0.3), 4, 2);
    CVec v(16);
    for (std::size_t i = 0; i < 16; ++i) v[i] = cplx(std::sin(1.0 + i), std::cos(2.0 * i));
    v = v.normalized();
    const SparseVec s = SparseVec::from_dense(v);
    for (std::size_t a = 0; a < e.size(); ++a) {
        const CVec dense = e.dense(a).apply(v);
        const CVec sparse = e.apply(a, s).dense(16);
        double d = 0.0;
        for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(dense[i] - sparse[i]));
        CHECK(d < 1e-14);
    }
}

TEST_CASE("the full error set is complete") {
    CHECK(completeness_error(ErrorSet(qubit_ad(0.3), 3, 3).dense_all()) < 1e-12);
    CHECK(completeness_error(ErrorSet(qudit_ad(3, 0.2), 2, 2).dense_all()) < 1e-12);
}
