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
#include "nsaqec/noise.hpp"
#include "nsaqec/tensor.hpp"

using namespace nsaqec;

namespace {

CMat random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

CMat random_density(std::size_t d, std::mt19937_64& rng) {
    CMat a = random_matrix(d, d, rng);
    CMat rho = a * a.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

}  // namespace

TEST_CASE("tensor of identities") {
    CHECK(max_abs_diff(tensor(CMat::identity(2), CMat::identity(2)), CMat::identity(4)) == 0.0);
}

TEST_CASE("tensor with a 1x1 identity is a no-op") {
    std::mt19937_64 rng(1);
    const CMat a = random_matrix(3, 2, rng);
    CHECK(max_abs_diff(tensor(a, CMat::identity(1)), a) == 0.0);
    CHECK(max_abs_diff(tensor(CMat::identity(1), a), a) == 0.0);
}

TEST_CASE("tensor of damping operators, first factor leftmost") {
    const auto fam = qubit_ad(0.1);
    const CMat no_jump_then_jump = tensor(fam.op(0), fam.op(1));
    CHECK(no_jump_then_jump(0, 1).real() == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
    CHECK(no_jump_then_jump(2, 3).real() == doctest::Approx(std::sqrt(0.9 * 0.1)).epsilon(1e-14));
    const CMat jump_then_no_jump = tensor(fam.op(1), fam.op(0));
    CHECK(jump_then_no_jump(0, 2).real() == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
    CHECK(jump_then_no_jump(1, 3).real() == doctest::Approx(std::sqrt(0.9 * 0.1)).epsilon(1e-14));
    int nonzero = 0;
    for (auto v : jump_then_no_jump.data()) nonzero += std::abs(v) > 0.0;
    CHECK(nonzero == 2);
}

TEST_CASE("tensor is associative") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> small(-4, 4);
    auto integral = [&](std::size_t r, std::size_t c) {
        CMat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(small(rng), small(rng));
        return m;
    };
    const CMat a = integral(2, 2), b = integral(3, 2), c = integral(2, 3);
    CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) == 0.0);
    const CMat x = random_matrix(2, 2, rng), y = random_matrix(3, 2, rng), z = random_matrix(2, 3, rng);
    CHECK(max_abs_diff(tensor(tensor(x, y), z), tensor(x, tensor(y, z))) < 1e-14);
}

TEST_CASE("tensor refuses dimensions past the cap") {
    CHECK_THROWS_AS(tensor(CMat::identity(64), CMat::identity(128)), DimensionError);
}

TEST_CASE("damping at full strength moves |1> to |0>") {
    CMat rho(2, 2);
    rho(1, 1) = 1.0;
    const auto k = qubit_ad(1.0).matrices();
    const CMat out = apply_channel(k, rho);
    CHECK(std::abs(out(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(out(1, 1)) < 1e-15);
}

TEST_CASE("damping at gamma 0.25 on |1>") {
    CMat rho(2, 2);
    rho(1, 1) = 1.0;
    const auto k = qubit_ad(0.25).matrices();
    const CMat out = apply_channel(k, rho);
    CHECK(out(0, 0).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(out(1, 1).real() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(std::abs(out(0, 1)) < 1e-15);
}

TEST_CASE("complete channels preserve trace, and channels are linear") {
    std::mt19937_64 rng(3);
    const auto k = ErrorSet(qubit_ad(0.3), 3, 3).dense_all();
    for (int t = 0; t < 5; ++t) {
        const CMat rho = random_density(8, rng);
        CHECK(std::abs(apply_channel(k, rho).trace() - rho.trace()) < 1e-12);
    }
    const CMat r1 = random_matrix(8, 8, rng), r2 = random_matrix(8, 8, rng);
    const cplx s(0.3, -1.2);
    const CMat lhs = apply_channel(k, r1 + s * r2);
    const CMat rhs = apply_channel(k, r1) + s * apply_channel(k, r2);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("projector of a single vector is its outer product") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    CVec v(5);
    for (std::size_t i = 0; i < 5; ++i) v[i] = cplx(g(rng), g(rng));
    v = v.normalized();
    const CVec vs[] = {v};
    CHECK(max_abs_diff(projector_from_vectors(vs), CMat::outer(v, v)) < 1e-12);
}

TEST_CASE("projector of two orthonormal vectors has trace 2 and is idempotent") {
    CVec w(4);
    w[0] = 1.0;
    w[3] = cplx(0.0, 1.0);
    const CVec vs[] = {CVec::basis(4, 1), w.normalized()};
    const CMat p = projector_from_vectors(vs);
    CHECK(std::abs(p.trace() - 2.0) < 1e-12);
    CHECK(max_abs_diff(p * p, p) < 1e-12);
    CHECK(is_hermitian(p, 1e-12));
}

TEST_CASE("symmetric pair-sector projector from its two spanning vectors") {
    auto ket = [](std::initializer_list<std::pair<const char*, double>> terms) {
        CVec v(16);
        for (auto [s, a] : terms) v[DitString::parse(s, 2).index()] += a;
        return v;
    };
    const CVec s0 = ket({{"0001", 1}, {"0010", 1}, {"1100", -2}});
    const CVec s1 = ket({{"1101", 1}, {"1110", 1}, {"0000", 2}});
    CMat printed = (1.0 / 6.0) * CMat::outer(s0, s0);
    printed += (1.0 / 6.0) * CMat::outer(s1, s1);
    const CVec vs[] = {s0, s1};
    const CMat p = projector_from_vectors(vs);
    CHECK(max_abs_diff(p, printed) < 1e-12);
    CHECK(max_abs_diff(p * p, p) < 1e-12);
}

TEST_CASE("dependent vectors are rejected") {
    const CVec a = CVec::basis(3, 0), b = CVec::basis(3, 1);
    CVec c(3);
    c[0] = 1.0;
    c[1] = 2.0;
    const CVec vs[] = {a, b, c};
    CHECK_THROWS_AS(projector_from_vectors(vs), RankError);
    CHECK(orthonormal_basis(vs).size() == 2);
}

TEST_CASE("hermitian eigen decomposition reconstructs the matrix") {
    std::mt19937_64 rng(5);
    const CMat a = random_matrix(6, 6, rng);
    const CMat h = a + a.adjoint();
    const auto e = hermitian_eigen(h);
    for (std::size_t i = 1; i < e.values.size(); ++i) CHECK(e.values[i] >= e.values[i - 1]);
    CMat d(6, 6);
    for (std::size_t i = 0; i < 6; ++i) d(i, i) = e.values[i];
    CHECK(max_abs_diff(e.vectors * d * e.vectors.adjoint(), h) < 1e-10);
}

TEST_CASE("dit strings") {
    const DitString s = DitString::parse("0120", 3);
    CHECK(s.index() == 0 * 27 + 1 * 9 + 2 * 3 + 0);
    CHECK(DitString::from_index(s.index(), 4, 3) == s);
    CHECK(s.weight() == 3);
    CHECK(s.nonzero_count() == 2);
    CHECK(s.complement().str() == "2102");
    CHECK(s.shifted(1).str() == "1201");
    CHECK(DitString::parse("0110", 2).complement().str() == "1001");
    CHECK_THROWS(DitString::parse("013", 3));
    CHECK(hilbert_dimension(4, 3) == 81);
    CHECK_THROWS(hilbert_dimension(80, 7));
}

TEST_CASE("sparse vectors") {
    CVec v(8);
    v[1] = cplx(0.6, 0);
    v[6] = cplx(0, 0.8);
    const SparseVec s = SparseVec::from_dense(v);
    REQUIRE(s.terms.size() == 2);
    CHECK(s.norm() == doctest::Approx(1.0));
    CHECK(max_abs_diff(CMat::outer(s.dense(8), s.dense(8)), CMat::outer(v, v)) == 0.0);
    const SparseVec t = axpy(s, -1.0, s);
    CHECK(t.norm() < 1e-15);
    CHECK(std::abs(inner(s, s) - 1.0) < 1e-15);
}
