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

#include "nsaqec/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace nsaqec {

CVec CVec::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis index out of range");
    CVec v(dim);
    v[index] = 1.0;
    return v;
}

double CVec::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

CVec CVec::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("cannot normalize a zero vector");
    CVec out = *this;
    for (auto& a : out.amps_) a /= n;
    return out;
}

cplx inner(const CVec& a, const CVec& b) {
    if (a.dim() != b.dim()) throw DimensionError("inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

CMat CMat::identity(std::size_t dim) {
    CMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::outer(const CVec& ket, const CVec& bra) {
    CMat m(ket.dim(), bra.dim());
    for (std::size_t r = 0; r < ket.dim(); ++r)
        for (std::size_t c = 0; c < bra.dim(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
    return m;
}

CMat CMat::adjoint() const {
    CMat m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

cplx CMat::trace() const {
    if (rows_ != cols_) throw DimensionError("trace of a non-square matrix");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
}

CVec CMat::apply(const CVec& v) const {
    if (v.dim() != cols_) throw DimensionError("apply: dimension mismatch");
    CVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

CMat& CMat::operator+=(const CMat& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("+=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("-=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: shape mismatch");
    CMat m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx x = a(r, k);
            if (x == cplx(0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) += x * b(k, c);
        }
    return m;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cplx s, CMat a) { return a *= s; }

double max_abs_diff(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_hermitian(const CMat& m, double tol) {
    return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

CMat tensor(const CMat& a, const CMat& b, std::size_t cap) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > cap || cols > cap)
        throw DimensionError("tensor: dimension " + std::to_string(std::max(rows, cols)) + " exceeds cap " +
                             std::to_string(cap));
    CMat m(rows, cols);
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx x = a(ar, ac);
            if (x == cplx(0.0)) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    m(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
    return m;
}

CMat apply_channel(std::span<const CMat> kraus, const CMat& rho) {
    if (rho.rows() != rho.cols()) throw DimensionError("apply_channel: rho must be square");
    CMat out(rho.rows(), rho.cols());
    for (const auto& e : kraus) {
        if (e.cols() != rho.rows() || e.rows() != rho.rows())
            throw DimensionError("apply_channel: Kraus operator does not match rho");
        out += e * rho * e.adjoint();
    }
    return out;
}

CMat kraus_completeness(std::span<const CMat> kraus) {
    if (kraus.empty()) throw std::invalid_argument("kraus_completeness: empty family");
    CMat s(kraus.front().cols(), kraus.front().cols());
    for (const auto& e : kraus) s += e.adjoint() * e;
    return s;
}

namespace {

// Pivoted Gram-Schmidt. Returns the orthonormal set and the number of dropped vectors.
std::pair<std::vector<CVec>, std::size_t> pivoted_gram_schmidt(std::span<const CVec> vs, double rank_tol) {
    std::vector<CVec> work(vs.begin(), vs.end());
    double scale = 0.0;
    for (const auto& v : work) scale = std::max(scale, v.norm());
    std::vector<CVec> basis;
    std::vector<bool> used(work.size(), false);
    for (std::size_t step = 0; step < work.size(); ++step) {
        std::size_t best = work.size();
        double best_norm = -1.0;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            const double nrm = work[i].norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                best = i;
            }
        }
        if (best_norm <= rank_tol * scale || best_norm == 0.0) break;
        used[best] = true;
        CVec q = work[best].normalized();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            const cplx c = inner(q, work[i]);
            for (std::size_t j = 0; j < q.dim(); ++j) work[i][j] -= c * q[j];
        }
        basis.push_back(std::move(q));
    }
    return {basis, vs.size() - basis.size()};
}

}  // namespace

std::vector<CVec> orthonormal_basis(std::span<const CVec> vs, double rank_tol) {
    return pivoted_gram_schmidt(vs, rank_tol).first;
}

CMat projector_from_vectors(std::span<const CVec> vs, double rank_tol) {
    if (vs.empty()) throw std::invalid_argument("projector_from_vectors: no vectors");
    const std::size_t dim = vs.front().dim();
    for (const auto& v : vs)
        if (v.dim() != dim) throw DimensionError("projector_from_vectors: dimension mismatch");
    auto [basis, dropped] = pivoted_gram_schmidt(vs, rank_tol);
    if (dropped != 0) throw RankError("projector_from_vectors: vectors are linearly dependent");
    CMat p(dim, dim);
    for (const auto& q : basis) p += CMat::outer(q, q);
    return p;
}

HermitianEigen hermitian_eigen(const CMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: matrix must be square");
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) a(r, c) = m(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: solver failed");
    HermitianEigen out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.vectors = CMat(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) out.vectors(r, c) = solver.eigenvectors()(r, c);
    return out;
}

DitString::DitString(std::vector<std::uint8_t> digits, int q) : digits_(std::move(digits)), q_(q) {
    if (q < 2 || q > 255) throw std::invalid_argument("DitString: local dimension must be in [2, 255]");
    for (auto d : digits_)
        if (d >= q) throw std::invalid_argument("DitString: digit out of range");
}

DitString DitString::parse(std::string_view text, int q) {
    std::vector<std::uint8_t> digits;
    digits.reserve(text.size());
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("DitString::parse: non-digit character");
        digits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return DitString(std::move(digits), q);
}

DitString DitString::from_index(std::uint64_t index, int n, int q) {
    std::vector<std::uint8_t> digits(n);
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = static_cast<std::uint8_t>(index % q);
        index /= q;
    }
    if (index != 0) throw std::invalid_argument("DitString::from_index: index out of range");
    return DitString(std::move(digits), q);
}

int DitString::weight() const {
    int w = 0;
    for (auto d : digits_) w += d;
    return w;
}

int DitString::nonzero_count() const {
    return static_cast<int>(std::count_if(digits_.begin(), digits_.end(), [](auto d) { return d != 0; }));
}

std::uint64_t DitString::index() const {
    std::uint64_t idx = 0;
    for (auto d : digits_) idx = idx * q_ + d;
    return idx;
}

std::string DitString::str() const {
    std::string s;
    s.reserve(digits_.size());
    for (auto d : digits_) s.push_back(static_cast<char>('0' + d));
    return s;
}

DitString DitString::complement() const {
    auto d = digits_;
    for (auto& x : d) x = static_cast<std::uint8_t>(q_ - 1 - x);
    return DitString(std::move(d), q_);
}

DitString DitString::shifted(int a) const {
    auto d = digits_;
    for (auto& x : d) x = static_cast<std::uint8_t>((x + a) % q_);
    return DitString(std::move(d), q_);
}

DitString DitString::with_digit(int site, int value) const {
    auto d = digits_;
    d.at(site) = static_cast<std::uint8_t>(value);
    return DitString(std::move(d), q_);
}

DitString DitString::concat(const DitString& tail) const {
    if (tail.q_ != q_) throw std::invalid_argument("DitString::concat: alphabet mismatch");
    auto d = digits_;
    d.insert(d.end(), tail.digits_.begin(), tail.digits_.end());
    return DitString(std::move(d), q_);
}

std::uint64_t hilbert_dimension(int n, int q) {
    std::uint64_t dim = 1;
    for (int i = 0; i < n; ++i) {
        if (dim > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(q))
            throw DimensionError("hilbert_dimension: overflow");
        dim *= static_cast<std::uint64_t>(q);
    }
    return dim;
}

double SparseVec::norm() const {
    double s = 0.0;
    for (const auto& [i, a] : terms) s += std::norm(a);
    return std::sqrt(s);
}

SparseVec& SparseVec::operator*=(cplx s) {
    for (auto& t : terms) t.second *= s;
    return *this;
}

CVec SparseVec::dense(std::uint64_t dim) const {
    CVec v(dim);
    for (const auto& [i, a] : terms) {
        if (i >= dim) throw DimensionError("SparseVec::dense: index out of range");
        v[i] = a;
    }
    return v;
}

SparseVec SparseVec::from_dense(const CVec& v, double drop_below) {
    SparseVec s;
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (std::abs(v[i]) > drop_below || (drop_below == 0.0 && v[i] != cplx(0.0))) s.terms.emplace_back(i, v[i]);
    return s;
}

cplx inner(const SparseVec& a, const SparseVec& b) {
    cplx s = 0.0;
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    while (ia != a.terms.end() && ib != b.terms.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            s += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return s;
}

SparseVec axpy(const SparseVec& a, cplx s, const SparseVec& b) {
    SparseVec out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    while (ia != a.terms.end() || ib != b.terms.end()) {
        if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
            out.terms.push_back(*ia++);
        } else if (ia == a.terms.end() || ib->first < ia->first) {
            out.terms.emplace_back(ib->first, s * ib->second);
            ++ib;
        } else {
            out.terms.emplace_back(ia->first, ia->second + s * ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

}  // namespace nsaqec
