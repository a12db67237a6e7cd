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

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsaqec {

using cplx = std::complex<double>;

/// Largest Hilbert-space dimension any dense object may reach.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex column vector.
class CVec {
   public:
    CVec() = default;
    explicit CVec(std::size_t dim) : amps_(dim) {}
    explicit CVec(std::vector<cplx> amps) : amps_(std::move(amps)) {}

    static CVec basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    std::span<const cplx> amps() const { return amps_; }
    std::span<cplx> amps() { return amps_; }

    double norm() const;
    CVec normalized() const;

   private:
    std::vector<cplx> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
cplx inner(const CVec& a, const CVec& b);

/// Dense complex matrix, row-major.
class CMat {
   public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t dim);
    static CMat outer(const CVec& ket, const CVec& bra);  // |ket><bra|

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const cplx> data() const { return data_; }

    CMat adjoint() const;
    cplx trace() const;
    CVec apply(const CVec& v) const;

    CMat& operator+=(const CMat& other);
    CMat& operator-=(const CMat& other);
    CMat& operator*=(cplx s);

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cplx s, CMat a);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const CMat& a, const CMat& b);
bool is_hermitian(const CMat& m, double tol);

/// Kronecker product a (x) b. Throws DimensionError past `cap`.
CMat tensor(const CMat& a, const CMat& b, std::size_t cap = kDefaultDimensionCap);

/// sum_a E_a rho E_a^dagger.
CMat apply_channel(std::span<const CMat> kraus, const CMat& rho);

/// sum_a E_a^dagger E_a.
CMat kraus_completeness(std::span<const CMat> kraus);

/// Orthogonal projector onto span(vs), via pivoted Gram-Schmidt.
/// Throws RankError if any vector is dependent on the others (relative tolerance).
CMat projector_from_vectors(std::span<const CVec> vs, double rank_tol = 1e-9);

/// Orthonormal basis of span(vs), pivoted Gram-Schmidt; dependent vectors dropped.
std::vector<CVec> orthonormal_basis(std::span<const CVec> vs, double rank_tol = 1e-9);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    CMat vectors;                // column j is the eigenvector for values[j]
};
HermitianEigen hermitian_eigen(const CMat& m);

/// Length-n label over {0..q-1}; digit 0 is the leftmost tensor factor.
class DitString {
   public:
    DitString() = default;
    DitString(std::vector<std::uint8_t> digits, int q);

    static DitString parse(std::string_view text, int q);
    static DitString from_index(std::uint64_t index, int n, int q);
    static DitString zeros(int n, int q) { return DitString(std::vector<std::uint8_t>(n, 0), q); }

    int q() const { return q_; }
    int size() const { return static_cast<int>(digits_.size()); }
    int operator[](int i) const { return digits_[i]; }
    std::span<const std::uint8_t> digits() const { return digits_; }

    /// Sum of digits; the bit count for q = 2.
    int weight() const;
    int nonzero_count() const;
    std::uint64_t index() const;
    std::string str() const;

    /// Digit-wise q-1-d; for q = 2 the bitwise complement.
    DitString complement() const;
    /// (u + a*1^n) mod q at every site.
    DitString shifted(int a) const;
    DitString with_digit(int site, int value) const;
    DitString concat(const DitString& tail) const;

    friend bool operator==(const DitString&, const DitString&) = default;
    friend auto operator<=>(const DitString& a, const DitString& b) {
        return a.digits_ <=> b.digits_;
    }

   private:
    std::vector<std::uint8_t> digits_;
    int q_ = 2;
};

/// q^n with overflow detection.
std::uint64_t hilbert_dimension(int n, int q);

/// Sparse state: (basis index, amplitude) pairs sorted by index, no duplicates.
struct SparseVec {
    std::vector<std::pair<std::uint64_t, cplx>> terms;

    double norm() const;
    SparseVec& operator*=(cplx s);
    CVec dense(std::uint64_t dim) const;
    static SparseVec from_dense(const CVec& v, double drop_below = 0.0);
};

cplx inner(const SparseVec& a, const SparseVec& b);
/// a + s*b.
SparseVec axpy(const SparseVec& a, cplx s, const SparseVec& b);

}  // namespace nsaqec
