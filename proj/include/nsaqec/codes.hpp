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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsaqec/tensor.hpp"

namespace nsaqec {

enum class CodeFamily {
    LNCY,
    NSA_SC,
    NONNSA_SC,
    NSA_PC,
    NSA_SC_QUDIT,
    NONNSA_SC_QUDIT,
    BINOMIAL_024,
    NSA_BINOMIAL_024,
    CUSTOM,
};

std::string_view family_name(CodeFamily f);
CodeFamily parse_family(std::string_view name);

struct CodeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One logical basis vector, stored sparsely in the computational basis.
class Codeword {
   public:
    Codeword(int n, int q, SparseVec amps);
    /// Builds from (basis string, amplitude) terms; duplicates are summed, result normalized.
    static Codeword from_terms(int n, int q, const std::vector<std::pair<DitString, cplx>>& terms);

    int n() const { return n_; }
    int q() const { return q_; }
    const SparseVec& amps() const { return amps_; }
    std::vector<std::pair<DitString, cplx>> terms() const;
    cplx amplitude(const DitString& s) const;
    CVec dense() const;

   private:
    int n_;
    int q_;
    SparseVec amps_;
};

/// Ordered orthonormal codewords plus metadata. K = codewords.size().
struct CodeSpace {
    std::vector<Codeword> codewords;
    int n = 0;
    int q = 2;
    int logical_q = 2;
    double gamma = 0.0;
    CodeFamily family = CodeFamily::CUSTOM;

    std::size_t K() const { return codewords.size(); }
    /// log_{logical_q} K; integral for the built-in families except maximal SC sets.
    double k() const;
    std::uint64_t dim() const { return hilbert_dimension(n, q); }
    std::vector<SparseVec> states() const;
    /// Largest |<a|b> - delta_ab| over codeword pairs.
    double orthonormality_error() const;
};

/// Representatives of complement (q = 2) or shift (q > 2) classes.
/// Each representative is the lexicographically smallest member of its class.
struct SCBasisSet {
    int n = 0;
    int q = 2;
    std::vector<DitString> classes;
};

/// Class members {u^(+a) : a = 0..q-1}; for q = 2 these are u and its complement.
std::vector<DitString> sc_class_members(const DitString& u);
/// Every u - l e_i with u_i >= l over all class members, sites and levels l >= 1.
std::vector<DitString> sc_class_lowered(const DitString& u);

/// Validates closure, representative form and the no-overlap condition.
/// Returns an empty string when valid, otherwise the reason.
std::string check_sc_basis(const SCBasisSet& basis);
SCBasisSet make_sc_basis(int n, int q, const std::vector<DitString>& reps);

/// Largest (or q^k_target-sized) valid class set. Exhaustive branch and bound
/// over classes in lexicographic order; ties go to the lexicographically first set.
/// `node_limit` bounds the search; the best set found is returned if it is hit.
SCBasisSet search_sc_basis(int n, int q, std::optional<int> k_target = std::nullopt,
                           std::uint64_t node_limit = 50'000'000);

CodeSpace lncy_code();
CodeSpace nsa_sc_code(const SCBasisSet& basis, double gamma);
CodeSpace nonnsa_sc_code(const SCBasisSet& basis);
CodeSpace nsa_sc_qudit_code(const SCBasisSet& basis, double gamma);
CodeSpace nonnsa_sc_qudit_code(const SCBasisSet& basis);
/// From an (m, k) SC basis, the (m+2, k+1) pair-complementary code:
///   psi_u  ~ |u00> + |u11> - |~u10> - |~u01>
///   psi'_u ~ |~u00> + |~u11> + |u01> + |u10>
/// with (1-g)^(-|s|/2) on every basis string s.
CodeSpace nsa_pc_code(const SCBasisSet& basis, double gamma);
/// 0-2-4 code on a Fock space with `cutoff` levels; |1> = |2>.
CodeSpace binomial_code(double gamma, bool nsa, int cutoff = 6);

/// Codeword file: {n, q, gamma, family, codewords: [[[ditstring, re, im], ...], ...]}.
std::string code_to_json(const CodeSpace& code);
CodeSpace code_from_json(std::string_view text);

}  // namespace nsaqec
