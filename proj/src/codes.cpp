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

#include "nsaqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace nsaqec {

namespace {

constexpr std::pair<CodeFamily, std::string_view> kFamilyNames[] = {
    {CodeFamily::LNCY, "lncy"},
    {CodeFamily::NSA_SC, "nsa-sc"},
    {CodeFamily::NONNSA_SC, "nonnsa-sc"},
    {CodeFamily::NSA_PC, "nsa-pc"},
    {CodeFamily::NSA_SC_QUDIT, "nsa-sc-qudit"},
    {CodeFamily::NONNSA_SC_QUDIT, "nonnsa-sc-qudit"},
    {CodeFamily::BINOMIAL_024, "binomial"},
    {CodeFamily::NSA_BINOMIAL_024, "nsa-binomial"},
    {CodeFamily::CUSTOM, "custom"},
};

void check_code_gamma(double gamma) {
    if (!(gamma >= 0.0) || gamma >= 1.0) throw CodeError("code gamma must lie in [0, 1)");
}

double nsa_weight(double gamma, int hamming) { return std::pow(1.0 - gamma, -0.5 * hamming); }

}  // namespace

std::string_view family_name(CodeFamily f) {
    for (const auto& [fam, name] : kFamilyNames)
        if (fam == f) return name;
    return "custom";
}

CodeFamily parse_family(std::string_view name) {
    for (const auto& [fam, n] : kFamilyNames)
        if (n == name) return fam;
    throw std::invalid_argument("unknown code family '" + std::string(name) + "'");
}

Codeword::Codeword(int n, int q, SparseVec amps) : n_(n), q_(q), amps_(std::move(amps)) {
    if (amps_.terms.empty()) throw CodeError("Codeword: empty support");
    const auto dim = hilbert_dimension(n, q);
    for (std::size_t i = 0; i < amps_.terms.size(); ++i) {
        if (amps_.terms[i].first >= dim) throw CodeError("Codeword: basis index out of range");
        if (i > 0 && amps_.terms[i].first <= amps_.terms[i - 1].first)
            throw CodeError("Codeword: terms must be sorted and unique");
    }
    const double nrm = amps_.norm();
    if (!(nrm > 0.0)) throw CodeError("Codeword: zero norm");
    amps_ *= 1.0 / nrm;
}

Codeword Codeword::from_terms(int n, int q, const std::vector<std::pair<DitString, cplx>>& terms) {
    std::map<std::uint64_t, cplx> acc;
    for (const auto& [s, a] : terms) {
        if (s.size() != n || s.q() != q) throw CodeError("Codeword: basis string shape mismatch");
        acc[s.index()] += a;
    }
    SparseVec v;
    for (const auto& [i, a] : acc)
        if (a != cplx(0.0)) v.terms.emplace_back(i, a);
    return Codeword(n, q, std::move(v));
}

std::vector<std::pair<DitString, cplx>> Codeword::terms() const {
    std::vector<std::pair<DitString, cplx>> out;
    out.reserve(amps_.terms.size());
    for (const auto& [i, a] : amps_.terms) out.emplace_back(DitString::from_index(i, n_, q_), a);
    return out;
}

cplx Codeword::amplitude(const DitString& s) const {
    const auto idx = s.index();
    auto it = std::lower_bound(amps_.terms.begin(), amps_.terms.end(), idx,
                               [](const auto& t, std::uint64_t v) { return t.first < v; });
    return (it != amps_.terms.end() && it->first == idx) ? it->second : cplx(0.0);
}

CVec Codeword::dense() const { return amps_.dense(hilbert_dimension(n_, q_)); }

double CodeSpace::k() const { return std::log(static_cast<double>(K())) / std::log(static_cast<double>(logical_q)); }

std::vector<SparseVec> CodeSpace::states() const {
    std::vector<SparseVec> out;
    out.reserve(codewords.size());
    for (const auto& c : codewords) out.push_back(c.amps());
    return out;
}

double CodeSpace::orthonormality_error() const {
    double err = 0.0;
    for (std::size_t a = 0; a < K(); ++a)
        for (std::size_t b = a; b < K(); ++b) {
            const cplx g = inner(codewords[a].amps(), codewords[b].amps());
            err = std::max(err, std::abs(g - (a == b ? cplx(1.0) : cplx(0.0))));
        }
    return err;
}

std::vector<DitString> sc_class_members(const DitString& u) {
    std::vector<DitString> out;
    out.reserve(u.q());
    for (int a = 0; a < u.q(); ++a) out.push_back(u.shifted(a));
    return out;
}

std::vector<DitString> sc_class_lowered(const DitString& u) {
    std::vector<DitString> out;
    for (const auto& m : sc_class_members(u))
        for (int i = 0; i < m.size(); ++i)
            for (int l = 1; l <= m[i]; ++l) out.push_back(m.with_digit(i, m[i] - l));
    return out;
}

namespace {

bool is_representative(const DitString& u) {
    for (const auto& m : sc_class_members(u))
        if (m < u) return false;
    return true;
}

// A class is usable alone if its members and damped images are all distinct.
bool class_self_consistent(const DitString& u) {
    auto members = sc_class_members(u);
    auto lowered = sc_class_lowered(u);
    std::set<DitString> seen(members.begin(), members.end());
    if (seen.size() != members.size()) return false;
    for (const auto& l : lowered)
        if (!seen.insert(l).second) return false;
    return true;
}

bool classes_conflict(const DitString& u, const DitString& v) {
    std::set<DitString> a;
    for (const auto& m : sc_class_members(u)) a.insert(m);
    for (const auto& l : sc_class_lowered(u)) a.insert(l);
    for (const auto& m : sc_class_members(v))
        if (a.count(m)) return true;
    for (const auto& l : sc_class_lowered(v))
        if (a.count(l)) return true;
    return false;
}

}  // namespace

std::string check_sc_basis(const SCBasisSet& basis) {
    if (basis.n < 1) return "n must be positive";
    if (basis.q < 2) return "q must be >= 2";
    if (basis.classes.empty()) return "basis set is empty";
    std::set<DitString> reps;
    for (const auto& u : basis.classes) {
        if (u.size() != basis.n || u.q() != basis.q) return "representative " + u.str() + " has the wrong shape";
        if (!is_representative(u)) return u.str() + " is not the smallest member of its class";
        if (!reps.insert(u).second) return "duplicate class " + u.str();
        if (!class_self_consistent(u)) return "class " + u.str() + " collides with itself after one damping";
    }
    for (std::size_t i = 0; i < basis.classes.size(); ++i)
        for (std::size_t j = i + 1; j < basis.classes.size(); ++j)
            if (classes_conflict(basis.classes[i], basis.classes[j]))
                return "error spaces of " + basis.classes[i].str() + " and " + basis.classes[j].str() + " overlap";
    return {};
}

SCBasisSet make_sc_basis(int n, int q, const std::vector<DitString>& reps) {
    SCBasisSet b{n, q, reps};
    std::sort(b.classes.begin(), b.classes.end());
    if (auto why = check_sc_basis(b); !why.empty()) throw CodeError("invalid SC basis: " + why);
    return b;
}

namespace {

class Bitset {
   public:
    explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
    }
    std::size_t first() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
        return words_.size() * 64;
    }
    Bitset and_not(const Bitset& o) const {
        Bitset r = *this;
        for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~o.words_[w];
        return r;
    }
    Bitset operator&(const Bitset& o) const {
        Bitset r = *this;
        for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
        return r;
    }

   private:
    std::vector<std::uint64_t> words_;
};

struct IndependentSetSearch {
    std::vector<Bitset> conflict;
    std::size_t target = 0;  // 0: maximize
    std::uint64_t node_limit = 0;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> current;
    std::vector<std::size_t> best;
    bool done = false;

    // Upper bound on an independent set inside `cand`: greedy clique cover.
    std::size_t clique_cover_bound(Bitset cand) const {
        std::size_t cliques = 0;
        while (cand.any()) {
            const std::size_t v = cand.first();
            cand.reset(v);
            Bitset clique_cand = cand & conflict[v];
            while (clique_cand.any()) {
                const std::size_t w = clique_cand.first();
                clique_cand.reset(w);
                cand.reset(w);
                clique_cand = clique_cand & conflict[w];
            }
            ++cliques;
        }
        return cliques;
    }

    void run(const Bitset& cand) {
        if (done) return;
        if (++nodes > node_limit) {
            done = true;
            return;
        }
        if (current.size() > best.size()) {
            best = current;
            if (target != 0 && best.size() >= target) {
                done = true;
                return;
            }
        }
        if (!cand.any()) return;
        if (current.size() + cand.count() <= best.size()) return;
        if (current.size() + clique_cover_bound(cand) <= best.size()) return;
        const std::size_t v = cand.first();
        current.push_back(v);
        run(cand.and_not(conflict[v]).and_not(single(v, cand)));
        current.pop_back();
        Bitset without = cand;
        without.reset(v);
        run(without);
    }

    static Bitset single(std::size_t v, const Bitset& shape) {
        Bitset b = shape.and_not(shape);
        b.set(v);
        return b;
    }
};

}  // namespace

SCBasisSet search_sc_basis(int n, int q, std::optional<int> k_target, std::uint64_t node_limit) {
    if (q == 2 && n > 10) throw std::invalid_argument("search_sc_basis: n <= 10 for qubits");
    if (q == 3 && n > 6) throw std::invalid_argument("search_sc_basis: n <= 6 for qutrits");
    if (q > 3 && hilbert_dimension(n, q) > 200'000) throw std::invalid_argument("search_sc_basis: search space too large");
    if (n < 1 || q < 2) throw std::invalid_argument("search_sc_basis: need n >= 1, q >= 2");

    std::vector<DitString> cands;
    const auto dim = hilbert_dimension(n, q);
    for (std::uint64_t i = 0; i < dim; ++i) {
        auto u = DitString::from_index(i, n, q);
        if (is_representative(u) && class_self_consistent(u)) cands.push_back(std::move(u));
    }

    // Conflict graph through the damped-image sets.
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> touched;
    for (std::size_t c = 0; c < cands.size(); ++c) {
        std::set<std::uint64_t> mine;
        for (const auto& m : sc_class_members(cands[c])) mine.insert(m.index());
        for (const auto& l : sc_class_lowered(cands[c])) mine.insert(l.index());
        for (auto idx : mine) touched[idx].push_back(c);
    }
    IndependentSetSearch search;
    search.conflict.assign(cands.size(), Bitset(cands.size()));
    for (const auto& [idx, owners] : touched)
        for (auto a : owners)
            for (auto b : owners)
                if (a != b) search.conflict[a].set(b);

    if (k_target) {
        if (*k_target < 0) throw std::invalid_argument("search_sc_basis: k_target must be >= 0");
        double t = std::pow(static_cast<double>(q), *k_target);
        if (t > static_cast<double>(cands.size())) throw CodeError("search_sc_basis: k_target infeasible");
        search.target = static_cast<std::size_t>(t);
    }
    search.node_limit = node_limit;
    Bitset all(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) all.set(i);
    search.run(all);

    if (search.target != 0 && search.best.size() < search.target)
        throw CodeError("search_sc_basis: no class set of size " + std::to_string(search.target));
    SCBasisSet out{n, q, {}};
    for (auto i : search.best) out.classes.push_back(cands[i]);
    return out;
}

namespace {

CodeSpace self_complementary(const SCBasisSet& basis, double gamma, bool adaptive, CodeFamily family) {
    check_code_gamma(gamma);
    if (auto why = check_sc_basis(basis); !why.empty()) throw CodeError("invalid SC basis: " + why);
    CodeSpace code;
    code.n = basis.n;
    code.q = basis.q;
    code.logical_q = basis.q;
    code.gamma = adaptive ? gamma : 0.0;
    code.family = family;
    for (const auto& u : basis.classes) {
        std::vector<std::pair<DitString, cplx>> terms;
        for (const auto& m : sc_class_members(u)) terms.emplace_back(m, adaptive ? nsa_weight(gamma, m.weight()) : 1.0);
        code.codewords.push_back(Codeword::from_terms(basis.n, basis.q, terms));
    }
    if (adaptive) code.gamma = gamma;
    return code;
}

}  // namespace

CodeSpace lncy_code() {
    auto code = nonnsa_sc_code(make_sc_basis(4, 2, {DitString::parse("0000", 2), DitString::parse("0011", 2)}));
    code.family = CodeFamily::LNCY;
    return code;
}

CodeSpace nsa_sc_code(const SCBasisSet& basis, double gamma) {
    if (basis.q != 2) throw CodeError("nsa_sc_code: qubit basis required");
    return self_complementary(basis, gamma, true, CodeFamily::NSA_SC);
}

CodeSpace nonnsa_sc_code(const SCBasisSet& basis) {
    if (basis.q != 2) throw CodeError("nonnsa_sc_code: qubit basis required");
    return self_complementary(basis, 0.0, false, CodeFamily::NONNSA_SC);
}

CodeSpace nsa_sc_qudit_code(const SCBasisSet& basis, double gamma) {
    return self_complementary(basis, gamma, true, CodeFamily::NSA_SC_QUDIT);
}

CodeSpace nonnsa_sc_qudit_code(const SCBasisSet& basis) {
    return self_complementary(basis, 0.0, false, CodeFamily::NONNSA_SC_QUDIT);
}

CodeSpace nsa_pc_code(const SCBasisSet& basis, double gamma) {
    check_code_gamma(gamma);
    if (basis.q != 2) throw CodeError("nsa_pc_code: qubit basis required");
    if (auto why = check_sc_basis(basis); !why.empty()) throw CodeError("invalid SC basis: " + why);
    const int n = basis.n + 2;
    const auto suffix = [](const char* s) { return DitString::parse(s, 2); };
    CodeSpace code;
    code.n = n;
    code.q = 2;
    code.logical_q = 2;
    code.gamma = gamma;
    code.family = CodeFamily::NSA_PC;
    for (const auto& u : basis.classes) {
        const DitString ut = u.complement();
        auto term = [&](const DitString& head, const char* tail, double sign) {
            DitString s = head.concat(suffix(tail));
            return std::pair<DitString, cplx>{s, sign * nsa_weight(gamma, s.weight())};
        };
        code.codewords.push_back(Codeword::from_terms(
            n, 2, {term(u, "00", 1.0), term(u, "11", 1.0), term(ut, "10", -1.0), term(ut, "01", -1.0)}));
        code.codewords.push_back(Codeword::from_terms(
            n, 2, {term(ut, "00", 1.0), term(ut, "11", 1.0), term(u, "01", 1.0), term(u, "10", 1.0)}));
    }
    return code;
}

CodeSpace binomial_code(double gamma, bool nsa, int cutoff) {
    check_code_gamma(gamma);
    if (cutoff < 5) throw CodeError("binomial_code: cutoff must hold Fock state |4>");
    CodeSpace code;
    code.n = 1;
    code.q = cutoff;
    code.logical_q = 2;
    code.gamma = nsa ? gamma : 0.0;
    code.family = nsa ? CodeFamily::NSA_BINOMIAL_024 : CodeFamily::BINOMIAL_024;
    auto fock = [cutoff](int m) { return DitString({static_cast<std::uint8_t>(m)}, cutoff); };
    const double w4 = nsa ? std::pow(1.0 - gamma, -2.0) : 1.0;
    code.codewords.push_back(Codeword::from_terms(1, cutoff, {{fock(0), 1.0}, {fock(4), w4}}));
    code.codewords.push_back(Codeword::from_terms(1, cutoff, {{fock(2), 1.0}}));
    return code;
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string code_to_json(const CodeSpace& code) {
    if (code.q > 10) throw CodeError("code_to_json: digit strings need q <= 10");
    std::ostringstream os;
    os << "{\n  \"n\": " << code.n << ",\n  \"q\": " << code.q << ",\n  \"logical_q\": " << code.logical_q
       << ",\n  \"gamma\": " << fmt17(code.gamma) << ",\n  \"family\": \"" << family_name(code.family)
       << "\",\n  \"codewords\": [";
    for (std::size_t c = 0; c < code.K(); ++c) {
        os << (c ? ",\n    [" : "\n    [");
        const auto terms = code.codewords[c].terms();
        for (std::size_t t = 0; t < terms.size(); ++t) {
            os << (t ? ", " : "") << "[\"" << terms[t].first.str() << "\", " << fmt17(terms[t].second.real()) << ", "
               << fmt17(terms[t].second.imag()) << "]";
        }
        os << "]";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

CodeSpace code_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CodeError(std::string("code_from_json: ") + e.what());
    }
    try {
        CodeSpace code;
        code.n = j.at("n").get<int>();
        code.q = j.at("q").get<int>();
        code.logical_q = j.value("logical_q", code.q);
        code.gamma = j.at("gamma").get<double>();
        code.family = parse_family(j.at("family").get<std::string>());
        for (const auto& cw : j.at("codewords")) {
            std::vector<std::pair<DitString, cplx>> terms;
            for (const auto& t : cw) {
                auto s = DitString::parse(t.at(0).get<std::string>(), code.q);
                terms.emplace_back(s, cplx(t.at(1).get<double>(), t.at(2).get<double>()));
            }
            code.codewords.push_back(Codeword::from_terms(code.n, code.q, terms));
        }
        if (code.codewords.empty()) throw CodeError("code_from_json: no codewords");
        return code;
    } catch (const nlohmann::json::exception& e) {
        throw CodeError(std::string("code_from_json: ") + e.what());
    }
}

}  // namespace nsaqec
