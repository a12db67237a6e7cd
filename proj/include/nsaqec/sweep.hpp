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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nsaqec/codes.hpp"
#include "nsaqec/fit.hpp"

namespace nsaqec {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A family plus its size. k < 0 selects the largest basis the search finds.
/// Text form: name[:n=N][:k=K][:q=Q], e.g. "nsa-pc:n=6" or "nsa-sc-qudit:n=4:q=3".
struct FamilySpec {
    CodeFamily family = CodeFamily::NSA_SC;
    int n = 4;
    int k = -1;
    int q = 2;

    std::string label() const;
    static FamilySpec parse(std::string_view text);
    static FamilySpec defaults(CodeFamily f);
};

/// Builds family codes at any gamma, caching basis searches.
class CodeFactory {
   public:
    CodeSpace build(const FamilySpec& spec, double gamma);
    const SCBasisSet& basis(int n, int q, int k);

   private:
    std::map<std::tuple<int, int, int>, SCBasisSet> cache_;
};

struct SweepConfig {
    std::vector<double> gamma_grid;
    std::vector<FamilySpec> families;
    std::optional<double> frozen_gamma0;
    std::string out;  // empty: stdout
    std::uint64_t seed = 0;
    double window_lo = 1e-3;
    double window_hi = 0.017782794100389229;  // 10^-1.75
    std::size_t oracle_states = 200;
    unsigned threads = 0;  // 0: hardware concurrency

    /// Throws ConfigError when the grid or window is unusable.
    void validate() const;
};

/// 40 log-spaced points from 1e-3 to 10^-0.5; LNCY, NSA SC and NSA PC at n = 4.
SweepConfig default_sweep_config();

struct LossRow {
    double gamma;
    std::string family;
    double l1;
    double l2;
};

struct FidelityRow {
    double gamma;
    std::string family;
    int n;
    double k;
    int q;
    double f_plan;
    double f_oracle;
    std::optional<double> f_closed;
};

/// Adaptive families at every grid gamma; with frozen_gamma0 set, codes built at
/// gamma0 are also evaluated on the grid (label suffix "@frozen") and gamma0 is
/// added to the grid.
std::vector<LossRow> sweep_loss(const SweepConfig& cfg);
std::vector<FidelityRow> sweep_fidelity(const SweepConfig& cfg);

std::string loss_csv(const std::vector<LossRow>& rows);
std::string fidelity_csv(const std::vector<FidelityRow>& rows);

/// One power-law fit of l1 against gamma per family label.
std::vector<FitReport> fit_loss_rows(const std::vector<LossRow>& rows, double lo, double hi);

/// Kink indices (into the rows of `family`) for one label.
KinkReport kink_report(const std::vector<LossRow>& rows, const std::string& family, const KinkOptions& opt = {});

/// Effective grid after inserting gamma0.
std::vector<double> effective_grid(const SweepConfig& cfg);

/// Runs f(i) for i in [0, count) on a small thread pool.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f);

}  // namespace nsaqec
