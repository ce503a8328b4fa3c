// Copyright 2026 The mcphase Authors
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

#ifndef MCPHASE_COINCIDENCE_H
#define MCPHASE_COINCIDENCE_H

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcphase/photon_model.h"

namespace mcp {

/// A certified m x m unitary. Rows are output modes, columns input modes.
class ScatteringMatrix {
   public:
    size_t modes() const { return static_cast<size_t>(u_.rows()); }
    /// 0-based (row = output, col = input).
    Complex operator()(size_t out, size_t in) const { return u_(out, in); }
    const ComplexMatrix &matrix() const { return u_; }

   private:
    explicit ScatteringMatrix(ComplexMatrix u) : u_(std::move(u)) {}
    ComplexMatrix u_;
    friend ScatteringMatrix validate_unitary(const ComplexMatrix &m, double tol);
};

struct UnitarityDefect {
    double max_deviation = 0;
    size_t row = 0;  // 0-based location in U^dagger U - I
    size_t col = 0;
};

/// max_ij |(M^dagger M - I)_ij| and where it occurs.
UnitarityDefect unitarity_defect(const ComplexMatrix &m);

/// Certifies `m`. Throws ValidationError if it is not square or its defect
/// exceeds `tol`; the message names the worst entry.
ScatteringMatrix validate_unitary(const ComplexMatrix &m, double tol = 1e-10);

/// Which input port (1-based) receives each photon; at most one photon per
/// port.
class InputConfig {
   public:
    explicit InputConfig(std::vector<int> ports);
    size_t photons() const { return ports_.size(); }
    const std::vector<int> &ports() const { return ports_; }
    int operator[](size_t photon) const { return ports_[photon]; }
    /// Throws ValidationError if any port exceeds m.
    void check_modes(size_t m) const;
    bool operator==(const InputConfig &) const = default;

   private:
    std::vector<int> ports_;
};

/// Collision-free output configuration, stored as strictly increasing 1-based
/// ports. Construction sorts; repeated ports are rejected.
class OutputConfig {
   public:
    OutputConfig() = default;
    explicit OutputConfig(std::vector<int> ports);
    size_t size() const { return ports_.size(); }
    const std::vector<int> &ports() const { return ports_; }
    int operator[](size_t k) const { return ports_[k]; }
    bool contains(int port) const;
    /// Comma-joined ports, e.g. "1,2,7,8".
    std::string key() const;
    static OutputConfig parse(const std::string &key);

    auto operator<=>(const OutputConfig &) const = default;

   private:
    std::vector<int> ports_;
};

/// Every collision-free configuration of n photons over m modes, in
/// lexicographic order.
std::vector<OutputConfig> collision_free_configs(size_t m, size_t n);

struct RateEntry {
    double rate = 0;
    /// |Im| of the accumulated sum before clamping (exact reports).
    double im_residual = 0;
    /// Binomial standard error (reports derived from counts).
    std::optional<double> stderr_rate;
};

/// Absolute probabilities for a set of collision-free configurations; whatever
/// is not listed (collision outputs, and unlisted configurations of a partial
/// report) is aggregated in discard_mass.
struct CoincidenceReport {
    size_t photons = 0;
    size_t modes = 0;
    std::map<OutputConfig, RateEntry> rates;
    double discard_mass = 0;
    std::optional<uint64_t> total_shots;

    double rate(const OutputConfig &eta) const;
    /// Throws ValidationError if `eta` is absent.
    const RateEntry &at(const OutputConfig &eta) const;
    double total_rate() const;
};

struct EngineOptions {
    /// Entries of U[eta, v] with modulus at or below this are structural zeros.
    double support_threshold = 1e-14;
    /// Largest tolerated |Im| of an accumulated rate.
    double imag_tolerance = 1e-10;
    /// all_rates refuses more photons than this.
    size_t max_photons = 8;
    /// Worker threads for all_rates; 0 = hardware concurrency.
    unsigned threads = 0;
};

struct RateResult {
    double rate = 0;  // clamped to >= 0
    double raw_real = 0;
    double im_residual = 0;
};

/// Exact coincidence rate of a collision-free output configuration,
///
///   C = Σ_{τ,τ'} conj(u_τ) u_τ' Π_k G[a_τ(k)][a_τ'(k)],
///
/// where τ assigns photons to the ports of eta, u_τ = Π_i U[eta_τ(i)][v_i] and
/// a_τ(k) is the photon at the k-th port. Grouping by σ = τ^-1 τ' gives
/// Σ_σ r_σ Σ_τ conj(u_τ) u_{τσ}. Only assignments with every amplitude above
/// the support threshold are enumerated, so sparse interferometers cost far
/// less than (n!)^2. Summation order is fixed and compensated.
///
/// Throws ValidationError on size mismatches or out-of-range ports and
/// NumericalError if the imaginary residual exceeds the tolerance.
RateResult coincidence_rate_detailed(const ScatteringMatrix &u, const GramMatrix &g, const InputConfig &v,
                                     const OutputConfig &eta, const EngineOptions &opts = {});

double coincidence_rate(const ScatteringMatrix &u, const GramMatrix &g, const InputConfig &v,
                        const OutputConfig &eta, const EngineOptions &opts = {});

/// Same sum with an arbitrary overlap functional r(σ) in place of the Gram
/// product; used to isolate individual permutation terms. The returned value
/// is not clamped and may be complex.
Complex coincidence_sum_with(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta,
                             const std::function<Complex(const Permutation &)> &overlap,
                             const EngineOptions &opts = {});

/// Interference weight of one photon permutation σ: Σ_τ conj(u_τ) u_{τσ}.
Complex permutation_weight(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta,
                           const Permutation &sigma, const EngineOptions &opts = {});

/// Rates for every collision-free configuration. Configurations are evaluated
/// in parallel; each value and the discard total are independent of the
/// thread count.
CoincidenceReport all_rates(const ScatteringMatrix &u, const GramMatrix &g, const InputConfig &v,
                            const EngineOptions &opts = {});

/// |perm(U[eta, v])|^2, the rate for perfectly indistinguishable photons.
double indistinguishable_oracle(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta);
/// perm(|U[eta, v]|^2), the rate for perfectly distinguishable photons.
double distinguishable_oracle(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta);

/// Submatrix M[k][i] = U[eta_k][v_i] (rows follow eta, columns follow photons).
ComplexMatrix transfer_submatrix(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta);

}  // namespace mcp

#endif
