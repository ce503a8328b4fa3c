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

#ifndef MCPHASE_ESTIMATOR_H
#define MCPHASE_ESTIMATOR_H

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcphase/classifier.h"
#include "mcphase/coincidence.h"
#include "mcphase/sampler.h"

namespace mcp {

struct EstimatorOptions {
    /// Slack on the physical range of pairwise values for exact rates.
    double pairwise_tolerance = 1e-10;
    /// For counts-based rates the slack is this many standard errors.
    double sigma_multiplier = 3.0;
    /// Below this n-photon amplitude the phase is reported unrecoverable.
    double amplitude_threshold = 1e-6;
    /// Largest tolerated |arccos argument| - 1 for exact rates.
    double clamp_tolerance = 1e-8;
};

struct PairwiseEstimate {
    int a = 0;
    int b = 0;
    double chi_sum = 0;  // Σ rate over the chi subset
    double raw = 0;      // 1 - 2^{n+1}/(n-1) * chi_sum
    double value = 0;    // raw clamped to [0, 1]
    std::optional<double> stderr_raw;
};

/// rate = count / shots (discard stays in the denominator) with binomial
/// standard errors sqrt(p(1-p)/N). Throws ValidationError if shots == 0.
CoincidenceReport rates_from_counts(const CountReport &counts);

/// One pairwise overlap |<p_a, p_b>|^2 per cycle edge, from the chi subset
/// sums. Throws ValidationError if a chi configuration is missing.
std::vector<PairwiseEstimate> pairwise_overlaps(const CoincidenceReport &rates, const ConfigClassification &cls);

/// sqrt(Π r_i). Values in [-tol, 0) are treated as 0 and values above 1 as 1;
/// anything below -tol throws ValidationError.
double overlap_amplitude(std::span<const double> pairwise, double tol = 1e-10);

/// Sign s with C(η) = (1 + s par(η) |r_σ| cos ψ) / 2^{2n-1} on xi for the
/// sparse design; +1 for every n (checked against the engine in the tests).
int xi_parity_sign(size_t n);

/// Σ_{even η ∈ xi} C(η) - Σ_{odd η ∈ xi} C(η).
double xi_parity_difference(const CoincidenceReport &rates, const ConfigClassification &cls);

struct PhaseEstimate {
    double diff = 0;
    double cos_arg_raw = 0;  // before clamping to [-1, 1]
    double clamp_excess = 0;
    double phase_abs = 0;  // in [0, π]; the sign is not observable
};

/// ψ = arccos(s 2^{n-1} diff / amplitude). Throws NumericalError when the
/// amplitude is at or below the threshold or the clamp excess exceeds
/// `clamp_tolerance`.
PhaseEstimate collective_phase(const CoincidenceReport &rates, const ConfigClassification &cls, double amplitude,
                               double amplitude_threshold = 1e-6, double clamp_tolerance = 1e-8);

struct EstimateReport {
    size_t n = 0;
    bool sampled = false;
    std::optional<uint64_t> shots;
    std::vector<PairwiseEstimate> pairwise;
    double amplitude = 0;
    double diff = 0;
    double cos_arg_raw = 0;
    double clamp_excess = 0;
    double phase_abs = 0;
    std::array<double, 2> phase_candidates{};
    std::optional<double> stderr_amplitude;
    std::optional<double> stderr_diff;
    std::optional<double> stderr_phase;
};

/// The whole pipeline: pairwise overlaps, amplitude, phase and, for reports
/// carrying total_shots, delta-method standard errors from the multinomial
/// covariance of the counted rates. In sampled mode the pairwise and clamp
/// tolerances widen to sigma_multiplier standard errors.
EstimateReport estimate(const CoincidenceReport &rates, const ConfigClassification &cls,
                        const EstimatorOptions &opts = {});

struct MarginalEntry {
    OutputConfig rest;  // xi member with one port removed
    size_t edge = 0;    // output set that was traced over
    double value = 0;
};

struct GenuineReport {
    double expected = 0;  // 2 / 2^{2n-1}
    std::vector<MarginalEntry> pair_marginals;
    double max_deviation = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// For every xi member and every traced output set {a, b}, sums C(rest ∪ {a})
/// + C(rest ∪ {b}); each sum should equal 2 / 2^{2n-1} (1/2^6 at n = 4)
/// whatever the collective phase.
GenuineReport genuine_check(const CoincidenceReport &rates, const ConfigClassification &cls, double tol = 1e-12);

struct MarginalSweep {
    /// Largest spread, across the reports, of the full trace-out marginal
    /// Σ_q C(rest ∪ {q}) over every rest.
    double full_marginal_spread = 0;
    /// Same for the two-term marginals of genuine_check.
    double pair_marginal_spread = 0;
    /// Largest spread of the xi rates themselves (they do move with ψ).
    double xi_rate_spread = 0;
};

/// Compares trace-out marginals across rate reports that differ only in the
/// collective phase. Every report must contain every collision-free
/// configuration.
MarginalSweep marginal_sweep(std::span<const CoincidenceReport> reports, const ConfigClassification &cls);

}  // namespace mcp

#endif
