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

#include "mcphase/estimator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "mcphase/errors.h"

namespace mcp {

namespace {

double chi_scale(size_t n) {
    return std::ldexp(1.0, static_cast<int>(n) + 1) / static_cast<double>(n - 1);
}

/// Variance of Σ_η w(η) p̂(η) under the multinomial model with N shots,
/// using the observed frequencies as plug-in probabilities.
double linear_statistic_variance(const CoincidenceReport &rates, const std::map<OutputConfig, double> &weights,
                                 uint64_t shots) {
    double mean = 0, second = 0;
    for (const auto &[eta, w] : weights) {
        const double p = rates.rate(eta);
        mean += w * p;
        second += w * w * p;
    }
    return std::max(0.0, second - mean * mean) / static_cast<double>(shots);
}

void check_classification(const ConfigClassification &cls) {
    if (cls.n < 3 || cls.chi.size() != cls.n || cls.layout.edges.size() != cls.n) {
        throw ValidationError("classification does not describe an n-cycle design with n >= 3");
    }
}

}  // namespace

CoincidenceReport rates_from_counts(const CountReport &counts) {
    if (counts.shots == 0) {
        throw ValidationError("counts report has zero shots");
    }
    CoincidenceReport r;
    const double total = static_cast<double>(counts.shots);
    uint64_t seen = counts.discard;
    for (const auto &[eta, k] : counts.counts) {
        const double p = static_cast<double>(k) / total;
        r.rates.emplace(eta, RateEntry{p, 0.0, std::sqrt(p * (1 - p) / total)});
        r.photons = eta.size();
        r.modes = std::max(r.modes, static_cast<size_t>(eta.ports().back()));
        seen += k;
    }
    if (seen != counts.shots) {
        throw ValidationError("counts and discard do not add up to the number of shots");
    }
    r.discard_mass = static_cast<double>(counts.discard) / total;
    r.total_shots = counts.shots;
    return r;
}

std::vector<PairwiseEstimate> pairwise_overlaps(const CoincidenceReport &rates, const ConfigClassification &cls) {
    check_classification(cls);
    const double scale = chi_scale(cls.n);
    std::vector<PairwiseEstimate> out;
    for (size_t i = 0; i < cls.n; ++i) {
        if (cls.chi[i].empty()) {
            throw ValidationError("empty chi subset; pairwise overlap cannot be estimated");
        }
        PairwiseEstimate e;
        e.a = cls.layout.edges[i].a;
        e.b = cls.layout.edges[i].b;
        for (const auto &eta : cls.chi[i]) {
            e.chi_sum += rates.at(eta).rate;
        }
        e.raw = 1.0 - scale * e.chi_sum;
        e.value = std::clamp(e.raw, 0.0, 1.0);
        out.push_back(e);
    }
    return out;
}

double overlap_amplitude(std::span<const double> pairwise, double tol) {
    double prod = 1.0;
    for (double r : pairwise) {
        if (r < -tol) {
            std::ostringstream ss;
            ss << "pairwise overlap " << r << " is below -" << tol << "; rates are inconsistent";
            throw ValidationError(ss.str());
        }
        prod *= std::clamp(r, 0.0, 1.0);
    }
    return std::sqrt(prod);
}

int xi_parity_sign(size_t) {
    return 1;
}

double xi_parity_difference(const CoincidenceReport &rates, const ConfigClassification &cls) {
    double even = 0, odd = 0;
    for (const auto &eta : cls.xi) {
        const double c = rates.at(eta).rate;
        (parity(eta) > 0 ? even : odd) += c;
    }
    return even - odd;
}

PhaseEstimate collective_phase(const CoincidenceReport &rates, const ConfigClassification &cls, double amplitude,
                               double amplitude_threshold, double clamp_tolerance) {
    check_classification(cls);
    if (!(amplitude > amplitude_threshold)) {
        std::ostringstream ss;
        ss << "phase unrecoverable: n-photon overlap amplitude " << amplitude << " <= " << amplitude_threshold;
        throw NumericalError(ss.str());
    }
    PhaseEstimate p;
    p.diff = xi_parity_difference(rates, cls);
    p.cos_arg_raw = xi_parity_sign(cls.n) * std::ldexp(p.diff, static_cast<int>(cls.n) - 1) / amplitude;
    p.clamp_excess = std::max(0.0, std::abs(p.cos_arg_raw) - 1.0);
    if (p.clamp_excess > clamp_tolerance) {
        std::ostringstream ss;
        ss << "arccos argument " << p.cos_arg_raw << " lies outside [-1, 1] by more than " << clamp_tolerance;
        throw NumericalError(ss.str());
    }
    p.phase_abs = std::acos(std::clamp(p.cos_arg_raw, -1.0, 1.0));
    return p;
}

EstimateReport estimate(const CoincidenceReport &rates, const ConfigClassification &cls,
                        const EstimatorOptions &opts) {
    check_classification(cls);
    EstimateReport rep;
    rep.n = cls.n;
    rep.sampled = rates.total_shots.has_value();
    rep.shots = rates.total_shots;
    rep.pairwise = pairwise_overlaps(rates, cls);

    const size_t n = cls.n;
    const double scale = chi_scale(n);
    const uint64_t shots = rep.sampled ? *rates.total_shots : 0;

    if (rep.sampled) {
        for (size_t i = 0; i < n; ++i) {
            std::map<OutputConfig, double> w;
            for (const auto &eta : cls.chi[i]) {
                w[eta] = -scale;
            }
            rep.pairwise[i].stderr_raw = std::sqrt(linear_statistic_variance(rates, w, shots));
        }
    }

    std::vector<double> values;
    for (const auto &e : rep.pairwise) {
        const double tol = rep.sampled
                               ? std::max(opts.pairwise_tolerance, opts.sigma_multiplier * e.stderr_raw.value_or(0))
                               : opts.pairwise_tolerance;
        if (e.raw < -tol) {
            std::ostringstream ss;
            ss << "pairwise overlap " << e.a << "-" << e.b << " = " << e.raw << " is below -" << tol;
            throw ValidationError(ss.str());
        }
        values.push_back(e.value);
    }
    rep.amplitude = overlap_amplitude(values, 0.0);

    // Linearizations of the diff statistic and of the amplitude.
    std::map<OutputConfig, double> w_diff, w_amp;
    for (const auto &eta : cls.xi) {
        w_diff[eta] = parity(eta);
    }
    for (size_t i = 0; i < n; ++i) {
        const double r = rep.pairwise[i].value;
        const double d_amp = r > 0 ? -rep.amplitude * scale / (2 * r) : 0.0;
        for (const auto &eta : cls.chi[i]) {
            w_amp[eta] = d_amp;
        }
    }
    if (rep.sampled) {
        rep.stderr_diff = std::sqrt(linear_statistic_variance(rates, w_diff, shots));
        rep.stderr_amplitude = std::sqrt(linear_statistic_variance(rates, w_amp, shots));
    }

    double clamp_tol = opts.clamp_tolerance;
    if (rep.sampled && rep.amplitude > opts.amplitude_threshold) {
        // x = s 2^{n-1} D / A; dx = (s 2^{n-1}/A) dD - (x/A) dA.
        const double diff = xi_parity_difference(rates, cls);
        const double k = xi_parity_sign(n) * std::ldexp(1.0, static_cast<int>(n) - 1);
        const double x = k * diff / rep.amplitude;
        std::map<OutputConfig, double> w_x;
        for (const auto &[eta, w] : w_diff) {
            w_x[eta] += k / rep.amplitude * w;
        }
        for (const auto &[eta, w] : w_amp) {
            w_x[eta] += -x / rep.amplitude * w;
        }
        const double sx = std::sqrt(linear_statistic_variance(rates, w_x, shots));
        clamp_tol = std::max(clamp_tol, opts.sigma_multiplier * sx);
        const double slope = 1 - std::min(1.0, x * x);
        rep.stderr_phase = slope > 0 ? sx / std::sqrt(slope) : std::numeric_limits<double>::infinity();
    }

    const auto phase = collective_phase(rates, cls, rep.amplitude, opts.amplitude_threshold, clamp_tol);
    rep.diff = phase.diff;
    rep.cos_arg_raw = phase.cos_arg_raw;
    rep.clamp_excess = phase.clamp_excess;
    rep.phase_abs = phase.phase_abs;
    rep.phase_candidates = {phase.phase_abs, -phase.phase_abs};
    return rep;
}

namespace {

OutputConfig with_port(const OutputConfig &rest, int port) {
    auto ports = rest.ports();
    ports.push_back(port);
    return OutputConfig(std::move(ports));
}

OutputConfig without_port(const OutputConfig &eta, int port) {
    std::vector<int> ports;
    for (int p : eta.ports()) {
        if (p != port) {
            ports.push_back(p);
        }
    }
    return OutputConfig(std::move(ports));
}

// Every (rest, traced edge) pair reachable from xi, deduplicated.
std::vector<std::pair<OutputConfig, size_t>> xi_rests(const ConfigClassification &cls) {
    std::map<OutputConfig, size_t> seen;
    for (const auto &eta : cls.xi) {
        for (int p : eta.ports()) {
            const int e = cls.layout.edge_of_port(p);
            seen.emplace(without_port(eta, p), static_cast<size_t>(e));
        }
    }
    return {seen.begin(), seen.end()};
}

double pair_marginal(const CoincidenceReport &rates, const CycleLayout &layout, const OutputConfig &rest,
                     size_t edge) {
    double total = 0;
    for (int q : layout.edges[edge].ports) {
        total += rates.at(with_port(rest, q)).rate;
    }
    return total;
}

double full_marginal(const CoincidenceReport &rates, size_t modes, const OutputConfig &rest) {
    double total = 0;
    for (int q = 1; q <= static_cast<int>(modes); ++q) {
        if (!rest.contains(q)) {
            total += rates.at(with_port(rest, q)).rate;
        }
    }
    return total;
}

}  // namespace

GenuineReport genuine_check(const CoincidenceReport &rates, const ConfigClassification &cls, double tol) {
    check_classification(cls);
    GenuineReport rep;
    rep.expected = std::ldexp(2.0, -(2 * static_cast<int>(cls.n) - 1));
    for (const auto &[rest, edge] : xi_rests(cls)) {
        const double value = pair_marginal(rates, cls.layout, rest, edge);
        rep.pair_marginals.push_back({rest, edge, value});
        const double dev = std::abs(value - rep.expected);
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > tol) {
            std::ostringstream ss;
            ss << "marginal over output set " << edge + 1 << " with rest {" << rest.key() << "} = " << value
               << ", expected " << rep.expected;
            rep.violations.push_back(ss.str());
        }
    }
    return rep;
}

MarginalSweep marginal_sweep(std::span<const CoincidenceReport> reports, const ConfigClassification &cls) {
    check_classification(cls);
    MarginalSweep out;
    if (reports.empty()) {
        return out;
    }
    auto spread = [](const std::vector<double> &xs) {
        auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        return *hi - *lo;
    };
    for (const auto &[rest, edge] : xi_rests(cls)) {
        std::vector<double> full, pair;
        for (const auto &r : reports) {
            full.push_back(full_marginal(r, cls.modes, rest));
            pair.push_back(pair_marginal(r, cls.layout, rest, edge));
        }
        out.full_marginal_spread = std::max(out.full_marginal_spread, spread(full));
        out.pair_marginal_spread = std::max(out.pair_marginal_spread, spread(pair));
    }
    for (const auto &eta : cls.xi) {
        std::vector<double> xs;
        for (const auto &r : reports) {
            xs.push_back(r.at(eta).rate);
        }
        out.xi_rate_spread = std::max(out.xi_rate_spread, spread(xs));
    }
    return out;
}

}  // namespace mcp
