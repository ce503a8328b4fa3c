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

#include "mcphase/sampler.h"

#include <algorithm>
#include <random>

#include "mcphase/errors.h"

namespace mcp {

CountReport sample_counts(const CoincidenceReport &report, uint64_t shots, uint64_t seed) {
    if (shots < 1) {
        throw ValidationError("shots must be >= 1");
    }
    CountReport out;
    out.shots = shots;
    out.seed = seed;

    std::mt19937_64 rng(seed);
    uint64_t remaining = shots;
    // Probability mass not yet assigned, including the discard bucket.
    double mass_left = report.total_rate() + std::max(0.0, report.discard_mass);
    for (const auto &[eta, entry] : report.rates) {
        uint64_t k = 0;
        const double p = std::max(0.0, entry.rate);
        if (remaining > 0 && p > 0 && mass_left > 0) {
            const double q = std::min(1.0, p / mass_left);
            if (q >= 1.0) {
                k = remaining;
            } else {
                std::binomial_distribution<uint64_t> draw(remaining, q);
                k = draw(rng);
            }
        }
        out.counts.emplace(eta, k);
        remaining -= k;
        mass_left -= p;
    }
    out.discard = remaining;
    return out;
}

}  // namespace mcp
