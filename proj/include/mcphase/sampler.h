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

#ifndef MCPHASE_SAMPLER_H
#define MCPHASE_SAMPLER_H

#include <cstdint>
#include <map>

#include "mcphase/coincidence.h"

namespace mcp {

/// Photon-counting record: one count per configuration of the source report
/// (zeros included) plus everything else in `discard`.
struct CountReport {
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::map<OutputConfig, uint64_t> counts;
    uint64_t discard = 0;
};

/// Multinomial draw of `shots` events over the report's configurations and
/// its discard bucket, by sequential conditional binomials in configuration
/// order. Deterministic for a fixed seed. Throws ValidationError if shots == 0.
CountReport sample_counts(const CoincidenceReport &report, uint64_t shots, uint64_t seed);

}  // namespace mcp

#endif
