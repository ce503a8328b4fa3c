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

#ifndef MCPHASE_CLASSIFIER_H
#define MCPHASE_CLASSIFIER_H

#include <vector>

#include "mcphase/coincidence.h"
#include "mcphase/sparse_design.h"

namespace mcp {

/// (-1)^{Σ η_i}.
int parity(const OutputConfig &eta);

/// Output configurations of a cycle interferometer, split into the
/// phase-bearing set xi (one port from every output set), the forbidden set
/// zeta (some photon can reach none of the ports), the pairwise sets chi[i]
/// (both ports of output set i, one port from each of n-2 others) and the
/// remainder chi_rest. Every list is sorted.
struct ConfigClassification {
    size_t n = 0;
    size_t modes = 0;
    CycleLayout layout;
    std::vector<OutputConfig> xi;
    std::vector<OutputConfig> zeta;
    std::vector<std::vector<OutputConfig>> chi;  // chi[i] belongs to layout.edges[i]
    std::vector<OutputConfig> chi_rest;
};

/// All configurations choosing exactly one port from each output set.
std::vector<OutputConfig> xi_set(const CycleLayout &layout);

/// Configurations over [1..modes] in which some photon has none of its
/// reachable ports occupied (both of its cycle edges are empty).
std::vector<OutputConfig> zeta_set(const CycleLayout &layout);

/// chi[i]: every port of output set i, plus one port from each of n-2 of the
/// remaining n-1 output sets. Built for output sets of size 2; larger sets
/// contribute every 2-subset.
std::vector<std::vector<OutputConfig>> chi_subsets(const CycleLayout &layout);

/// Full partition of the C(modes, n) collision-free configurations.
ConfigClassification classify(const CycleLayout &layout);

}  // namespace mcp

#endif
