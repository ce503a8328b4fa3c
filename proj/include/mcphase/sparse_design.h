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

#ifndef MCPHASE_SPARSE_DESIGN_H
#define MCPHASE_SPARSE_DESIGN_H

#include <string>
#include <vector>

#include "mcphase/coincidence.h"
#include "mcphase/graph.h"

namespace mcp {

/// One edge (a, b) of the photon cycle and the output ports both photons can
/// reach, O_{a,b}.
struct CycleEdge {
    int a = 0;
    int b = 0;
    std::vector<int> ports;
};

/// The photon n-cycle of an interferometer together with its output sets.
/// edges[i] joins cycle[i] and cycle[(i+1) % n].
struct CycleLayout {
    size_t n = 0;
    size_t modes = 0;
    std::vector<int> cycle;
    std::vector<CycleEdge> edges;

    /// Throws ValidationError unless there are n edges following the cycle and
    /// the port sets are nonempty, pairwise disjoint and within [1..modes].
    void validate() const;
    /// Index of the edge owning `port`, or -1.
    int edge_of_port(int port) const;
};

/// Reads the cycle off the enhanced-distinguishability graph of (u, v) and
/// attaches the output sets. Throws ValidationError if that graph is not a
/// pure n-cycle.
CycleLayout cycle_layout(const ScatteringMatrix &u, const InputConfig &v);

struct BeamSplitter {
    int layer = 0;  // 1 or 2
    int index = 0;  // 1..n within the layer
    int port_a = 0;
    int port_b = 0;
};

struct SparseDesign {
    size_t n = 0;
    ScatteringMatrix unitary;
    InputConfig input;
    /// σ as a vertex sequence; sigma maps cycle[i] -> cycle[i+1].
    std::vector<int> cycle;
    Permutation sigma;
    /// σ = (ρ(1), ..., ρ(n)).
    Permutation rho;
    CycleLayout layout;
    std::vector<BeamSplitter> beamsplitters;
};

/// Canonical n-cycle of the 2n-mode design:
///   even n: (1, 2, 4, 6, ..., n-2, n, n-1, ..., 5, 3)
///   odd n:  (1, 2, 4, 6, ..., n-1, n, n-2, ..., 5, 3)
/// Throws ValidationError for n < 3.
std::vector<int> canonical_cycle(size_t n);

/// ρ with ρ(i) = cycle[i-1].
Permutation rho_of_cycle(const std::vector<int> &cycle);

/// The 2n x 2n sparse unitary (1/2) [[K, L, 0, ...], [J, 0, L, ...], ...,
/// [..., J, -K^T]], with J = [[1,1],[1,1]], K = [[1,-1],[1,-1]],
/// L = [[-1,1],[1,-1]]. Row block 1 holds K, L; interior row block i holds J
/// at block column i-1 and L at block column i+1; the last holds J, -K^T.
ComplexMatrix sparse_unitary_matrix(size_t n);

/// Full design with photons in the odd input ports. Certifies unitarity at
/// 1e-12 and checks the cycle and output-set invariants; throws
/// ValidationError for n < 3.
SparseDesign build_sparse_design(size_t n);

/// ‖W^dagger W - I‖_max for an n x n matrix with the cyclic two-per-row band
/// pattern: row i has nonzeros exactly at columns i and i+1 (mod n). Throws
/// ValidationError for n < 3, off-pattern nonzeros, or zero pattern entries.
double pattern_unitarity_defect(const ComplexMatrix &w);

struct ResourceComparison {
    size_t n = 0;
    // this scheme
    size_t depth = 2;
    size_t beamsplitters = 0;
    size_t modes = 0;
    size_t extra_internal_params = 0;
    // internal-DoF scheme
    size_t rival_depth_proxy = 0;         // ceil(log2 n)
    size_t rival_beamsplitters_proxy = 0;  // n * ceil(log2 n)
    size_t rival_modes = 0;
    size_t rival_internal_params_min = 0;  // d >= n - 3
    std::string rival_depth_order = "O(log n)";
    std::string rival_beamsplitter_order = "O(n log n)";
};

ResourceComparison resource_comparison(size_t n);

}  // namespace mcp

#endif
