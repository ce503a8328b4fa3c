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

#ifndef MCPHASE_GRAPH_H
#define MCPHASE_GRAPH_H

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcphase/coincidence.h"

namespace mcp {

/// Bipartite graph between m solid (input) and m dashed (output) vertices.
/// Edge (j, i) joins solid j to dashed i and exists iff |U[i][j]| exceeds the
/// threshold. Labels are 1-based.
struct ConnectivityGraph {
    size_t m = 0;
    std::set<std::pair<int, int>> edges;  // (solid, dashed)

    std::vector<int> dashed_neighbors(int solid) const;
    std::vector<int> solid_neighbors(int dashed) const;
};

/// Simple undirected graph on vertices 1..n. Used both for the minor over
/// solid vertices and for the photon-level enhanced-distinguishability graph.
struct EDGraph {
    size_t n = 0;
    std::set<std::pair<int, int>> edges;  // (a, b) with a < b

    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    std::vector<int> neighbors(int a) const;
};

ConnectivityGraph connectivity_graph(const ScatteringMatrix &u, double threshold = 1e-12);
/// Same rule for a matrix that need not be unitary (e.g. forbidden patterns).
ConnectivityGraph connectivity_graph(const ComplexMatrix &m, double threshold = 1e-12);

/// Solids x, z are adjacent iff some dashed vertex neighbors both.
EDGraph minor_graph(const ConnectivityGraph &gc);

/// Restriction of the minor to the occupied input ports, relabeled by photon:
/// photons i, j are adjacent iff ports v_i, v_j are adjacent in the minor.
EDGraph enhanced_graph(const EDGraph &minor, const InputConfig &v);

/// O_{i,j}: dashed vertices adjacent to both v_i and v_j, for every photon pair
/// i < j (empty sets included).
std::map<std::pair<int, int>, std::vector<int>> output_sets(const ConnectivityGraph &gc, const InputConfig &v);

struct CycleVerdict {
    bool is_pure_cycle = false;
    /// The Hamiltonian cycle when is_pure_cycle: starts at 1, second element is
    /// the smaller neighbor of 1.
    std::vector<int> cycle;
    /// Fundamental cycles shorter than n, each canonicalized the same way from
    /// its minimum vertex.
    std::vector<std::vector<int>> short_cycles;
};

/// True iff the graph is a single cycle through all n vertices (n >= 3).
CycleVerdict pure_cycle_check(const EDGraph &g);

/// Graphviz DOT. Solid vertices are filled circles "s<j>", dashed ones dashed
/// circles "d<i>".
std::string to_dot(const ConnectivityGraph &gc);
/// Circular layout hint, vertices "v<a>".
std::string to_dot(const EDGraph &g, const std::string &name = "enhanced");

}  // namespace mcp

#endif
