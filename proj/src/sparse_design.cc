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

#include "mcphase/sparse_design.h"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "mcphase/errors.h"

namespace mcp {

void CycleLayout::validate() const {
    if (n < 1 || cycle.size() != n || edges.size() != n) {
        throw ValidationError("cycle layout needs n cycle vertices and n output sets");
    }
    std::set<int> seen_ports;
    for (size_t i = 0; i < n; ++i) {
        const auto &e = edges[i];
        if (e.a != cycle[i] || e.b != cycle[(i + 1) % n]) {
            throw ValidationError("output sets do not follow the cycle order");
        }
        if (e.ports.empty()) {
            throw ValidationError("empty output set for edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
        }
        for (int p : e.ports) {
            if (p < 1 || static_cast<size_t>(p) > modes) {
                throw ValidationError("output set port out of range");
            }
            if (!seen_ports.insert(p).second) {
                throw ValidationError("output sets are not pairwise disjoint (port " + std::to_string(p) + ")");
            }
        }
    }
}

int CycleLayout::edge_of_port(int port) const {
    for (size_t i = 0; i < edges.size(); ++i) {
        if (std::find(edges[i].ports.begin(), edges[i].ports.end(), port) != edges[i].ports.end()) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

CycleLayout cycle_layout(const ScatteringMatrix &u, const InputConfig &v) {
    const auto gc = connectivity_graph(u);
    const auto ge = enhanced_graph(minor_graph(gc), v);
    const auto verdict = pure_cycle_check(ge);
    if (!verdict.is_pure_cycle) {
        throw ValidationError("enhanced-distinguishability graph is not a pure n-cycle");
    }
    const auto sets = output_sets(gc, v);
    CycleLayout layout;
    layout.n = v.photons();
    layout.modes = u.modes();
    layout.cycle = verdict.cycle;
    for (size_t i = 0; i < layout.n; ++i) {
        int a = layout.cycle[i];
        int b = layout.cycle[(i + 1) % layout.n];
        layout.edges.push_back({a, b, sets.at({std::min(a, b), std::max(a, b)})});
    }
    layout.validate();
    return layout;
}

std::vector<int> canonical_cycle(size_t n) {
    if (n < 3) {
        throw ValidationError("the sparse design needs n >= 3 photons");
    }
    const int m = static_cast<int>(n);
    std::vector<int> c{1, 2};
    if (m % 2 == 0) {
        for (int k = 4; k <= m; k += 2) {
            c.push_back(k);
        }
        for (int k = m - 1; k >= 3; k -= 2) {
            c.push_back(k);
        }
    } else {
        for (int k = 4; k <= m - 1; k += 2) {
            c.push_back(k);
        }
        c.push_back(m);
        for (int k = m - 2; k >= 3; k -= 2) {
            c.push_back(k);
        }
    }
    return c;
}

Permutation rho_of_cycle(const std::vector<int> &cycle) {
    return Permutation(cycle);
}

ComplexMatrix sparse_unitary_matrix(size_t n) {
    if (n < 3) {
        throw ValidationError("the sparse design needs n >= 3 photons");
    }
    Eigen::Matrix2d j, k, l;
    j << 1, 1, 1, 1;
    k << 1, -1, 1, -1;
    l << -1, 1, 1, -1;
    const auto dim = static_cast<Eigen::Index>(2 * n);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    auto put = [&](size_t row_block, size_t col_block, const Eigen::Matrix2d &b) {
        u.block<2, 2>(static_cast<Eigen::Index>(2 * row_block), static_cast<Eigen::Index>(2 * col_block)) = b;
    };
    put(0, 0, k);
    put(0, 1, l);
    for (size_t r = 1; r + 1 < n; ++r) {
        put(r, r - 1, j);
        put(r, r + 1, l);
    }
    put(n - 1, n - 2, j);
    put(n - 1, n - 1, -k.transpose());
    return (u / 2.0).cast<Complex>();
}

SparseDesign build_sparse_design(size_t n) {
    auto unitary = validate_unitary(sparse_unitary_matrix(n), 1e-12);
    std::vector<int> ports;
    for (size_t i = 0; i < n; ++i) {
        ports.push_back(static_cast<int>(2 * i + 1));
    }
    InputConfig input(ports);
    auto layout = cycle_layout(unitary, input);
    const auto cycle = canonical_cycle(n);
    if (layout.cycle != cycle) {
        throw NumericalError("sparse design cycle does not match the canonical cycle");
    }
    for (const auto &e : layout.edges) {
        if (e.ports.size() != 2) {
            throw NumericalError("sparse design output set without exactly two ports");
        }
    }

    std::vector<BeamSplitter> bs;
    for (int layer = 1; layer <= 2; ++layer) {
        for (size_t k = 1; k <= n; ++k) {
            bs.push_back({layer, static_cast<int>(k), static_cast<int>(2 * k - 1), static_cast<int>(2 * k)});
        }
    }

    std::vector<std::vector<int>> cyc{cycle};
    return SparseDesign{
        n,
        std::move(unitary),
        std::move(input),
        cycle,
        Permutation::from_cycles(n, cyc),
        rho_of_cycle(cycle),
        std::move(layout),
        std::move(bs),
    };
}

double pattern_unitarity_defect(const ComplexMatrix &w) {
    if (w.rows() != w.cols()) {
        throw ValidationError("band pattern matrix must be square");
    }
    const Eigen::Index n = w.rows();
    if (n < 3) {
        throw ValidationError("band pattern needs n >= 3");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const bool on_pattern = c == i || c == (i + 1) % n;
            if (on_pattern && w(i, c) == Complex(0.0)) {
                std::ostringstream ss;
                ss << "zero pattern entry at (" << i + 1 << "," << c + 1 << ")";
                throw ValidationError(ss.str());
            }
            if (!on_pattern && w(i, c) != Complex(0.0)) {
                std::ostringstream ss;
                ss << "off-pattern nonzero at (" << i + 1 << "," << c + 1 << ")";
                throw ValidationError(ss.str());
            }
        }
    }
    return unitarity_defect(w).max_deviation;
}

ResourceComparison resource_comparison(size_t n) {
    if (n < 3) {
        throw ValidationError("resource comparison needs n >= 3");
    }
    ResourceComparison r;
    r.n = n;
    r.depth = 2;
    r.beamsplitters = 2 * n;
    r.modes = 2 * n;
    r.extra_internal_params = 0;
    const size_t log2n = static_cast<size_t>(std::bit_width(n - 1));  // ceil(log2 n)
    r.rival_depth_proxy = log2n;
    r.rival_beamsplitters_proxy = n * log2n;
    r.rival_modes = n;
    r.rival_internal_params_min = n - 3;
    return r;
}

}  // namespace mcp
