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

#include "mcphase/graph.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mcphase/errors.h"

namespace mcp {

std::vector<int> ConnectivityGraph::dashed_neighbors(int solid) const {
    std::vector<int> out;
    for (auto it = edges.lower_bound({solid, 0}); it != edges.end() && it->first == solid; ++it) {
        out.push_back(it->second);
    }
    return out;
}

std::vector<int> ConnectivityGraph::solid_neighbors(int dashed) const {
    std::vector<int> out;
    for (const auto &[s, d] : edges) {
        if (d == dashed) {
            out.push_back(s);
        }
    }
    return out;
}

void EDGraph::add_edge(int a, int b) {
    if (a == b) {
        throw ValidationError("self-loops are not allowed");
    }
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool EDGraph::has_edge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::vector<int> EDGraph::neighbors(int a) const {
    std::vector<int> out;
    for (const auto &[x, y] : edges) {
        if (x == a) {
            out.push_back(y);
        } else if (y == a) {
            out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ConnectivityGraph connectivity_graph(const ComplexMatrix &m, double threshold) {
    if (m.rows() != m.cols()) {
        throw ValidationError("connectivity graph needs a square matrix");
    }
    ConnectivityGraph gc;
    gc.m = static_cast<size_t>(m.rows());
    for (Eigen::Index out = 0; out < m.rows(); ++out) {
        for (Eigen::Index in = 0; in < m.cols(); ++in) {
            if (std::abs(m(out, in)) > threshold) {
                gc.edges.insert({static_cast<int>(in + 1), static_cast<int>(out + 1)});
            }
        }
    }
    return gc;
}

ConnectivityGraph connectivity_graph(const ScatteringMatrix &u, double threshold) {
    return connectivity_graph(u.matrix(), threshold);
}

EDGraph minor_graph(const ConnectivityGraph &gc) {
    EDGraph g;
    g.n = gc.m;
    for (int d = 1; d <= static_cast<int>(gc.m); ++d) {
        auto solids = gc.solid_neighbors(d);
        for (size_t a = 0; a < solids.size(); ++a) {
            for (size_t b = a + 1; b < solids.size(); ++b) {
                g.add_edge(solids[a], solids[b]);
            }
        }
    }
    return g;
}

EDGraph enhanced_graph(const EDGraph &minor, const InputConfig &v) {
    v.check_modes(minor.n);
    EDGraph g;
    g.n = v.photons();
    for (size_t i = 0; i < v.photons(); ++i) {
        for (size_t j = i + 1; j < v.photons(); ++j) {
            if (minor.has_edge(v[i], v[j])) {
                g.add_edge(static_cast<int>(i + 1), static_cast<int>(j + 1));
            }
        }
    }
    return g;
}

std::map<std::pair<int, int>, std::vector<int>> output_sets(const ConnectivityGraph &gc, const InputConfig &v) {
    v.check_modes(gc.m);
    std::map<std::pair<int, int>, std::vector<int>> out;
    for (size_t i = 0; i < v.photons(); ++i) {
        auto ni = gc.dashed_neighbors(v[i]);
        for (size_t j = i + 1; j < v.photons(); ++j) {
            auto nj = gc.dashed_neighbors(v[j]);
            std::vector<int> common;
            std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
            out[{static_cast<int>(i + 1), static_cast<int>(j + 1)}] = std::move(common);
        }
    }
    return out;
}

namespace {

std::vector<int> canonical_cycle_order(std::vector<int> c) {
    auto mn = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), mn, c.end());
    if (c.size() > 2 && c.back() < c[1]) {
        std::reverse(c.begin() + 1, c.end());
    }
    return c;
}

}  // namespace

CycleVerdict pure_cycle_check(const EDGraph &g) {
    CycleVerdict v;
    const int n = static_cast<int>(g.n);
    std::vector<std::vector<int>> adj(static_cast<size_t>(n + 1));
    for (const auto &[a, b] : g.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto &a : adj) {
        std::sort(a.begin(), a.end());
    }

    // Fundamental cycles from DFS back edges.
    std::vector<int> parent(static_cast<size_t>(n + 1), 0), depth(static_cast<size_t>(n + 1), -1);
    std::function<void(int)> dfs = [&](int x) {
        for (int y : adj[static_cast<size_t>(x)]) {
            if (depth[static_cast<size_t>(y)] < 0) {
                depth[static_cast<size_t>(y)] = depth[static_cast<size_t>(x)] + 1;
                parent[static_cast<size_t>(y)] = x;
                dfs(y);
            } else if (y != parent[static_cast<size_t>(x)] && depth[static_cast<size_t>(y)] < depth[static_cast<size_t>(x)]) {
                std::vector<int> cycle;
                for (int z = x; z != y; z = parent[static_cast<size_t>(z)]) {
                    cycle.push_back(z);
                }
                cycle.push_back(y);
                if (static_cast<int>(cycle.size()) < n) {
                    v.short_cycles.push_back(canonical_cycle_order(std::move(cycle)));
                }
            }
        }
    };
    for (int s = 1; s <= n; ++s) {
        if (depth[static_cast<size_t>(s)] < 0) {
            depth[static_cast<size_t>(s)] = 0;
            dfs(s);
        }
    }
    std::sort(v.short_cycles.begin(), v.short_cycles.end());

    if (n < 3 || static_cast<int>(g.edges.size()) != n) {
        return v;
    }
    for (int x = 1; x <= n; ++x) {
        if (adj[static_cast<size_t>(x)].size() != 2) {
            return v;
        }
    }
    // Walk from 1 toward its smaller neighbor.
    std::vector<int> walk{1};
    int prev = 1, cur = adj[1][0];
    while (cur != 1) {
        walk.push_back(cur);
        const auto &nb = adj[static_cast<size_t>(cur)];
        int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        if (static_cast<int>(walk.size()) > n) {
            return v;
        }
    }
    if (static_cast<int>(walk.size()) == n) {
        v.is_pure_cycle = true;
        v.cycle = std::move(walk);
    }
    return v;
}

std::string to_dot(const ConnectivityGraph &gc) {
    std::ostringstream ss;
    ss << "graph connectivity {\n";
    ss << "  rankdir=LR;\n";
    ss << "  subgraph cluster_inputs {\n    label=\"inputs\";\n";
    for (size_t j = 1; j <= gc.m; ++j) {
        ss << "    s" << j << " [label=\"" << j << "\", shape=circle, style=filled, fillcolor=lightgray];\n";
    }
    ss << "  }\n";
    ss << "  subgraph cluster_outputs {\n    label=\"outputs\";\n";
    for (size_t i = 1; i <= gc.m; ++i) {
        ss << "    d" << i << " [label=\"" << i << "\", shape=circle, style=dashed];\n";
    }
    ss << "  }\n";
    for (const auto &[s, d] : gc.edges) {
        ss << "  s" << s << " -- d" << d << ";\n";
    }
    ss << "}\n";
    return ss.str();
}

std::string to_dot(const EDGraph &g, const std::string &name) {
    std::ostringstream ss;
    ss << "graph " << name << " {\n";
    ss << "  layout=circo;\n";
    for (size_t a = 1; a <= g.n; ++a) {
        ss << "  v" << a << " [label=\"" << a << "\", shape=circle, style=filled, fillcolor=lightgray];\n";
    }
    for (const auto &[a, b] : g.edges) {
        ss << "  v" << a << " -- v" << b << ";\n";
    }
    ss << "}\n";
    return ss.str();
}

}  // namespace mcp
