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

#include "mcphase/classifier.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "mcphase/errors.h"

namespace mcp {

int parity(const OutputConfig &eta) {
    long sum = 0;
    for (int p : eta.ports()) {
        sum += p;
    }
    return sum % 2 == 0 ? 1 : -1;
}

namespace {

// Appends every choice of one element from each of `groups` to `prefix`.
void cartesian(const std::vector<const std::vector<int> *> &groups, size_t k, std::vector<int> &prefix,
               std::vector<OutputConfig> &out) {
    if (k == groups.size()) {
        out.emplace_back(prefix);
        return;
    }
    for (int p : *groups[k]) {
        prefix.push_back(p);
        cartesian(groups, k + 1, prefix, out);
        prefix.pop_back();
    }
}

void sort_unique(std::vector<OutputConfig> &v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<OutputConfig> xi_set(const CycleLayout &layout) {
    layout.validate();
    std::vector<const std::vector<int> *> groups;
    for (const auto &e : layout.edges) {
        groups.push_back(&e.ports);
    }
    std::vector<OutputConfig> out;
    std::vector<int> prefix;
    cartesian(groups, 0, prefix, out);
    sort_unique(out);
    return out;
}

std::vector<OutputConfig> zeta_set(const CycleLayout &layout) {
    layout.validate();
    const size_t n = layout.n;
    std::vector<OutputConfig> out;
    for (const auto &eta : collision_free_configs(layout.modes, n)) {
        std::vector<int> occupied(n, 0);
        for (int p : eta.ports()) {
            int e = layout.edge_of_port(p);
            if (e >= 0) {
                ++occupied[static_cast<size_t>(e)];
            }
        }
        // Photon cycle[i] reaches the ports of edges i-1 and i.
        for (size_t i = 0; i < n; ++i) {
            if (occupied[i] == 0 && occupied[(i + n - 1) % n] == 0) {
                out.push_back(eta);
                break;
            }
        }
    }
    return out;
}

std::vector<std::vector<OutputConfig>> chi_subsets(const CycleLayout &layout) {
    layout.validate();
    const size_t n = layout.n;
    std::vector<std::vector<OutputConfig>> out(n);
    for (size_t i = 0; i < n; ++i) {
        const auto &own = layout.edges[i].ports;
        for (size_t a = 0; a < own.size(); ++a) {
            for (size_t b = a + 1; b < own.size(); ++b) {
                for (size_t dropped = 0; dropped < n; ++dropped) {
                    if (dropped == i) {
                        continue;
                    }
                    std::vector<const std::vector<int> *> groups;
                    for (size_t k = 0; k < n; ++k) {
                        if (k != i && k != dropped) {
                            groups.push_back(&layout.edges[k].ports);
                        }
                    }
                    std::vector<int> prefix{own[a], own[b]};
                    cartesian(groups, 0, prefix, out[i]);
                }
            }
        }
        sort_unique(out[i]);
    }
    return out;
}

ConfigClassification classify(const CycleLayout &layout) {
    ConfigClassification c;
    c.n = layout.n;
    c.modes = layout.modes;
    c.layout = layout;
    c.xi = xi_set(layout);
    c.zeta = zeta_set(layout);
    c.chi = chi_subsets(layout);

    std::set<OutputConfig> assigned;
    auto claim = [&](const std::vector<OutputConfig> &group) {
        for (const auto &eta : group) {
            if (!assigned.insert(eta).second) {
                throw ValidationError("configuration " + eta.key() + " falls in two classes");
            }
        }
    };
    claim(c.xi);
    claim(c.zeta);
    for (const auto &g : c.chi) {
        claim(g);
    }
    for (const auto &eta : collision_free_configs(layout.modes, layout.n)) {
        if (!assigned.count(eta)) {
            c.chi_rest.push_back(eta);
        }
    }
    return c;
}

}  // namespace mcp
