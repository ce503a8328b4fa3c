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

#include <gtest/gtest.h>

#include <regex>

#include "mcphase/appendix.h"
#include "mcphase/errors.h"
#include "mcphase/graph.h"
#include "mcphase/sparse_design.h"
#include "test_util.h"

namespace mcp {
namespace {

// Two balanced beamsplitters on modes (1,2) and (3,4).
ScatteringMatrix two_splitters() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m.block(0, 0, 2, 2) = testing::balanced_beamsplitter();
    m.block(2, 2, 2, 2) = testing::balanced_beamsplitter();
    return validate_unitary(m);
}

ComplexMatrix band_pattern(int n) {
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        w(i, i) = 1 / std::sqrt(2.0);
        w(i, (i + 1) % n) = 1 / std::sqrt(2.0);
    }
    return w;
}

size_t count(const std::string &s, const std::string &re) {
    const std::regex r(re);
    return static_cast<size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), r), std::sregex_iterator()));
}

TEST(Connectivity, Identity) {
    const auto gc = connectivity_graph(validate_unitary(ComplexMatrix::Identity(4, 4)));
    EXPECT_EQ(gc.edges.size(), 4u);
    for (int i = 1; i <= 4; ++i) {
        EXPECT_TRUE(gc.edges.count({i, i}));
    }
    EXPECT_TRUE(minor_graph(gc).edges.empty());
    const auto sets = output_sets(gc, InputConfig({1, 2, 3}));
    for (const auto &[pair, ports] : sets) {
        EXPECT_TRUE(ports.empty());
    }
}

TEST(Connectivity, TwoSplitters) {
    const auto gc = connectivity_graph(two_splitters());
    EXPECT_EQ(gc.edges.size(), 8u);
    const auto minor = minor_graph(gc);
    EXPECT_TRUE(minor.has_edge(1, 2));
    EXPECT_TRUE(minor.has_edge(3, 4));
    EXPECT_FALSE(minor.has_edge(1, 4));
    EXPECT_EQ(minor.edges.size(), 2u);

    const auto ge = enhanced_graph(minor, InputConfig({1, 2, 3}));
    EXPECT_EQ(ge.n, 3u);
    EXPECT_EQ(ge.edges, (std::set<std::pair<int, int>>{{1, 2}}));
    EXPECT_FALSE(pure_cycle_check(ge).is_pure_cycle);

    const std::string dot = to_dot(gc);
    EXPECT_EQ(count(dot, R"(\b[sd]\d+ \[)"), 8u) << dot;
    EXPECT_EQ(count(dot, "--"), 8u) << dot;
}

TEST(Connectivity, SparseDesignDegrees) {
    const auto d = build_sparse_design(4);
    const auto gc = connectivity_graph(d.unitary);
    EXPECT_EQ(gc.edges.size(), 32u);
    for (int i = 1; i <= 8; ++i) {
        EXPECT_EQ(gc.dashed_neighbors(i).size(), 4u);
        EXPECT_EQ(gc.solid_neighbors(i).size(), 4u);
    }
    const auto ge = enhanced_graph(minor_graph(gc), d.input);
    const auto verdict = pure_cycle_check(ge);
    EXPECT_TRUE(verdict.is_pure_cycle);
    EXPECT_EQ(verdict.cycle, (std::vector<int>{1, 2, 4, 3}));

    const auto sets = output_sets(gc, d.input);
    EXPECT_EQ(sets.at({1, 2}), (std::vector<int>{1, 2}));
    EXPECT_EQ(sets.at({2, 4}), (std::vector<int>{5, 6}));
    EXPECT_EQ(sets.at({3, 4}), (std::vector<int>{7, 8}));
    EXPECT_EQ(sets.at({1, 3}), (std::vector<int>{3, 4}));
    EXPECT_TRUE(sets.at({1, 4}).empty());
    EXPECT_TRUE(sets.at({2, 3}).empty());
}

TEST(Connectivity, BandPatternSingletons) {
    const auto gc = connectivity_graph(band_pattern(4));
    const auto ge = enhanced_graph(minor_graph(gc), InputConfig({1, 2, 3, 4}));
    const auto verdict = pure_cycle_check(ge);
    ASSERT_TRUE(verdict.is_pure_cycle);
    EXPECT_EQ(verdict.cycle, (std::vector<int>{1, 2, 3, 4}));
    const auto sets = output_sets(gc, InputConfig({1, 2, 3, 4}));
    EXPECT_EQ(sets.at({1, 2}), (std::vector<int>{1}));
    EXPECT_EQ(sets.at({2, 3}), (std::vector<int>{2}));
    EXPECT_EQ(sets.at({3, 4}), (std::vector<int>{3}));
    EXPECT_EQ(sets.at({1, 4}), (std::vector<int>{4}));
}

TEST(Enhanced, IsolatedSolids) {
    const auto gc = connectivity_graph(two_splitters());
    const auto ge = enhanced_graph(minor_graph(gc), InputConfig({1, 3}));
    EXPECT_TRUE(ge.edges.empty());
    EXPECT_THROW(enhanced_graph(minor_graph(gc), InputConfig({1, 5})), ValidationError);
}

TEST(PureCycle, Examples) {
    EDGraph tri;
    tri.n = 4;
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    tri.add_edge(1, 3);
    const auto v1 = pure_cycle_check(tri);
    EXPECT_FALSE(v1.is_pure_cycle);
    EXPECT_EQ(v1.short_cycles, (std::vector<std::vector<int>>{{1, 2, 3}}));

    EDGraph k4;
    k4.n = 4;
    for (int a = 1; a <= 4; ++a) {
        for (int b = a + 1; b <= 4; ++b) {
            k4.add_edge(a, b);
        }
    }
    const auto v2 = pure_cycle_check(k4);
    EXPECT_FALSE(v2.is_pure_cycle);
    EXPECT_FALSE(v2.short_cycles.empty());

    EDGraph c;
    c.n = 4;
    c.add_edge(1, 3);
    c.add_edge(3, 4);
    c.add_edge(4, 2);
    c.add_edge(2, 1);
    const auto v3 = pure_cycle_check(c);
    EXPECT_TRUE(v3.is_pure_cycle);
    EXPECT_EQ(v3.cycle, (std::vector<int>{1, 2, 4, 3}));
    EXPECT_TRUE(v3.short_cycles.empty());

    EDGraph two;
    two.n = 6;
    for (int a : {1, 4}) {
        two.add_edge(a, a + 1);
        two.add_edge(a + 1, a + 2);
        two.add_edge(a, a + 2);
    }
    EXPECT_FALSE(pure_cycle_check(two).is_pure_cycle);
    EXPECT_THROW(two.add_edge(2, 2), ValidationError);
}

// Enhanced edges are exactly the photon pairs whose columns share a row.
TEST(Enhanced, PropertySharedRows) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const int m = 4 + t % 4;
        // Sparse-ish unitary: a product of a few random beamsplitters.
        ComplexMatrix u = ComplexMatrix::Identity(m, m);
        std::uniform_int_distribution<int> port(0, m - 1);
        for (int k = 0; k < 1 + t % 5; ++k) {
            int a = port(rng), b = port(rng);
            if (a == b) {
                continue;
            }
            ComplexMatrix bs = ComplexMatrix::Identity(m, m);
            bs(a, a) = bs(a, b) = bs(b, a) = 1 / std::sqrt(2.0);
            bs(b, b) = -1 / std::sqrt(2.0);
            u = bs * u;
        }
        const auto su = validate_unitary(u);
        std::vector<int> ports = testing::iota_ports(static_cast<size_t>(m));
        std::shuffle(ports.begin(), ports.end(), rng);
        const InputConfig v(std::vector<int>(ports.begin(), ports.begin() + 3));
        const auto ge = enhanced_graph(minor_graph(connectivity_graph(su)), v);
        for (int i = 1; i <= 3; ++i) {
            for (int j = i + 1; j <= 3; ++j) {
                bool shared = false;
                for (int r = 0; r < m; ++r) {
                    shared = shared || (std::abs(u(r, v[static_cast<size_t>(i - 1)] - 1)) > 1e-12 &&
                                        std::abs(u(r, v[static_cast<size_t>(j - 1)] - 1)) > 1e-12);
                }
                EXPECT_EQ(ge.has_edge(i, j), shared);
            }
        }
    }
}

TEST(OutputSets, DisjointForPureCycles) {
    for (size_t n = 3; n <= 10; ++n) {
        const auto d = build_sparse_design(n);
        const auto gc = connectivity_graph(d.unitary);
        const auto verdict = pure_cycle_check(enhanced_graph(minor_graph(gc), d.input));
        ASSERT_TRUE(verdict.is_pure_cycle);
        const auto sets = output_sets(gc, d.input);
        std::vector<int> all;
        for (size_t k = 0; k < n; ++k) {
            int a = verdict.cycle[k], b = verdict.cycle[(k + 1) % n];
            const auto &s = sets.at({std::min(a, b), std::max(a, b)});
            EXPECT_EQ(s.size(), 2u);
            all.insert(all.end(), s.begin(), s.end());
        }
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, testing::iota_ports(2 * n));
    }
}

TEST(Dot, Formats) {
    ConnectivityGraph empty;
    empty.m = 2;
    const std::string e = to_dot(empty);
    EXPECT_NE(e.find("graph"), std::string::npos);
    EXPECT_EQ(count(e, "--"), 0u);
    EXPECT_EQ(count(e, R"(\b[sd]\d+ \[)"), 4u);

    EDGraph c;
    c.n = 4;
    c.add_edge(1, 2);
    c.add_edge(2, 4);
    c.add_edge(3, 4);
    c.add_edge(1, 3);
    const std::string d = to_dot(c);
    EXPECT_NE(d.find("circo"), std::string::npos);
    EXPECT_EQ(count(d, "--"), 4u);
    EXPECT_EQ(to_dot(c), d);
}

}  // namespace
}  // namespace mcp
