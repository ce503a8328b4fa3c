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

// Shared fixtures for the test binaries.

#ifndef MCPHASE_TESTS_TEST_UTIL_H
#define MCPHASE_TESTS_TEST_UTIL_H

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "mcphase/coincidence.h"
#include "mcphase/photon_model.h"

namespace mcp::testing {

inline ComplexVector random_vector(size_t d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexVector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

/// Gram matrix of n random unit vectors in C^d (d = n by default).
inline GramMatrix random_gram(size_t n, std::mt19937_64 &rng, size_t d = 0) {
    std::vector<InternalState> states;
    for (size_t k = 0; k < n; ++k) {
        states.push_back(InternalState::normalized(random_vector(d ? d : n, rng)));
    }
    return gram_from_states(states);
}

/// Qubit states on a circle of latitude: photon cycle[k] gets
/// (cos θ, e^{2πi k w / n} sin θ). Adjacent photons on the cycle share a
/// large overlap and the product around the cycle carries a geometric phase.
inline GramMatrix latitude_gram(const std::vector<int> &cycle, double theta, double winding = 1.0) {
    const size_t n = cycle.size();
    std::vector<InternalState> states(n, InternalState(ComplexVector::Ones(1)));
    for (size_t k = 0; k < n; ++k) {
        ComplexVector v(2);
        v(0) = std::cos(theta);
        v(1) = std::polar(std::sin(theta), 2.0 * std::numbers::pi * winding * static_cast<double>(k) /
                                               static_cast<double>(n));
        states[static_cast<size_t>(cycle[k] - 1)] = InternalState(v);
    }
    return gram_from_states(states);
}

/// Identity plus overlaps c e^{iψ/n} from each cycle vertex to the next, so
/// the product around the cycle has modulus c^n and argument ψ. PSD for
/// c <= 1/2 whatever ψ.
inline GramMatrix cycle_gram(const std::vector<int> &cycle, double c, double psi) {
    const size_t n = cycle.size();
    ComplexMatrix g = ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const Complex w = std::polar(c, psi / static_cast<double>(n));
    for (size_t k = 0; k < n; ++k) {
        const auto a = cycle[k] - 1;
        const auto b = cycle[(k + 1) % n] - 1;
        g(a, b) = w;
        g(b, a) = std::conj(w);
    }
    return GramMatrix(g);
}

/// |G|^2 on the cycle edges.
inline std::vector<double> cycle_pairwise(const GramMatrix &g, const std::vector<int> &cycle) {
    std::vector<double> out;
    for (size_t k = 0; k < cycle.size(); ++k) {
        const auto a = static_cast<size_t>(cycle[k] - 1);
        const auto b = static_cast<size_t>(cycle[(k + 1) % cycle.size()] - 1);
        out.push_back(std::norm(g(a, b)));
    }
    return out;
}

/// Permanent by direct expansion over S_n.
inline Complex naive_permanent(const ComplexMatrix &m) {
    const auto n = static_cast<size_t>(m.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Complex total = 0;
    do {
        Complex term = 1;
        for (size_t i = 0; i < n; ++i) {
            term *= m(static_cast<Eigen::Index>(i), p[i]);
        }
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline ComplexMatrix balanced_beamsplitter() {
    ComplexMatrix b(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    b << s, s, s, -s;
    return b;
}

inline std::vector<int> iota_ports(size_t n, int first = 1, int step = 1) {
    std::vector<int> v(n);
    for (size_t i = 0; i < n; ++i) {
        v[i] = first + step * static_cast<int>(i);
    }
    return v;
}

inline ComplexMatrix random_complex_matrix(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

}  // namespace mcp::testing

#endif
