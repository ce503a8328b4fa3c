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

#include "mcphase/photon_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mcphase/errors.h"

namespace mcp {

InternalState::InternalState(ComplexVector coeffs, double tol) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) {
        throw ValidationError("internal state must have dimension >= 1");
    }
    double norm = coeffs_.norm();
    if (std::abs(norm - 1.0) > tol) {
        std::ostringstream ss;
        ss << "internal state is not normalized (norm " << norm << ")";
        throw ValidationError(ss.str());
    }
}

InternalState InternalState::normalized(ComplexVector coeffs) {
    double norm = coeffs.norm();
    if (!(norm > 0)) {
        throw ValidationError("cannot normalize a zero internal state");
    }
    coeffs /= norm;
    return InternalState(std::move(coeffs));
}

GramValidation validate_gram(const ComplexMatrix &g, double tol) {
    auto fail = [](GramDefect d, std::string msg) {
        return GramValidation{false, d, std::move(msg)};
    };
    if (g.rows() != g.cols()) {
        return fail(GramDefect::NotSquare, "not square");
    }
    if (g.rows() == 0) {
        return fail(GramDefect::Empty, "empty matrix");
    }
    const Eigen::Index n = g.rows();
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            if (std::abs(g(a, b) - std::conj(g(b, a))) > tol) {
                std::ostringstream ss;
                ss << "not Hermitian: G[" << a + 1 << "][" << b + 1 << "] != conj(G[" << b + 1 << "]["
                   << a + 1 << "])";
                return fail(GramDefect::NotHermitian, ss.str());
            }
        }
    }
    for (Eigen::Index a = 0; a < n; ++a) {
        if (std::abs(g(a, a) - 1.0) > tol) {
            std::ostringstream ss;
            ss << "non-unit diagonal: G[" << a + 1 << "][" << a + 1 << "] = " << g(a, a);
            return fail(GramDefect::NonUnitDiagonal, ss.str());
        }
    }
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            if (std::abs(g(a, b)) > 1.0 + tol) {
                std::ostringstream ss;
                ss << "not PSD / |overlap|>1: |G[" << a + 1 << "][" << b + 1 << "]| = " << std::abs(g(a, b));
                return fail(GramDefect::OverlapExceedsOne, ss.str());
            }
        }
    }
    // Hermitian part only; the check above bounds the anti-Hermitian residue.
    ComplexMatrix h = (g + g.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -std::max(tol, 1e-10)) {
        std::ostringstream ss;
        ss << "not PSD: minimum eigenvalue " << min_eig;
        return fail(GramDefect::NotPositiveSemidefinite, ss.str());
    }
    return GramValidation{};
}

GramMatrix::GramMatrix(ComplexMatrix g, double tol) : g_(std::move(g)) {
    auto check = validate_gram(g_, tol);
    if (!check) {
        throw ValidationError("invalid Gram matrix: " + check.diagnostic);
    }
}

GramMatrix GramMatrix::identity(size_t n) {
    return GramMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

GramMatrix GramMatrix::all_ones(size_t n) {
    return GramMatrix(ComplexMatrix::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

GramMatrix gram_from_states(std::span<const InternalState> states) {
    if (states.empty()) {
        throw ValidationError("gram_from_states: empty state list");
    }
    const size_t d = states.front().dim();
    for (const auto &s : states) {
        if (s.dim() != d) {
            throw ValidationError("gram_from_states: internal states have different dimensions");
        }
    }
    const auto n = static_cast<Eigen::Index>(states.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            g(a, b) = states[a].coeffs().dot(states[b].coeffs());  // conjugates the first
        }
    }
    return GramMatrix(std::move(g), 1e-10);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<bool> seen(images_.size(), false);
    for (int x : images_) {
        if (x < 1 || x > n || seen[static_cast<size_t>(x - 1)]) {
            throw ValidationError("permutation images are not a bijection on {1..n}");
        }
        seen[static_cast<size_t>(x - 1)] = true;
    }
}

Permutation Permutation::identity(size_t n) {
    std::vector<int> img(n);
    for (size_t i = 0; i < n; ++i) {
        img[i] = static_cast<int>(i + 1);
    }
    return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(size_t n, const std::vector<std::vector<int>> &cycles) {
    std::vector<int> img(n, 0);
    for (size_t i = 0; i < n; ++i) {
        img[i] = static_cast<int>(i + 1);
    }
    std::vector<bool> used(n, false);
    for (const auto &c : cycles) {
        for (size_t k = 0; k < c.size(); ++k) {
            int x = c[k];
            if (x < 1 || static_cast<size_t>(x) > n || used[static_cast<size_t>(x - 1)]) {
                throw ValidationError("cycles are not disjoint subsets of {1..n}");
            }
            used[static_cast<size_t>(x - 1)] = true;
            img[static_cast<size_t>(x - 1)] = c[(k + 1) % c.size()];
        }
    }
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (size_t i = 0; i < images_.size(); ++i) {
        inv[static_cast<size_t>(images_[i] - 1)] = static_cast<int>(i + 1);
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.size() != size()) {
        throw ValidationError("cannot compose permutations of different sizes");
    }
    std::vector<int> out(size());
    for (size_t i = 0; i < size(); ++i) {
        out[i] = images_[static_cast<size_t>(other.images_[i] - 1)];
    }
    return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != static_cast<int>(i + 1)) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    // Scanning starts in increasing order, so each cycle starts at its minimum
    // and the list comes out sorted.
    for (size_t start = 0; start < images_.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        std::vector<int> cycle;
        size_t x = start;
        while (!seen[x]) {
            seen[x] = true;
            cycle.push_back(static_cast<int>(x + 1));
            x = static_cast<size_t>(images_[x] - 1);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

std::string Permutation::str() const {
    std::ostringstream ss;
    for (const auto &c : cycles()) {
        ss << '(';
        for (size_t k = 0; k < c.size(); ++k) {
            ss << (k ? "," : "") << c[k];
        }
        ss << ')';
    }
    return ss.str();
}

std::vector<std::vector<int>> cycle_decompose(const Permutation &perm) {
    return perm.cycles();
}

Complex overlap_r(const GramMatrix &g, const Permutation &perm) {
    if (g.size() != perm.size()) {
        throw ValidationError("overlap_r: Gram matrix and permutation sizes differ");
    }
    Complex r{1.0, 0.0};
    for (size_t i = 0; i < perm.size(); ++i) {
        r *= g(static_cast<size_t>(perm.images()[i] - 1), i);
    }
    return r;
}

double wrap_angle(double x) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double y = std::remainder(x, two_pi);  // in [-π, π]
    if (y <= -std::numbers::pi) {
        y += two_pi;
    }
    return y;
}

double collective_phase_of_cycle(const GramMatrix &g, std::span<const int> cycle) {
    const size_t k = cycle.size();
    if (k < 3) {
        throw ValidationError("collective phase needs a cycle of length >= 3");
    }
    std::vector<bool> seen(g.size(), false);
    for (int c : cycle) {
        if (c < 1 || static_cast<size_t>(c) > g.size() || seen[static_cast<size_t>(c - 1)]) {
            throw ValidationError("cycle indices must be distinct photon labels in {1..n}");
        }
        seen[static_cast<size_t>(c - 1)] = true;
    }
    double phase = 0;
    for (size_t i = 0; i < k; ++i) {
        Complex z = g(static_cast<size_t>(cycle[i] - 1), static_cast<size_t>(cycle[(i + 1) % k] - 1));
        if (std::abs(z) < 1e-300) {
            throw ValidationError("zero overlap along the cycle: collective phase undefined");
        }
        phase += std::arg(z);
    }
    return wrap_angle(phase);
}

}  // namespace mcp
