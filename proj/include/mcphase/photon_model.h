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

#ifndef MCPHASE_PHOTON_MODEL_H
#define MCPHASE_PHOTON_MODEL_H

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mcp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Internal (spectral/temporal/polarization) state of one photon, a unit
/// vector in C^d.
class InternalState {
   public:
    /// Throws ValidationError if d == 0 or the norm differs from 1 by more
    /// than `tol`.
    explicit InternalState(ComplexVector coeffs, double tol = 1e-12);

    /// Normalizes `coeffs` first. Throws on the zero vector.
    static InternalState normalized(ComplexVector coeffs);

    size_t dim() const { return static_cast<size_t>(coeffs_.size()); }
    const ComplexVector &coeffs() const { return coeffs_; }

   private:
    ComplexVector coeffs_;
};

enum class GramDefect {
    None,
    NotSquare,
    Empty,
    NotHermitian,
    NonUnitDiagonal,
    OverlapExceedsOne,
    NotPositiveSemidefinite,
};

struct GramValidation {
    bool ok = true;
    GramDefect defect = GramDefect::None;
    std::string diagnostic;
    explicit operator bool() const { return ok; }
};

/// Checks the physical-realizability invariants of a Gram matrix: Hermitian,
/// unit diagonal and |G_ab| <= 1 (all within `tol`), and minimum eigenvalue
/// >= -max(tol, 1e-10). The first violated invariant is named in the
/// diagnostic.
GramValidation validate_gram(const ComplexMatrix &g, double tol = 1e-12);

/// Pairwise overlaps of n photons, G(a, b) = <p_a, p_b> (conjugate-linear in
/// the first argument). Indices are 0-based here; photon labels elsewhere in
/// the library are 1-based.
class GramMatrix {
   public:
    /// Validates with validate_gram(g, tol); throws ValidationError naming the
    /// violated invariant.
    explicit GramMatrix(ComplexMatrix g, double tol = 1e-12);

    static GramMatrix identity(size_t n);
    static GramMatrix all_ones(size_t n);

    size_t size() const { return static_cast<size_t>(g_.rows()); }
    Complex operator()(size_t a, size_t b) const { return g_(a, b); }
    const ComplexMatrix &matrix() const { return g_; }

   private:
    ComplexMatrix g_;
};

/// Inner products of a list of internal states. Throws on an empty list or
/// mixed dimensions.
GramMatrix gram_from_states(std::span<const InternalState> states);

/// A permutation of {1..n}, stored as its image vector.
class Permutation {
   public:
    /// `images[i-1]` is the image of i. Throws ValidationError unless the
    /// images form a bijection on {1..n}.
    explicit Permutation(std::vector<int> images);

    static Permutation identity(size_t n);
    /// Builds a permutation of {1..n} from disjoint cycles; elements not
    /// mentioned are fixed points.
    static Permutation from_cycles(size_t n, const std::vector<std::vector<int>> &cycles);

    size_t size() const { return images_.size(); }
    /// Image of the 1-based label i.
    int operator()(int i) const { return images_[static_cast<size_t>(i - 1)]; }
    const std::vector<int> &images() const { return images_; }

    Permutation inverse() const;
    /// (this ∘ other)(i) = this(other(i)).
    Permutation compose(const Permutation &other) const;
    bool is_identity() const;

    /// Disjoint cycles, each starting at its minimum, sorted by that minimum.
    /// Fixed points appear as 1-cycles.
    std::vector<std::vector<int>> cycles() const;

    bool operator==(const Permutation &other) const = default;
    std::string str() const;

   private:
    std::vector<int> images_;
};

std::vector<std::vector<int>> cycle_decompose(const Permutation &perm);

/// r_σ = Π_i G[σ(i)][i].
Complex overlap_r(const GramMatrix &g, const Permutation &perm);

/// Collective phase of a single cycle (c_1, ..., c_k), k >= 3, as the sum of
/// pairwise overlap arguments around it, arg(G[c_1][c_2] G[c_2][c_3] ...
/// G[c_k][c_1]), reduced to (-π, π]. For the cycle read as a permutation σ
/// (c_i -> c_{i+1}) this is arg(r_{σ^-1}) = -arg(r_σ).
///
/// Throws ValidationError on repeated indices, k < 3, or an overlap with
/// modulus below 1e-300 along the cycle.
double collective_phase_of_cycle(const GramMatrix &g, std::span<const int> cycle);

/// Reduces an angle to (-π, π].
double wrap_angle(double x);

}  // namespace mcp

#endif
