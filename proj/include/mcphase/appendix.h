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

#ifndef MCPHASE_APPENDIX_H
#define MCPHASE_APPENDIX_H

#include <cstdint>
#include <vector>

#include "mcphase/coincidence.h"
#include "mcphase/permanent.h"

namespace mcp {

/// F_ij = e^{-2πi (i-1)(j-1)/n} / sqrt(n).
ScatteringMatrix fourier_matrix(size_t n);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q. Deterministic per (n, seed).
ScatteringMatrix haar_random_unitary(size_t n, uint64_t seed);

/// |perm(conj(U) ∘ U_σ)| with (U_σ)_ij = U_{i,σ(j)}. Equals the modulus of the
/// n-cycle interference weight for v = eta = (1..n). Throws ValidationError
/// unless σ is a single n-cycle on U's dimension.
double conjecture_statistic(const ScatteringMatrix &u, const Permutation &sigma);

/// n! (Π_i Σ_j |V_ij|^2 / n)^{1/2}, an upper bound on |perm V|.
double carlen_bound(const ComplexMatrix &v);

/// n! / n^n.
double fourier_bound(size_t n);

struct ConjectureViolation {
    size_t sample = 0;
    uint64_t sample_seed = 0;
    double value = 0;
    ComplexMatrix unitary;
};

struct ConjectureSweepResult {
    size_t n = 0;
    double bound = 0;
    double fourier_value = 0;
    double max_random_value = 0;
    size_t samples = 0;
    uint64_t seed = 0;
    std::vector<ConjectureViolation> violations;
};

/// Seed of the k-th sample of a sweep.
uint64_t sweep_sample_seed(uint64_t seed, size_t k);

/// Evaluates the statistic with σ = (1, 2, ..., n) on the Fourier matrix and on
/// `samples` Haar unitaries. Any value above bound + 1e-12 is recorded with its
/// seed and matrix. Samples run on `threads` workers (0 = hardware); the
/// result does not depend on the thread count. Throws ValidationError unless
/// 3 <= n <= 7 and samples >= 1.
ConjectureSweepResult conjecture_sweep(size_t n, size_t samples, uint64_t seed, unsigned threads = 0);

}  // namespace mcp

#endif
