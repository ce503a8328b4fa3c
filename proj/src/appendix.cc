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

#include "mcphase/appendix.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/QR>

#include "mcphase/errors.h"

namespace mcp {

ScatteringMatrix fourier_matrix(size_t n) {
    if (n < 1) {
        throw ValidationError("Fourier matrix needs n >= 1");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            // Reduce i*j mod n first so large n keep full phase accuracy.
            const auto k = static_cast<double>((i * j) % dim);
            f(i, j) = std::polar(norm, -2.0 * std::numbers::pi * k / static_cast<double>(n));
        }
    }
    return validate_unitary(f, 1e-12);
}

ScatteringMatrix haar_random_unitary(size_t n, uint64_t seed) {
    if (n < 1) {
        throw ValidationError("Haar unitary needs n >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0 ? d / mag : Complex(1.0);
    }
    return validate_unitary(q, 1e-10);
}

double conjecture_statistic(const ScatteringMatrix &u, const Permutation &sigma) {
    const size_t n = u.modes();
    if (sigma.size() != n) {
        throw ValidationError("permutation size differs from the matrix dimension");
    }
    const auto cycles = sigma.cycles();
    if (n < 2 || cycles.size() != 1) {
        throw ValidationError("conjecture statistic needs an n-cycle");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix v(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto sj = static_cast<Eigen::Index>(sigma(static_cast<int>(j + 1)) - 1);
            v(i, j) = std::conj(u.matrix()(i, j)) * u.matrix()(i, sj);
        }
    }
    return std::abs(ryser_permanent(v));
}

double carlen_bound(const ComplexMatrix &v) {
    if (v.rows() != v.cols()) {
        throw ValidationError("Carlen bound needs a square matrix");
    }
    const auto n = static_cast<size_t>(v.rows());
    double factorial = 1;
    for (size_t k = 2; k <= n; ++k) {
        factorial *= static_cast<double>(k);
    }
    double prod = 1;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        prod *= v.row(i).squaredNorm() / static_cast<double>(n);
    }
    return factorial * std::sqrt(prod);
}

double fourier_bound(size_t n) {
    double value = 1;
    for (size_t k = 1; k <= n; ++k) {
        value *= static_cast<double>(k) / static_cast<double>(n);
    }
    return value;
}

uint64_t sweep_sample_seed(uint64_t seed, size_t k) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(k),
                      static_cast<uint32_t>(static_cast<uint64_t>(k) >> 32)};
    std::array<uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

ConjectureSweepResult conjecture_sweep(size_t n, size_t samples, uint64_t seed, unsigned threads) {
    if (n < 3 || n > 7) {
        throw ValidationError("conjecture sweep supports 3 <= n <= 7");
    }
    if (samples < 1) {
        throw ValidationError("conjecture sweep needs samples >= 1");
    }
    ConjectureSweepResult res;
    res.n = n;
    res.bound = fourier_bound(n);
    res.samples = samples;
    res.seed = seed;

    std::vector<int> cyc(n);
    for (size_t i = 0; i < n; ++i) {
        cyc[i] = static_cast<int>(i + 1);
    }
    const Permutation sigma = Permutation::from_cycles(n, {cyc});
    res.fourier_value = conjecture_statistic(fourier_matrix(n), sigma);

    std::vector<double> values(samples);
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<size_t>(workers, samples));
    auto work = [&](unsigned t) {
        for (size_t k = t; k < samples; k += workers) {
            values[k] = conjecture_statistic(haar_random_unitary(n, sweep_sample_seed(seed, k)), sigma);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(work, t);
        }
    }

    for (size_t k = 0; k < samples; ++k) {
        res.max_random_value = std::max(res.max_random_value, values[k]);
        if (values[k] > res.bound + 1e-12) {
            const uint64_t s = sweep_sample_seed(seed, k);
            res.violations.push_back({k, s, values[k], haar_random_unitary(n, s).matrix()});
        }
    }
    return res;
}

}  // namespace mcp
