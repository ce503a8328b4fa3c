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

#include "mcphase/permanent.h"

#include <bit>
#include <cstdint>
#include <vector>

#include "mcphase/errors.h"

namespace mcp {

namespace {

template <typename Scalar, typename Matrix>
Scalar ryser_impl(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw ValidationError("permanent of a non-square matrix");
    }
    const auto n = static_cast<int>(m.rows());
    if (n > 20) {
        throw ValidationError("ryser_permanent supports n <= 20");
    }
    if (n == 0) {
        return Scalar(1);
    }
    // perm(A) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j∈S} A_ij
    std::vector<Scalar> row_sums(static_cast<size_t>(n), Scalar(0));
    Scalar total(0);
    uint32_t gray = 0;
    const uint32_t steps = uint32_t{1} << n;
    for (uint32_t k = 1; k < steps; ++k) {
        const int col = std::countr_zero(k);
        const uint32_t bit = uint32_t{1} << col;
        gray ^= bit;
        const bool added = (gray & bit) != 0;
        for (int i = 0; i < n; ++i) {
            if (added) {
                row_sums[static_cast<size_t>(i)] += m(i, col);
            } else {
                row_sums[static_cast<size_t>(i)] -= m(i, col);
            }
        }
        Scalar prod(1);
        for (const auto &s : row_sums) {
            prod *= s;
        }
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return (n % 2 == 0) ? total : -total;
}

}  // namespace

Complex ryser_permanent(const ComplexMatrix &m) {
    return ryser_impl<Complex>(m);
}

double ryser_permanent(const Eigen::MatrixXd &m) {
    return ryser_impl<double>(m);
}

}  // namespace mcp
